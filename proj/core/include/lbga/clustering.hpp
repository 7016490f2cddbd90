#pragma once

#include <lbga/graph.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace lbga {

using ClusterId = std::uint32_t;

/// Partition of 0..n-1 into disjoint nonempty clusters. Ids are canonical:
/// dense and numbered in order of first appearance, so two Clusterings are
/// equal exactly when they describe the same partition.
class Clustering {
public:
    Clustering() = default;
    explicit Clustering(std::vector<ClusterId> assignment);

    static Clustering singletons(std::size_t n);
    static Clustering single(std::size_t n);

    std::size_t size() const { return assignment_.size(); }
    std::size_t numberOfClusters() const { return clusterCount_; }
    ClusterId operator[](Vertex v) const { return assignment_[v]; }
    const std::vector<ClusterId>& assignment() const { return assignment_; }
    std::vector<std::size_t> clusterSizes() const;

    friend bool operator==(const Clustering&, const Clustering&) = default;

private:
    std::vector<ClusterId> assignment_;
    std::size_t clusterCount_ = 0;
};

/// Planted block membership of a synthetic dataset.
using GroundTruth = Clustering;

/// The event run on every candidate graph. Implementations must be
/// deterministic functions of the graph.
class ClusteringAlgorithm {
public:
    virtual ~ClusteringAlgorithm() = default;
    virtual std::string name() const = 0;
    virtual Clustering run(const Graph& g) const = 0;
};

/// Every vertex alone.
class SingletonClustering final : public ClusteringAlgorithm {
public:
    std::string name() const override { return "singletons"; }
    Clustering run(const Graph& g) const override;
};

Clustering cluster(const ClusteringAlgorithm& algo, const Graph& g);

/// `walktrap` or `singletons`; throws InputError otherwise.
std::unique_ptr<ClusteringAlgorithm> makeClusteringAlgorithm(const std::string& name);

/// One `<label> <cluster>` line per vertex.
void writeClustering(std::ostream& out, const Clustering& c, const LabelTable& labels);

/// Reads `<label> <cluster>` lines. Labels not yet in the table are interned;
/// every vertex of the final table must be assigned.
Clustering readClustering(std::istream& in, LabelTable& labels);

} // namespace lbga
