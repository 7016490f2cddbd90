#pragma once

#include <lbga/clustering.hpp>
#include <lbga/graph.hpp>

#include <memory>
#include <string>
#include <vector>

namespace lbga {

/// Local edge quality q(G, c, e). Base measures score in [0, 1]; the
/// consistent wrapper extends the range to [-1, 1].
class QualityMeasure {
public:
    virtual ~QualityMeasure() = default;
    virtual std::string name() const = 0;
    virtual double score(const Graph& g, const Clustering& c, Edge e) const = 0;
};

/// 1 when both endpoints share a cluster, else 0.
double edgeConsistency(const Clustering& c, Edge e);

/// s / (s + ln n) with s = |N(u) ∩ N(v)|. Throws InputError for n < 2.
double neighborhoodOverlap(const Graph& g, Edge e);

/// |N(u) ∩ N(v)| / |N(u) ∪ N(v)|, 0 for two empty neighborhoods.
double jaccard(const Graph& g, Edge e);

/// 2|N(u) ∩ N(v)| / (|N(u)| + |N(v)|), 0 when both degrees are 0.
double dice(const Graph& g, Edge e);

class EdgeConsistency final : public QualityMeasure {
public:
    std::string name() const override { return "ec"; }
    double score(const Graph&, const Clustering& c, Edge e) const override {
        return edgeConsistency(c, e);
    }
};

class NeighborhoodOverlap final : public QualityMeasure {
public:
    std::string name() const override { return "no"; }
    double score(const Graph& g, const Clustering&, Edge e) const override {
        return neighborhoodOverlap(g, e);
    }
};

class Jaccard final : public QualityMeasure {
public:
    std::string name() const override { return "jaccard"; }
    double score(const Graph& g, const Clustering&, Edge e) const override { return jaccard(g, e); }
};

class Dice final : public QualityMeasure {
public:
    std::string name() const override { return "dice"; }
    double score(const Graph& g, const Clustering&, Edge e) const override { return dice(g, e); }
};

/// +base within a cluster, -base across clusters.
class Consistent final : public QualityMeasure {
public:
    explicit Consistent(std::unique_ptr<QualityMeasure> base);
    std::string name() const override { return "consistent-" + base_->name(); }
    double score(const Graph& g, const Clustering& c, Edge e) const override;

private:
    std::unique_ptr<QualityMeasure> base_;
};

std::unique_ptr<QualityMeasure> consistent(std::unique_ptr<QualityMeasure> base);

/// Names accepted: ec, no, jaccard, dice, consistent-<any of those>.
std::unique_ptr<QualityMeasure> makeQualityMeasure(const std::string& name);

} // namespace lbga
