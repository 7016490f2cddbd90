#pragma once

#include <lbga/clustering.hpp>

namespace lbga {

/// Pons–Latapy Walktrap community detection.
///
/// Each non-isolated vertex gets a unit self-loop and a t-step random-walk
/// probability vector. Starting from singletons, the adjacent pair of
/// communities with the smallest increase in mean squared walk distance
///
///     Δσ(C1, C2) = |C1||C2| / ((|C1| + |C2|) n) · Σ_k (P_C1k − P_C2k)² / d(k)
///
/// is merged, and the dendrogram level with maximum modularity (on the
/// original graph, without the loops) is returned. Ties go to the lexically
/// smallest community-id pair, and among equal-modularity levels the earliest
/// wins. Isolated vertices never merge and come back as singletons.
class Walktrap final : public ClusteringAlgorithm {
public:
    explicit Walktrap(unsigned walkLength = 4);

    std::string name() const override { return "walktrap"; }
    Clustering run(const Graph& g) const override;

    unsigned walkLength() const { return walkLength_; }

private:
    unsigned walkLength_;
};

Clustering walktrap(const Graph& g, unsigned walkLength = 4);

} // namespace lbga
