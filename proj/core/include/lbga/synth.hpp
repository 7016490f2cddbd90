#pragma once

#include <lbga/clustering.hpp>
#include <lbga/graph.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lbga {

using BlockMatrix = std::vector<std::vector<double>>;

/// Stochastic block model: block sizes n_1..n_k and a symmetric k×k matrix of
/// edge probabilities. Vertices are numbered block by block.
struct SbmSpec {
    std::vector<std::size_t> blockSizes;
    BlockMatrix probabilities;

    std::size_t numberOfNodes() const;
    /// Throws InputError on empty/zero blocks, shape mismatch, asymmetry or
    /// probabilities outside [0, 1].
    void validate() const;
};

/// p on the diagonal, r elsewhere.
BlockMatrix uniformBlockMatrix(std::size_t k, double within, double across);

GroundTruth blockAssignment(std::span<const std::size_t> blockSizes);

/// One SBM draw. Pairs (u, v), u < v, are visited lexicographically and pair
/// u·n + v uses draw u·n + v of the stream keyed by `seed`.
std::pair<Graph, GroundTruth> generateSbm(const SbmSpec& spec, std::uint64_t seed);

struct LayerProbabilities {
    double within;
    double across;
};

struct SyntheticData {
    GraphCollection layers;
    GroundTruth truth;
    /// within/across probability ratio of each layer (∞ when across = 0)
    std::vector<double> signalToNoise;
};

/// Draws one layer per block matrix, all on the same blocks. Layer i uses the
/// substream (seed, layer tag, i).
SyntheticData sbmLayers(std::span<const std::size_t> blockSizes, std::span<const BlockMatrix> matrices,
                        std::uint64_t seed);

/// Global SBM: layer i has within_i on the diagonal and across_i elsewhere.
SyntheticData gsbmLayers(std::span<const LayerProbabilities> layers, std::span<const std::size_t> blockSizes,
                         std::uint64_t seed);

/// Local SBM: m = k layers, layer i has `within` only at (i, i) and `across`
/// everywhere else. Throws InputError when m != k.
SyntheticData lsbmLayers(std::size_t m, double within, double across, std::span<const std::size_t> blockSizes,
                         std::uint64_t seed);

/// m independent G(n, p) draws.
GraphCollection erLayers(std::size_t m, std::size_t n, double p, std::uint64_t seed);

/// A named dataset recipe.
struct DatasetPreset {
    std::string name;
    std::vector<std::size_t> blockSizes;
    std::vector<BlockMatrix> matrices;
    /// false for pure noise datasets, whose ground truth is a single block
    bool plantedCommunities = true;

    SyntheticData generate(std::uint64_t seed) const;
};

/// GSBM-1..5, LSBM-1..3, ER-only.
const std::vector<DatasetPreset>& datasetPresets();
std::optional<DatasetPreset> findPreset(const std::string& name);

} // namespace lbga
