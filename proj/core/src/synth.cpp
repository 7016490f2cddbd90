#include <lbga/random.hpp>
#include <lbga/synth.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace lbga {

std::size_t SbmSpec::numberOfNodes() const {
    return std::accumulate(blockSizes.begin(), blockSizes.end(), std::size_t{0});
}

void SbmSpec::validate() const {
    const std::size_t k = blockSizes.size();
    if (k == 0) {
        throw InputError("block model needs at least one block");
    }
    for (std::size_t s : blockSizes) {
        if (s == 0) {
            throw InputError("block sizes must be positive");
        }
    }
    if (probabilities.size() != k) {
        throw InputError("block matrix must be k x k");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (probabilities[i].size() != k) {
            throw InputError("block matrix must be k x k");
        }
        for (std::size_t j = 0; j < k; ++j) {
            const double p = probabilities[i][j];
            if (!(p >= 0.0 && p <= 1.0)) {
                throw InputError("block probabilities must lie in [0, 1]");
            }
            if (p != probabilities[j][i]) {
                throw InputError("block matrix must be symmetric");
            }
        }
    }
}

BlockMatrix uniformBlockMatrix(std::size_t k, double within, double across) {
    BlockMatrix b(k, std::vector<double>(k, across));
    for (std::size_t i = 0; i < k; ++i) {
        b[i][i] = within;
    }
    return b;
}

GroundTruth blockAssignment(std::span<const std::size_t> blockSizes) {
    std::vector<ClusterId> a;
    for (std::size_t b = 0; b < blockSizes.size(); ++b) {
        a.insert(a.end(), blockSizes[b], static_cast<ClusterId>(b));
    }
    return Clustering(std::move(a));
}

std::pair<Graph, GroundTruth> generateSbm(const SbmSpec& spec, std::uint64_t seed) {
    spec.validate();
    const std::size_t n = spec.numberOfNodes();
    GroundTruth truth = blockAssignment(spec.blockSizes);
    std::vector<std::size_t> block(n);
    {
        std::size_t v = 0;
        for (std::size_t b = 0; b < spec.blockSizes.size(); ++b) {
            for (std::size_t i = 0; i < spec.blockSizes[b]; ++i) {
                block[v++] = b;
            }
        }
    }
    const RandomStream rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        const auto& row = spec.probabilities[block[u]];
        for (Vertex v = u + 1; v < n; ++v) {
            if (rng.bernoulli(static_cast<std::uint64_t>(u) * n + v, row[block[v]])) {
                edges.emplace_back(u, v);
            }
        }
    }
    return {Graph::fromSortedEdges(n, std::move(edges)), std::move(truth)};
}

SyntheticData sbmLayers(std::span<const std::size_t> blockSizes, std::span<const BlockMatrix> matrices,
                        std::uint64_t seed) {
    if (matrices.empty()) {
        throw InputError("need at least one layer");
    }
    const RandomStream master(seed);
    std::vector<Graph> layers;
    std::vector<double> snr;
    GroundTruth truth;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        SbmSpec spec{std::vector<std::size_t>(blockSizes.begin(), blockSizes.end()), matrices[i]};
        auto [g, t] = generateSbm(spec, master.substream({stream_tag::kLayer, i}).key());
        layers.push_back(std::move(g));
        truth = std::move(t);

        // largest diagonal entry over largest off-diagonal entry
        double within = 0.0;
        double across = 0.0;
        for (std::size_t a = 0; a < spec.probabilities.size(); ++a) {
            for (std::size_t b = 0; b < spec.probabilities.size(); ++b) {
                double& slot = a == b ? within : across;
                slot = std::max(slot, spec.probabilities[a][b]);
            }
        }
        if (spec.probabilities.size() == 1) {
            across = within;
        }
        snr.push_back(across > 0 ? within / across : std::numeric_limits<double>::infinity());
    }
    return {GraphCollection::collect(std::move(layers)), std::move(truth), std::move(snr)};
}

SyntheticData gsbmLayers(std::span<const LayerProbabilities> layers, std::span<const std::size_t> blockSizes,
                         std::uint64_t seed) {
    std::vector<BlockMatrix> matrices;
    for (const auto& l : layers) {
        matrices.push_back(uniformBlockMatrix(blockSizes.size(), l.within, l.across));
    }
    return sbmLayers(blockSizes, matrices, seed);
}

namespace {

std::vector<BlockMatrix> localMatrices(std::size_t k, double within, double across) {
    std::vector<BlockMatrix> matrices;
    for (std::size_t i = 0; i < k; ++i) {
        BlockMatrix b(k, std::vector<double>(k, across));
        b[i][i] = within;
        matrices.push_back(std::move(b));
    }
    return matrices;
}

} // namespace

SyntheticData lsbmLayers(std::size_t m, double within, double across, std::span<const std::size_t> blockSizes,
                         std::uint64_t seed) {
    if (m != blockSizes.size()) {
        throw InputError("local SBM needs one layer per block");
    }
    const auto matrices = localMatrices(m, within, across);
    return sbmLayers(blockSizes, matrices, seed);
}

GraphCollection erLayers(std::size_t m, std::size_t n, double p, std::uint64_t seed) {
    const std::vector<std::size_t> sizes{n};
    const std::vector<BlockMatrix> matrices(m, BlockMatrix{{p}});
    return sbmLayers(sizes, matrices, seed).layers;
}

SyntheticData DatasetPreset::generate(std::uint64_t seed) const {
    SyntheticData data = sbmLayers(blockSizes, matrices, seed);
    if (!plantedCommunities) {
        data.truth = Clustering::single(data.truth.size());
    }
    return data;
}

namespace {

DatasetPreset gsbm(std::string name, std::vector<LayerProbabilities> layers) {
    const std::vector<std::size_t> blocks(4, 125);
    std::vector<BlockMatrix> matrices;
    for (const auto& l : layers) {
        matrices.push_back(uniformBlockMatrix(blocks.size(), l.within, l.across));
    }
    return {std::move(name), blocks, std::move(matrices), true};
}

DatasetPreset lsbm(std::string name, double within, double across, bool noiseLayer) {
    const std::vector<std::size_t> blocks(4, 125);
    auto matrices = localMatrices(blocks.size(), within, across);
    if (noiseLayer) {
        matrices.push_back(uniformBlockMatrix(blocks.size(), 0.01, 0.01));
    }
    return {std::move(name), blocks, std::move(matrices), true};
}

std::vector<DatasetPreset> buildPresets() {
    std::vector<DatasetPreset> presets;
    presets.push_back(gsbm("GSBM-1", std::vector<LayerProbabilities>(4, {0.2, 0.05})));
    presets.push_back(gsbm("GSBM-2", std::vector<LayerProbabilities>(4, {0.3, 0.05})));
    {
        std::vector<LayerProbabilities> layers(4, {0.3, 0.05});
        layers.push_back({0.01, 0.01});
        presets.push_back(gsbm("GSBM-3", std::move(layers)));
    }
    presets.push_back(gsbm("GSBM-4", {{0.1625, 0.05}, {0.125, 0.05}, {0.125, 0.05}, {0.0875, 0.05}}));
    presets.push_back(gsbm("GSBM-5", {{0.15, 0.05}, {0.1, 0.05}, {0.05, 0.05}, {0.05, 0.05}}));
    presets.push_back(lsbm("LSBM-1", 0.2, 0.05, false));
    presets.push_back(lsbm("LSBM-2", 0.3, 0.05, false));
    presets.push_back(lsbm("LSBM-3", 0.3, 0.05, true));
    // same blocks as the others so every preset enumerates pairs identically
    DatasetPreset er = gsbm("ER-only", std::vector<LayerProbabilities>(4, {0.01, 0.01}));
    er.plantedCommunities = false;
    presets.push_back(std::move(er));
    return presets;
}

} // namespace

const std::vector<DatasetPreset>& datasetPresets() {
    static const std::vector<DatasetPreset> presets = buildPresets();
    return presets;
}

std::optional<DatasetPreset> findPreset(const std::string& name) {
    for (const auto& p : datasetPresets()) {
        if (p.name == name) {
            return p;
        }
    }
    return std::nullopt;
}

} // namespace lbga
