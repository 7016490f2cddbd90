#pragma once

#include <lbga/graph.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace lbga {

enum class EdgeStatus : std::uint8_t { Active, FrozenIn, FrozenOut };

/// Per-union-edge weight vectors over the m sources, plus freeze status.
/// Edge ids are indices into GraphCollection::unionEdges().
class WeightState {
public:
    WeightState() = default;
    /// All weights 1, all edges active.
    WeightState(std::size_t edges, std::size_t layers);

    std::size_t numberOfEdges() const { return status_.size(); }
    std::size_t numberOfLayers() const { return layers_; }

    std::span<double> weights(std::size_t edge) { return {weights_.data() + edge * layers_, layers_}; }
    std::span<const double> weights(std::size_t edge) const {
        return {weights_.data() + edge * layers_, layers_};
    }

    EdgeStatus status(std::size_t edge) const { return status_[edge]; }
    void setStatus(std::size_t edge, EdgeStatus s) { status_[edge] = s; }

    std::size_t countStatus(EdgeStatus s) const;

    friend bool operator==(const WeightState&, const WeightState&) = default;

private:
    std::size_t layers_ = 0;
    std::vector<double> weights_;
    std::vector<EdgeStatus> status_;
};

/// Share of an edge's weight held by the sources that contain it.
double edgeProbability(std::span<const double> weights, LayerMask membership);

} // namespace lbga
