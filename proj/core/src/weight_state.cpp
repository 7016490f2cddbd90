#include <lbga/weight_state.hpp>

#include <algorithm>

namespace lbga {

WeightState::WeightState(std::size_t edges, std::size_t layers)
    : layers_(layers), weights_(edges * layers, 1.0), status_(edges, EdgeStatus::Active) {}

std::size_t WeightState::countStatus(EdgeStatus s) const {
    return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), s));
}

double edgeProbability(std::span<const double> weights, LayerMask membership) {
    double present = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        if ((membership >> i) & 1U) {
            present += weights[i];
        }
    }
    return present / total;
}

} // namespace lbga
