#include <lbga/quality.hpp>

#include <cmath>

namespace lbga {

double edgeConsistency(const Clustering& c, Edge e) {
    return c[e.u] == c[e.v] ? 1.0 : 0.0;
}

double neighborhoodOverlap(const Graph& g, Edge e) {
    const std::size_t n = g.numberOfNodes();
    if (n < 2) {
        throw InputError("neighborhood overlap needs at least two vertices");
    }
    const auto shared = static_cast<double>(countCommon(g.neighbors(e.u), g.neighbors(e.v)));
    return shared / (shared + std::log(static_cast<double>(n)));
}

double jaccard(const Graph& g, Edge e) {
    const auto nu = g.neighbors(e.u);
    const auto nv = g.neighbors(e.v);
    const std::size_t shared = countCommon(nu, nv);
    const std::size_t unionSize = nu.size() + nv.size() - shared;
    return unionSize == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(unionSize);
}

double dice(const Graph& g, Edge e) {
    const auto nu = g.neighbors(e.u);
    const auto nv = g.neighbors(e.v);
    const std::size_t total = nu.size() + nv.size();
    return total == 0 ? 0.0 : 2.0 * static_cast<double>(countCommon(nu, nv)) / static_cast<double>(total);
}

Consistent::Consistent(std::unique_ptr<QualityMeasure> base) : base_(std::move(base)) {
    if (!base_) {
        throw std::invalid_argument("consistent() needs a base measure");
    }
}

double Consistent::score(const Graph& g, const Clustering& c, Edge e) const {
    const double q = base_->score(g, c, e);
    if (c[e.u] == c[e.v]) {
        return q;
    }
    return q == 0.0 ? 0.0 : -q;
}

std::unique_ptr<QualityMeasure> consistent(std::unique_ptr<QualityMeasure> base) {
    return std::make_unique<Consistent>(std::move(base));
}

std::unique_ptr<QualityMeasure> makeQualityMeasure(const std::string& name) {
    constexpr std::string_view prefix = "consistent-";
    if (name.starts_with(prefix)) {
        const std::string baseName = name.substr(prefix.size());
        if (baseName.starts_with(prefix)) {
            throw InputError("unknown quality measure '" + name + "'");
        }
        return consistent(makeQualityMeasure(baseName));
    }
    if (name == "ec") {
        return std::make_unique<EdgeConsistency>();
    }
    if (name == "no") {
        return std::make_unique<NeighborhoodOverlap>();
    }
    if (name == "jaccard") {
        return std::make_unique<Jaccard>();
    }
    if (name == "dice") {
        return std::make_unique<Dice>();
    }
    throw InputError("unknown quality measure '" + name + "'");
}

} // namespace lbga
