#include <lbga/engine.hpp>
#include <lbga/random.hpp>

#include <algorithm>
#include <cmath>

namespace lbga {

void LbgaParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InputError("epsilon must lie in (0, 1)");
    }
    if (!(nu >= 0.0 && nu < 1.0)) {
        throw InputError("nu must lie in [0, 1)");
    }
    if (!(delta > 0.0 && delta < 0.5)) {
        throw InputError("delta must lie in (0, 0.5)");
    }
    if (maxRounds == 0) {
        throw InputError("max_rounds must be positive");
    }
}

std::string toString(Termination t) {
    switch (t) {
    case Termination::UnionExhausted:
        return "U-exhausted";
    case Termination::MaxRounds:
        return "max_rounds";
    case Termination::Stalled:
        return "stalled";
    }
    return "unknown";
}

std::string toString(ResidualPolicy p) {
    return p == ResidualPolicy::LastCandidate ? "last-candidate" : "threshold";
}

ResidualPolicy parseResidualPolicy(const std::string& name) {
    if (name == "last-candidate") {
        return ResidualPolicy::LastCandidate;
    }
    if (name == "threshold") {
        return ResidualPolicy::Threshold;
    }
    throw InputError("unknown residual policy '" + name + "'");
}

double edgeProbability(const WeightState& state, std::size_t edge, const GraphCollection& coll) {
    if (edge >= coll.unionEdges().size() || edge >= state.numberOfEdges()) {
        throw std::logic_error("edge id " + std::to_string(edge) + " is not a union edge");
    }
    return edgeProbability(state.weights(edge), coll.membership(edge));
}

Graph sampleCandidate(const WeightState& state, const GraphCollection& coll, std::uint64_t seed,
                      std::size_t round, std::vector<char>* included) {
    const auto& edges = coll.unionEdges();
    const RandomStream coins = RandomStream(seed).substream({stream_tag::kCandidate, round});
    std::vector<Edge> chosen;
    if (included) {
        included->assign(edges.size(), 0);
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
        bool take = false;
        switch (state.status(k)) {
        case EdgeStatus::FrozenIn:
            take = true;
            break;
        case EdgeStatus::FrozenOut:
            break;
        case EdgeStatus::Active:
            take = coins.bernoulli(k, edgeProbability(state.weights(k), coll.membership(k)));
            break;
        }
        if (take) {
            chosen.push_back(edges[k]);
            if (included) {
                (*included)[k] = 1;
            }
        }
    }
    return Graph::fromSortedEdges(coll.numberOfNodes(), std::move(chosen));
}

void updateWeights(WeightState& state, const GraphCollection& coll, std::span<const double> quality,
                   const LbgaParams& params) {
    if (quality.size() != state.numberOfEdges()) {
        throw std::logic_error("need one quality score per union edge");
    }
    const std::size_t m = state.numberOfLayers();
    for (std::size_t k = 0; k < state.numberOfEdges(); ++k) {
        if (state.status(k) != EdgeStatus::Active) {
            continue;
        }
        const double q = quality[k];
        if (!(q >= -1.0 && q <= 1.0)) {
            throw std::logic_error("quality score outside [-1, 1]");
        }
        const double present = 1.0 + params.epsilon * q;
        const double absent = 1.0 - params.nu * q;
        const LayerMask mask = coll.membership(k);
        auto w = state.weights(k);
        double largest = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            w[i] *= ((mask >> i) & 1U) ? present : absent;
            largest = std::max(largest, w[i]);
        }
        // p only sees ratios, so rescaling keeps long runs finite
        const double scale = largest > kWeightCeiling ? 1.0 / largest : 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            w[i] = std::max(w[i] * scale, kWeightFloor);
        }
    }
}

std::size_t freezeSweep(WeightState& state, const GraphCollection& coll, const LbgaParams& params) {
    std::size_t frozen = 0;
    for (std::size_t k = 0; k < state.numberOfEdges(); ++k) {
        if (state.status(k) != EdgeStatus::Active) {
            continue;
        }
        const double p = edgeProbability(state.weights(k), coll.membership(k));
        if (p > 1.0 - params.delta) {
            state.setStatus(k, EdgeStatus::FrozenIn);
            ++frozen;
        } else if (p < params.delta) {
            state.setStatus(k, EdgeStatus::FrozenOut);
            ++frozen;
        }
    }
    return frozen;
}

RunResult run(const GraphCollection& coll, const ClusteringAlgorithm& algo, const QualityMeasure& measure,
              const LbgaParams& params, const GroundTruth* truth, const RoundObserver& observer) {
    params.validate();
    if (truth && truth->size() != coll.numberOfNodes()) {
        throw InputError("ground truth and layers disagree on vertex count");
    }
    const auto& edges = coll.unionEdges();
    RunResult result;
    WeightState state(edges.size(), coll.numberOfLayers());
    std::vector<double> quality(edges.size(), 0.0);
    std::vector<char> inCandidate(edges.size(), 0);
    std::size_t active = edges.size();
    std::size_t quietRounds = 0;
    result.terminatedBy = Termination::MaxRounds;

    if (active == 0) {
        result.terminatedBy = Termination::UnionExhausted;
    }
    for (std::size_t round = 1; round <= params.maxRounds && active > 0; ++round) {
        const Graph candidate = sampleCandidate(state, coll, params.seed, round, &inCandidate);
        const Clustering clusters = cluster(algo, candidate);

        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (state.status(k) == EdgeStatus::Active) {
                quality[k] = measure.score(candidate, clusters, edges[k]);
            }
        }
        updateWeights(state, coll, quality, params);
        const std::size_t frozen = freezeSweep(state, coll, params);
        active -= frozen;
        if (observer) {
            observer(round, state);
        }

        TraceRow row;
        row.round = round;
        if (truth) {
            row.nmi = nmi(clusters, *truth);
        }
        if (candidate.numberOfEdges() > 0) {
            row.modularity = modularity(candidate, clusters);
        }
        row.numEdges = candidate.numberOfEdges();
        row.activeEdges = active;
        row.sourceWeights = sourceWeightProfile(state);
        result.trace.rows.push_back(std::move(row));
        result.roundsExecuted = round;

        if (frozen > 0) {
            result.lastFreezeRound = round;
            quietRounds = 0;
        } else {
            ++quietRounds;
        }
        if (active == 0) {
            result.terminatedBy = Termination::UnionExhausted;
        } else if (params.patience > 0 && quietRounds >= params.patience) {
            result.terminatedBy = Termination::Stalled;
            break;
        }
    }

    std::vector<Edge> learned;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        bool keep = false;
        switch (state.status(k)) {
        case EdgeStatus::FrozenIn:
            keep = true;
            break;
        case EdgeStatus::FrozenOut:
            break;
        case EdgeStatus::Active:
            keep = params.residual == ResidualPolicy::LastCandidate
                       ? inCandidate[k] != 0
                       : edgeProbability(state.weights(k), coll.membership(k)) >= 0.5;
            break;
        }
        if (keep) {
            learned.push_back(edges[k]);
        }
    }
    result.learned = Graph::fromSortedEdges(coll.numberOfNodes(), std::move(learned));
    result.learnedClustering = cluster(algo, result.learned);
    result.finalState = std::move(state);
    return result;
}

} // namespace lbga
