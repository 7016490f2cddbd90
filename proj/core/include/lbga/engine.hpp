#pragma once

#include <lbga/clustering.hpp>
#include <lbga/eval.hpp>
#include <lbga/graph.hpp>
#include <lbga/quality.hpp>
#include <lbga/weight_state.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lbga {

/// How edges still active when the loop stops enter the learned graph.
enum class ResidualPolicy {
    LastCandidate, // kept iff present in the final candidate graph
    Threshold,     // kept iff final p >= 0.5
};

struct LbgaParams {
    double epsilon = 0.2;          // learning rate for sources containing the edge
    double nu = 0.2;               // learning rate for sources lacking the edge
    double delta = 0.05;           // freeze when p > 1 - delta or p < delta
    std::size_t maxRounds = 1000;
    /// Stop once this many consecutive rounds froze nothing; 0 disables.
    std::size_t patience = 50;
    std::uint64_t seed = 1;
    ResidualPolicy residual = ResidualPolicy::LastCandidate;

    /// Throws InputError unless 0 < epsilon < 1, 0 <= nu < 1, 0 < delta < 0.5
    /// and maxRounds >= 1.
    void validate() const;
};

inline constexpr double kWeightFloor = 1e-12;
/// An edge's weights are divided by their maximum once it exceeds this.
inline constexpr double kWeightCeiling = 1e100;

enum class Termination { UnionExhausted, MaxRounds, Stalled };

std::string toString(Termination t);
std::string toString(ResidualPolicy p);
ResidualPolicy parseResidualPolicy(const std::string& name);

struct RunResult {
    Graph learned;
    Clustering learnedClustering; // A(G*)
    WeightState finalState;
    RunTrace trace;
    std::size_t roundsExecuted = 0;
    /// Last round that froze at least one edge (0 if none did).
    std::size_t lastFreezeRound = 0;
    Termination terminatedBy = Termination::UnionExhausted;
};

/// p for union edge `edge`. Throws std::logic_error if `edge` is not a union edge id.
double edgeProbability(const WeightState& state, std::size_t edge, const GraphCollection& coll);

/// Candidate graph for a round: every frozen-in edge, plus each active edge
/// independently with probability p. The coin for edge k in round t is draw k
/// of substream (seed, candidate tag, t). If `included` is given it receives
/// one flag per union edge.
Graph sampleCandidate(const WeightState& state, const GraphCollection& coll, std::uint64_t seed,
                      std::size_t round, std::vector<char>* included = nullptr);

/// Multiplies w_i by (1 + εq) for sources containing the edge and (1 − νq)
/// otherwise, for every active edge, rescales past kWeightCeiling, then
/// clamps at kWeightFloor. `quality`
/// has one entry per union edge; entries of frozen edges are ignored.
/// Throws std::logic_error for an active-edge score outside [-1, 1].
void updateWeights(WeightState& state, const GraphCollection& coll, std::span<const double> quality,
                   const LbgaParams& params);

/// Freezes active edges with p > 1 − δ in and p < δ out. Returns how many froze.
std::size_t freezeSweep(WeightState& state, const GraphCollection& coll, const LbgaParams& params);

/// Called after each round's freeze sweep.
using RoundObserver = std::function<void(std::size_t round, const WeightState& state)>;

/// Runs the boosted aggregation loop until no active edges remain, nothing
/// froze for `patience` rounds, or maxRounds is reached.
RunResult run(const GraphCollection& coll, const ClusteringAlgorithm& algo, const QualityMeasure& measure,
              const LbgaParams& params, const GroundTruth* truth = nullptr,
              const RoundObserver& observer = {});

} // namespace lbga
