#include "checks.hpp"

#include <lbga/engine.hpp>
#include <lbga/walktrap.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace lbga {

class EngineGTest : public testing::Test {
protected:
    // edge {0,1} in both layers, {1,2} in layer 0, {2,3} in layer 1
    GraphCollection coll = GraphCollection::collect(
        {Graph::fromEdgeList(4, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}}),
         Graph::fromEdgeList(4, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}})});

    std::size_t id(Edge e) const { return static_cast<std::size_t>(coll.indexOf(e)); }
};

TEST_F(EngineGTest, testEdgeProbabilityFormula) {
    const std::vector<double> ones = {1, 1, 1, 1};
    EXPECT_DOUBLE_EQ(edgeProbability(ones, 0b0011), 0.5);
    const std::vector<double> skew = {0.1, 7, 0.3, 2};
    EXPECT_DOUBLE_EQ(edgeProbability(skew, 0b1111), 1.0);
    const std::vector<double> two = {3, 1};
    EXPECT_DOUBLE_EQ(edgeProbability(two, 0b01), 0.75);

    WeightState state(coll.unionEdges().size(), 2);
    EXPECT_DOUBLE_EQ(edgeProbability(state, id({0, 1}), coll), 1.0);
    EXPECT_DOUBLE_EQ(edgeProbability(state, id({1, 2}), coll), 0.5);
    EXPECT_THROW(edgeProbability(state, 99, coll), std::logic_error);
}

TEST_F(EngineGTest, testUpdateRule) {
    LbgaParams params;
    WeightState state(coll.unionEdges().size(), 2);
    std::vector<double> q(coll.unionEdges().size(), 0.0);
    q[id({1, 2})] = 1.0;
    q[id({2, 3})] = -0.5;
    updateWeights(state, coll, q, params);
    // {1,2} is in layer 0 only
    EXPECT_DOUBLE_EQ(state.weights(id({1, 2}))[0], 1.2);
    EXPECT_DOUBLE_EQ(state.weights(id({1, 2}))[1], 0.8);
    // negative reward: {2,3} is in layer 1 only
    EXPECT_DOUBLE_EQ(state.weights(id({2, 3}))[1], 0.9);
    EXPECT_DOUBLE_EQ(state.weights(id({2, 3}))[0], 1.1);
    EXPECT_DOUBLE_EQ(state.weights(id({0, 1}))[0], 1.0);
}

TEST_F(EngineGTest, testUpdateSkipsFrozenAndRejectsBadScores) {
    LbgaParams params;
    WeightState state(coll.unionEdges().size(), 2);
    state.setStatus(id({1, 2}), EdgeStatus::FrozenOut);
    std::vector<double> q(coll.unionEdges().size(), 1.0);
    updateWeights(state, coll, q, params);
    EXPECT_DOUBLE_EQ(state.weights(id({1, 2}))[0], 1.0);
    q[0] = 1.5;
    EXPECT_THROW(updateWeights(state, coll, q, params), std::logic_error);
    EXPECT_THROW(updateWeights(state, coll, std::vector<double>(1, 0.0), params), std::logic_error);
}

TEST_F(EngineGTest, testWeightFloor) {
    LbgaParams params;
    params.nu = 0.99;
    WeightState state(coll.unionEdges().size(), 2);
    std::vector<double> q(coll.unionEdges().size(), 1.0);
    for (int i = 0; i < 5000; ++i) {
        updateWeights(state, coll, q, params);
    }
    EXPECT_EQ(state.weights(id({1, 2}))[1], kWeightFloor);
    EXPECT_LE(state.weights(id({1, 2}))[0], kWeightCeiling);
    EXPECT_NEAR(edgeProbability(state, id({1, 2}), coll), 1.0, 1e-9);
}

TEST_F(EngineGTest, testFreezeThresholds) {
    LbgaParams params;
    WeightState state(coll.unionEdges().size(), 2);
    // p = 0.97 for {1,2}, p = 0.02 for {2,3}
    state.weights(id({1, 2}))[0] = 0.97;
    state.weights(id({1, 2}))[1] = 0.03;
    state.weights(id({2, 3}))[0] = 0.98;
    state.weights(id({2, 3}))[1] = 0.02;
    EXPECT_EQ(freezeSweep(state, coll, params), 3u);
    EXPECT_EQ(state.status(id({1, 2})), EdgeStatus::FrozenIn);
    EXPECT_EQ(state.status(id({2, 3})), EdgeStatus::FrozenOut);
    EXPECT_EQ(state.status(id({0, 1})), EdgeStatus::FrozenIn);
}

TEST_F(EngineGTest, testAllFrozenInCandidateIsFixed) {
    WeightState state(coll.unionEdges().size(), 2);
    for (std::size_t k = 0; k < state.numberOfEdges(); ++k) {
        state.setStatus(k, EdgeStatus::FrozenIn);
    }
    for (std::size_t round = 1; round <= 5; ++round) {
        EXPECT_EQ(sampleCandidate(state, coll, 1, round).edges(), coll.unionEdges());
    }
}

TEST_F(EngineGTest, testCoinFrequency) {
    WeightState state(coll.unionEdges().size(), 2);
    std::size_t hits = 0;
    std::vector<char> included;
    for (std::size_t round = 1; round <= 1000; ++round) {
        sampleCandidate(state, coll, 11, round, &included);
        hits += included[id({1, 2})];
        EXPECT_EQ(included[id({0, 1})], 1);
    }
    EXPECT_NEAR(static_cast<double>(hits), 500.0, 4 * std::sqrt(250.0));
}

TEST_F(EngineGTest, testParamValidation) {
    LbgaParams p;
    EXPECT_NO_THROW(p.validate());
    p.epsilon = 1.0;
    EXPECT_THROW(p.validate(), InputError);
    p = {};
    p.nu = -0.1;
    EXPECT_THROW(p.validate(), InputError);
    p = {};
    p.delta = 0.5;
    EXPECT_THROW(p.validate(), InputError);
    p = {};
    p.maxRounds = 0;
    EXPECT_THROW(p.validate(), InputError);
    EXPECT_EQ(parseResidualPolicy("threshold"), ResidualPolicy::Threshold);
    EXPECT_THROW(parseResidualPolicy("median"), InputError);
}

TEST_F(EngineGTest, testSingleLayerRun) {
    const auto single = GraphCollection::collect({coll.layer(0)});
    const RunResult r = run(single, Walktrap(), *makeQualityMeasure("consistent-no"), LbgaParams{});
    EXPECT_EQ(r.roundsExecuted, 1u);
    EXPECT_EQ(r.terminatedBy, Termination::UnionExhausted);
    EXPECT_EQ(r.learned.edges(), coll.layer(0).edges());
    EXPECT_DOUBLE_EQ(sparsity(r.learned, single), 1.0);
    ASSERT_EQ(r.trace.rows.size(), 1u);
    EXPECT_EQ(r.trace.rows[0].activeEdges, 0u);
}

TEST_F(EngineGTest, testTraceShape) {
    const auto data = checks::smallCollection(4);
    const Clustering truth = Clustering::single(data.numberOfNodes());
    LbgaParams params;
    params.maxRounds = 30;
    const RunResult r = run(data, Walktrap(), *makeQualityMeasure("consistent-no"), params, &truth);
    ASSERT_EQ(r.trace.rows.size(), r.roundsExecuted);
    std::size_t previous = data.unionEdges().size();
    for (std::size_t t = 0; t < r.trace.rows.size(); ++t) {
        const TraceRow& row = r.trace.rows[t];
        EXPECT_EQ(row.round, t + 1);
        EXPECT_TRUE(row.nmi.has_value());
        EXPECT_LE(row.activeEdges, previous);
        EXPECT_EQ(row.sourceWeights.size(), data.numberOfLayers());
        previous = row.activeEdges;
    }
    EXPECT_LE(r.lastFreezeRound, r.roundsExecuted);
}

TEST_F(EngineGTest, testPatienceStopsStalledRuns) {
    const auto data = checks::smallCollection(5);
    LbgaParams params;
    params.patience = 5;
    params.maxRounds = 500;
    const RunResult r = run(data, Walktrap(), *makeQualityMeasure("ec"), params);
    if (r.terminatedBy == Termination::Stalled) {
        EXPECT_EQ(r.roundsExecuted, r.lastFreezeRound + 5);
    }
    params.patience = 0;
    params.maxRounds = 40;
    const RunResult unbounded = run(data, Walktrap(), *makeQualityMeasure("ec"), params);
    EXPECT_NE(unbounded.terminatedBy, Termination::Stalled);
}

TEST_F(EngineGTest, testResidualPolicies) {
    const auto data = checks::smallCollection(6);
    LbgaParams params;
    params.maxRounds = 3;
    params.patience = 0;
    WeightState beforeLast;
    auto keep = [&](std::size_t round, const WeightState& state) {
        if (round == 2) {
            beforeLast = state;
        }
    };
    const RunResult last = run(data, Walktrap(), *makeQualityMeasure("ec"), params, nullptr, keep);
    const Graph finalCandidate = sampleCandidate(beforeLast, data, params.seed, 3);
    for (std::size_t k = 0; k < data.unionEdges().size(); ++k) {
        const Edge e = data.unionEdges()[k];
        const EdgeStatus s = last.finalState.status(k);
        const bool expected = s == EdgeStatus::FrozenIn || (s == EdgeStatus::Active && finalCandidate.hasEdge(e));
        EXPECT_EQ(last.learned.hasEdge(e), expected);
    }

    params.residual = ResidualPolicy::Threshold;
    const RunResult thr = run(data, Walktrap(), *makeQualityMeasure("ec"), params);
    for (std::size_t k = 0; k < data.unionEdges().size(); ++k) {
        const bool kept = thr.learned.hasEdge(data.unionEdges()[k]);
        switch (thr.finalState.status(k)) {
        case EdgeStatus::FrozenIn:
            EXPECT_TRUE(kept);
            break;
        case EdgeStatus::FrozenOut:
            EXPECT_FALSE(kept);
            break;
        case EdgeStatus::Active:
            EXPECT_EQ(kept, edgeProbability(thr.finalState, k, data) >= 0.5);
            break;
        }
    }
}

TEST_F(EngineGTest, testRejectsMismatchedTruth) {
    const Clustering truth = Clustering::single(3);
    EXPECT_THROW(run(coll, Walktrap(), *makeQualityMeasure("ec"), LbgaParams{}, &truth), InputError);
}

TEST_F(EngineGTest, testBoundaryProperty) {
    const auto c = checks::learnedWithinUnion();
    EXPECT_TRUE(c.pass) << c.detail;
}

TEST_F(EngineGTest, testUnanimityProperty) {
    const auto c = checks::unanimousEdgesKept();
    EXPECT_TRUE(c.pass) << c.detail;
}

TEST_F(EngineGTest, testSingleLayerProperty) {
    const auto c = checks::singleLayerIsIdentity();
    EXPECT_TRUE(c.pass) << c.detail;
}

TEST_F(EngineGTest, testProbabilityRangeProperty) {
    const auto c = checks::probabilitiesInRange();
    EXPECT_TRUE(c.pass) << c.detail;
}

TEST_F(EngineGTest, testMonotoneFreezingProperty) {
    const auto c = checks::freezingIsMonotone();
    EXPECT_TRUE(c.pass) << c.detail;
}

TEST_F(EngineGTest, testRerunProperty) {
    const auto c = checks::rerunsAreIdentical();
    EXPECT_TRUE(c.pass) << c.detail;
}

} // namespace lbga
