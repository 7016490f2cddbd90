#include "checks.hpp"
#include "oracles.hpp"

#include <lbga/eval.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace lbga {

namespace {

Graph disjointCliques(std::size_t k, std::size_t size) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t c = 0; c < k; ++c) {
        const auto base = static_cast<Vertex>(c * size);
        for (Vertex u = base; u < base + size; ++u) {
            for (Vertex v = u + 1; v < base + size; ++v) {
                pairs.emplace_back(u, v);
            }
        }
    }
    return Graph::fromEdgeList(k * size, pairs);
}

Clustering blocks(std::size_t k, std::size_t size) {
    std::vector<ClusterId> a;
    for (std::size_t c = 0; c < k; ++c) {
        a.insert(a.end(), size, static_cast<ClusterId>(c));
    }
    return Clustering(a);
}

} // namespace

class EvalGTest : public testing::Test {};

TEST_F(EvalGTest, testNmiExamples) {
    const Clustering c({0, 0, 1, 1});
    EXPECT_EQ(nmi(c, c), 1.0);
    EXPECT_EQ(nmi(Clustering::single(4), Clustering::singletons(4)), 0.0);
    EXPECT_EQ(nmi(Clustering::single(4), Clustering::single(4)), 1.0);
    // confusion matrix [[2,0],[1,1]]
    const Clustering d({0, 0, 0, 1});
    const double h1 = std::log(2.0);
    const double h2 = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    const double h12 = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25));
    EXPECT_NEAR(nmi(c, d), 2 * (h1 + h2 - h12) / (h1 + h2), 1e-15);
    EXPECT_NEAR(nmi(c, d), 0.3437, 1e-4);
    EXPECT_THROW(nmi(c, Clustering::single(3)), InputError);
}

TEST_F(EvalGTest, testNmiSymmetricAndRelabelInvariant) {
    const Clustering a({0, 0, 1, 2, 2, 1, 0});
    const Clustering b({3, 1, 1, 3, 2, 2, 3});
    const Clustering relabeled({5, 5, 9, 1, 1, 9, 5});
    EXPECT_DOUBLE_EQ(nmi(a, b), nmi(b, a));
    EXPECT_DOUBLE_EQ(nmi(a, b), nmi(relabeled, b));
}

TEST_F(EvalGTest, testNmiOracle) {
    const auto check = checks::nmiMatchesEntropyFormula();
    EXPECT_TRUE(check.pass) << check.detail;
}

TEST_F(EvalGTest, testModularityOracle) {
    const auto check = checks::modularityMatchesBruteForce();
    EXPECT_TRUE(check.pass) << check.detail;
}

TEST_F(EvalGTest, testModularityOfCliques) {
    for (std::size_t k = 1; k <= 5; ++k) {
        EXPECT_NEAR(modularity(disjointCliques(k, 6), blocks(k, 6)), 1.0 - 1.0 / static_cast<double>(k), 1e-15);
    }
    EXPECT_NEAR(modularity(disjointCliques(4, 125 / 5), blocks(4, 25)), 0.750, 1e-15);
}

TEST_F(EvalGTest, testModularityEdgeCases) {
    const Graph k4 = disjointCliques(1, 4);
    EXPECT_NEAR(modularity(k4, Clustering::single(4)), 0.0, 1e-15);
    EXPECT_NEAR(modularity(k4, Clustering({0, 0, 1, 1})), -1.0 / 6.0, 1e-15);
    EXPECT_THROW(modularity(Graph(3), Clustering::single(3)), InputError);
    EXPECT_THROW(modularity(k4, Clustering::single(3)), InputError);
}

TEST_F(EvalGTest, testModularityRelabelInvariantAndBounded) {
    const Graph g = checks::smallCollection(2).unionGraph();
    std::vector<ClusterId> a(g.numberOfNodes());
    for (Vertex v = 0; v < a.size(); ++v) {
        a[v] = v % 7;
    }
    std::vector<ClusterId> b(a);
    for (auto& x : b) {
        x = 6 - x;
    }
    const double q = modularity(g, Clustering(a));
    EXPECT_DOUBLE_EQ(q, modularity(g, Clustering(b)));
    EXPECT_GE(q, -0.5);
    EXPECT_LT(q, 1.0);
}

TEST_F(EvalGTest, testSourceWeightProfile) {
    WeightState fresh(10, 4);
    for (double w : sourceWeightProfile(fresh)) {
        EXPECT_DOUBLE_EQ(w, 0.25);
    }
    WeightState skewed(3, 2);
    for (std::size_t e = 0; e < 3; ++e) {
        skewed.weights(e)[0] = 3.0;
    }
    const auto p = sourceWeightProfile(skewed);
    EXPECT_DOUBLE_EQ(p[0], 0.75);
    EXPECT_DOUBLE_EQ(p[1], 0.25);
    EXPECT_EQ(sourceWeightProfile(WeightState(0, 2)), (std::vector<double>{0.5, 0.5}));
}

TEST_F(EvalGTest, testProfileSumsToOne) {
    WeightState s(50, 5);
    for (std::size_t e = 0; e < 50; ++e) {
        for (std::size_t i = 0; i < 5; ++i) {
            s.weights(e)[i] = 1.0 + static_cast<double>((e * 7 + i * 3) % 11);
        }
    }
    double total = 0.0;
    for (double w : sourceWeightProfile(s)) {
        EXPECT_GE(w, 0.0);
        EXPECT_LE(w, 1.0);
        total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST_F(EvalGTest, testUnionBaselineSingleLayer) {
    const auto coll = GraphCollection::collect({disjointCliques(3, 5)});
    EXPECT_NEAR(unionBaseline(coll, blocks(3, 5)), 1.0 - 1.0 / 3.0, 1e-15);
}

TEST_F(EvalGTest, testTraceCsv) {
    RunTrace trace;
    trace.rows.push_back({1, 0.5, std::nullopt, 10, 8, {0.25, 0.75}});
    trace.rows.push_back({2, std::nullopt, 0.125, 11, 7, {0.5, 0.5}});
    std::ostringstream out;
    writeTraceCsv(out, trace, 2);
    EXPECT_EQ(out.str(),
              "round,nmi,modularity,num_edges,active_edges,w_src_0,w_src_1\n"
              "1,0.5,,10,8,0.25,0.75\n"
              "2,,0.125,11,7,0.5,0.5\n");
}

TEST_F(EvalGTest, testSummaryCsv) {
    std::ostringstream out;
    writeSummaryHeader(out);
    SummaryRow row;
    row.dataset = "custom";
    row.measure = "ec";
    row.modularity = 0.5;
    row.sparsity = 0.25;
    row.sourceWeights = {0.5, 0.5};
    row.seed = 3;
    row.rounds = 9;
    row.terminatedBy = "stalled";
    writeSummaryRow(out, row);
    EXPECT_EQ(out.str(),
              "dataset,union_modularity,measure,modularity,nmi,sparsity,source_weights,seed,rounds,terminated_by\n"
              "custom,,ec,0.5,,0.25,0.5;0.5,3,9,stalled\n");
}

} // namespace lbga
