#include <lbga_cli/commands.hpp>
#include <lbga_cli/criteria.hpp>
#include <lbga_cli/experiment.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lbga::cli {

namespace fs = std::filesystem;

class CliGTest : public testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("lbga_cli_gtest_" + std::string(testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    int cli(std::vector<std::string> args) {
        out.str("");
        err.str("");
        return runCli(args, out, err);
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    static std::size_t countLines(const fs::path& p, bool skipComments) {
        std::ifstream in(p);
        std::string line;
        std::size_t n = 0;
        while (std::getline(in, line)) {
            n += !(skipComments && !line.empty() && line[0] == '#');
        }
        return n;
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    fs::path dir;
    std::ostringstream out;
    std::ostringstream err;
};

TEST_F(CliGTest, testGenerateGsbm2) {
    ASSERT_EQ(cli({"generate", "GSBM-2", "--seed", "7", "--out", path("d")}), kExitOk) << err.str();
    // 4 within-block binomials at 0.3 plus cross pairs at 0.05
    const double within = 4 * 125.0 * 124.0 / 2.0;
    const double across = 500.0 * 499.0 / 2.0 - within;
    const double mean = 0.3 * within + 0.05 * across;
    const double sigma = std::sqrt(0.3 * 0.7 * within + 0.05 * 0.95 * across);
    for (int i = 1; i <= 4; ++i) {
        const fs::path layer = dir / "d" / ("layer_" + std::to_string(i) + ".txt");
        ASSERT_TRUE(fs::exists(layer));
        EXPECT_NEAR(static_cast<double>(countLines(layer, true)), mean, 4 * sigma);
    }
    EXPECT_FALSE(fs::exists(dir / "d" / "layer_5.txt"));
    EXPECT_EQ(countLines(dir / "d" / "truth.txt", false), 500u);
}

TEST_F(CliGTest, testGenerateErOnlyTruthIsOneBlock) {
    ASSERT_EQ(cli({"generate", "ER-only", "--seed", "1", "--out", path("er")}), kExitOk);
    std::ifstream truth(dir / "er" / "truth.txt");
    std::string label;
    int id = 0;
    std::size_t rows = 0;
    while (truth >> label >> id) {
        EXPECT_EQ(id, 0);
        ++rows;
    }
    EXPECT_EQ(rows, 500u);
    EXPECT_TRUE(fs::exists(dir / "er" / "layer_4.txt"));
}

TEST_F(CliGTest, testUsageErrors) {
    EXPECT_EQ(cli({"generate", "GSBM-9"}), kExitUsage);
    EXPECT_NE(err.str().find("GSBM-9"), std::string::npos);
    EXPECT_EQ(cli({}), kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}), kExitUsage);
    EXPECT_EQ(cli({"run", "--dataset", "GSBM-2", "--epsilon", "2"}), kExitUsage);
    EXPECT_EQ(cli({"run", "--dataset", "GSBM-2", "--measure", "overlap"}), kExitUsage);
    EXPECT_EQ(cli({"run", "--dataset", "GSBM-2", "--clustering", "louvain"}), kExitUsage);
    EXPECT_EQ(cli({"run"}), kExitUsage);
    EXPECT_EQ(cli({"run", "--dataset", "GSBM-2", "--nu", "abc"}), kExitUsage);
    EXPECT_EQ(cli({"reproduce", "table3"}), kExitUsage);
    EXPECT_EQ(cli({"run", "--config", path("missing.json")}), kExitUsage);
    EXPECT_EQ(cli({"--help"}), kExitOk);
}

TEST_F(CliGTest, testRuntimeErrors) {
    EXPECT_EQ(cli({"run", "--layers", path("nope.txt"), "--out", path("o")}), kExitRuntime);
    EXPECT_FALSE(err.str().empty());
}

TEST_F(CliGTest, testThreadEnvValidated) {
    ::setenv("LBGA_THREADS", "zero", 1);
    EXPECT_EQ(cli({"run", "--dataset", "GSBM-2"}), kExitUsage);
    ::setenv("LBGA_THREADS", "3", 1);
    EXPECT_EQ(threadLimit(), 3u);
    ::unsetenv("LBGA_THREADS");
    EXPECT_GE(threadLimit(), 1u);
}

TEST_F(CliGTest, testFilesReproducePresetBitForBit) {
    ASSERT_EQ(cli({"generate", "GSBM-2", "--seed", "7", "--out", path("d")}), kExitOk);
    ASSERT_EQ(cli({"run", "--dataset", "GSBM-2", "--seed", "7", "--max-rounds", "4", "--out", path("a")}), kExitOk)
        << err.str();
    std::vector<std::string> args = {"run", "--layers"};
    for (int i = 1; i <= 4; ++i) {
        args.push_back(path("d/layer_" + std::to_string(i) + ".txt"));
    }
    args.push_back("--truth");
    args.push_back(path("d/truth.txt"));
    for (const char* extra : {"--seed", "7", "--max-rounds", "4"}) {
        args.push_back(extra);
    }
    args.push_back("--out");
    args.push_back(path("b"));
    ASSERT_EQ(cli(args), kExitOk) << err.str();
    const std::string a = slurp(dir / "a" / "trace_seed7.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / "trace_seed7.csv"));
    EXPECT_EQ(slurp(dir / "a" / "learned_seed7.txt"), slurp(dir / "b" / "learned_seed7.txt"));
    EXPECT_EQ(a.substr(0, a.find('\n')), "round,nmi,modularity,num_edges,active_edges,w_src_0,w_src_1,w_src_2,w_src_3");
}

TEST_F(CliGTest, testCustomLayersWithoutTruth) {
    std::ofstream(dir / "l1.txt") << "# layer one\nann bob\nbob cy\ncy ann\ndee eve\n";
    std::ofstream(dir / "l2.txt") << "ann bob\ncy dee\neve ann\n";
    ASSERT_EQ(cli({"run", "--layers", path("l1.txt"), path("l2.txt"), "--measure", "consistent-no", "--out",
                   path("o")}),
              kExitOk)
        << err.str();
    std::ifstream summary(dir / "o" / "summary.csv");
    std::string header;
    std::string row;
    std::getline(summary, header);
    std::getline(summary, row);
    EXPECT_EQ(header, "dataset,union_modularity,measure,modularity,nmi,sparsity,source_weights,seed,rounds,terminated_by");
    // union_modularity and nmi are empty without a truth file
    EXPECT_EQ(row.rfind("custom,,consistent-no,", 0), 0u) << row;
    std::istringstream fields(row);
    std::vector<std::string> cols;
    for (std::string f; std::getline(fields, f, ',');) {
        cols.push_back(f);
    }
    ASSERT_GE(cols.size(), 5u);
    EXPECT_EQ(cols[4], "");
    // learned edges and clusters carry the original labels
    const std::string clusters = slurp(dir / "o" / "clusters_seed1.txt");
    EXPECT_NE(clusters.find("ann "), std::string::npos);
    EXPECT_NE(clusters.find("eve "), std::string::npos);
}

TEST_F(CliGTest, testRepetitionsAggregate) {
    ASSERT_EQ(cli({"run", "--dataset", "LSBM-2", "--measure", "ec", "--repetitions", "3", "--seed", "4",
                   "--max-rounds", "2", "--out", path("o")}),
              kExitOk)
        << err.str();
    for (int seed = 4; seed <= 6; ++seed) {
        EXPECT_TRUE(fs::exists(dir / "o" / ("trace_seed" + std::to_string(seed) + ".csv")));
        EXPECT_TRUE(fs::exists(dir / "o" / ("learned_seed" + std::to_string(seed) + ".txt")));
    }
    EXPECT_EQ(countLines(dir / "o" / "summary.csv", false), 4u);
    const std::string agg = slurp(dir / "o" / "aggregate.csv");
    EXPECT_EQ(agg.rfind("dataset,measure,nu,metric,runs,median,q1,q3\n", 0), 0u);
    EXPECT_NE(agg.find("LSBM-2,ec,0.2,sparsity,3,"), std::string::npos);
}

TEST_F(CliGTest, testConfigFile) {
    std::ofstream(dir / "l1.txt") << "a b\nb c\n";
    std::ofstream(dir / "l2.txt") << "a b\nc d\n";
    std::ofstream(dir / "run.json") << R"({"dataset": ["l1.txt", "l2.txt"], "clustering": "walktrap",
        "quality": "ec", "epsilon": 0.3, "nu": 0.1, "delta": 0.04, "max_rounds": 7, "seed": 9})";
    const ExperimentConfig c = loadConfig(dir / "run.json");
    EXPECT_EQ(c.dataset.layers.size(), 2u);
    EXPECT_EQ(c.dataset.layers[0], dir / "l1.txt");
    EXPECT_EQ(c.quality, "ec");
    EXPECT_DOUBLE_EQ(c.params.epsilon, 0.3);
    EXPECT_DOUBLE_EQ(c.params.nu, 0.1);
    EXPECT_DOUBLE_EQ(c.params.delta, 0.04);
    EXPECT_EQ(c.params.maxRounds, 7u);
    EXPECT_EQ(c.params.seed, 9u);

    ASSERT_EQ(cli({"run", "--config", path("run.json"), "--seed", "2", "--out", path("o")}), kExitOk) << err.str();
    EXPECT_TRUE(fs::exists(dir / "o" / "trace_seed2.csv"));

    EXPECT_THROW(parseConfig(nlohmann::json::parse(R"({"dataset": "GSBM-2", "colour": 1})")), UsageError);
    EXPECT_THROW(parseConfig(nlohmann::json::parse(R"({"dataset": 3})")), UsageError);
    EXPECT_THROW(parseConfig(nlohmann::json::parse(R"({"epsilon": "big"})")), UsageError);
    EXPECT_THROW(parseConfig(nlohmann::json::parse(R"({"dataset": "NOPE"})")).validate(), UsageError);
    EXPECT_EQ(parseConfig(nlohmann::json::parse(R"({"dataset": "GSBM-3"})")).dataset.preset, "GSBM-3");

    std::ofstream(dir / "bad.json") << "{not json";
    EXPECT_EQ(cli({"run", "--config", path("bad.json")}), kExitUsage);
}

TEST_F(CliGTest, testReproduceReportLayout) {
    ASSERT_EQ(cli({"reproduce", "table2", "--presets", "GSBM-1", "--seeds", "2", "--max-rounds", "2", "--out",
                   path("r")}),
              kExitOk)
        << err.str();
    const std::string report = slurp(dir / "r" / "report.md");
    EXPECT_EQ(report.rfind("| dataset | measure | union modularity | modularity | NMI | sparsity | source weights |",
                           0),
              0u);
    EXPECT_NE(report.find("| GSBM-1 | ec | "), std::string::npos);
    EXPECT_NE(report.find("| GSBM-1 | consistent-no | "), std::string::npos);
    EXPECT_NE(report.find("criterion 1 SKIP"), std::string::npos);
    EXPECT_EQ(countLines(dir / "r" / "summary.csv", false), 5u);
    EXPECT_EQ(out.str(), report);
}

TEST_F(CliGTest, testSpread) {
    const Spread s = spread({5, 1, 3, 2, 4});
    EXPECT_DOUBLE_EQ(s.median, 3);
    EXPECT_DOUBLE_EQ(s.q1, 2);
    EXPECT_DOUBLE_EQ(s.q3, 4);
    EXPECT_DOUBLE_EQ(spread({1, 2}).median, 1.5);
    EXPECT_THROW(spread({}), std::invalid_argument);
}

namespace {

RunRecord fake(std::string dataset, std::string measure, std::uint64_t seed, double mod, double spars,
               std::vector<double> weights, double nmi = 1.0, double nu = 0.2) {
    RunRecord r;
    r.dataset = std::move(dataset);
    r.measure = std::move(measure);
    r.seed = seed;
    r.nu = nu;
    r.modularity = mod;
    r.sparsity = spars;
    r.nmi = nmi;
    r.nmiBlocks = nmi;
    r.sourceWeights = std::move(weights);
    return r;
}

const std::vector<double> kFlat = {0.25, 0.25, 0.25, 0.25};

} // namespace

TEST_F(CliGTest, testCriteriaLogic) {
    std::vector<RunRecord> records;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        records.push_back(fake("GSBM-2", "consistent-no", s, 0.75, 0.57, kFlat, s == 3 ? 0.99 : 1.0));
        // two of ten seeds miss NMI = 1
        records.push_back(fake("GSBM-2", "ec", s, 0.58, 0.69, kFlat, s <= 2 ? 0.98 : 1.0));
    }
    const auto c = evaluateRunCriteria(records);
    ASSERT_EQ(c.size(), 7u);
    EXPECT_EQ(c[0].verdict, Verdict::Pass) << c[0].detail;
    EXPECT_EQ(c[1].verdict, Verdict::Fail) << c[1].detail;
    EXPECT_EQ(c[2].verdict, Verdict::Skipped);
    EXPECT_EQ(formatCriterion(c[0]).rfind("criterion 1 PASS: ", 0), 0u);
}

TEST_F(CliGTest, testCriterionFourPairsSeeds) {
    std::vector<RunRecord> records;
    for (const std::string d : {"GSBM-1", "GSBM-2", "GSBM-3", "LSBM-2", "LSBM-3"}) {
        for (std::uint64_t s = 1; s <= 10; ++s) {
            const bool win = s > 2;
            records.push_back(fake(d, "ec", s, 0.5, 0.6, kFlat));
            records.push_back(fake(d, "consistent-no", s, win ? 0.7 : 0.4, 0.4, kFlat));
        }
    }
    EXPECT_EQ(evaluateRunCriteria(records)[3].verdict, Verdict::Pass);
    records.back().modularity = 0.1; // LSBM-3 drops to 7/10
    EXPECT_EQ(evaluateRunCriteria(records)[3].verdict, Verdict::Fail);
}

TEST_F(CliGTest, testCriterionSevenUsesConvergenceRound) {
    std::vector<RunRecord> records;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        RunRecord fast = fake("GSBM-2", "ec", s, 0.58, 0.69, kFlat);
        fast.result.lastFreezeRound = 10;
        RunRecord slow = fake("GSBM-2", "ec", s, 0.58, 0.69, kFlat, 1.0, 0.0);
        slow.result.lastFreezeRound = 20;
        records.push_back(fast);
        records.push_back(slow);
    }
    EXPECT_EQ(evaluateRunCriteria(records)[6].verdict, Verdict::Pass);
    for (auto& r : records) {
        if (r.nu == 0.2) {
            r.result.lastFreezeRound = 15;
        }
    }
    EXPECT_EQ(evaluateRunCriteria(records)[6].verdict, Verdict::Fail);
}

TEST_F(CliGTest, testReferenceTableComplete) {
    EXPECT_EQ(referenceTable().size(), 9u);
    EXPECT_DOUBLE_EQ(referenceTable()[1].consistentNo.sparsity, 0.573);
    EXPECT_EQ(referenceTable()[2].ec.weights.size(), 5u);
    EXPECT_EQ(reproduceScenarios().size(), 19u);
    const auto all = reproduceScenarios();
    for (const Scenario& s : criteriaScenarios()) {
        EXPECT_NE(std::find(all.begin(), all.end(), s), all.end());
    }
}

} // namespace lbga::cli
