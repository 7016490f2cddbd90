#include <lbga_cli/commands.hpp>
#include <lbga_cli/criteria.hpp>
#include <lbga_cli/experiment.hpp>

#include <lbga/eval.hpp>
#include <lbga/synth.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace lbga::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream openOut(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void makeDirectory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }
}

struct GenerateArgs {
    std::string preset;
    std::uint64_t seed = 1;
    std::string out = "lbga-data";
};

int generate(const GenerateArgs& a, std::ostream& out) {
    const auto preset = findPreset(a.preset);
    const SyntheticData data = preset->generate(a.seed);
    const LabelTable labels = LabelTable::identity(data.layers.numberOfNodes());
    makeDirectory(a.out);
    for (std::size_t i = 0; i < data.layers.numberOfLayers(); ++i) {
        const fs::path path = fs::path(a.out) / ("layer_" + std::to_string(i + 1) + ".txt");
        auto file = openOut(path);
        file << "# " << preset->name << " seed " << a.seed << " layer " << i + 1 << '\n';
        writeEdgeList(file, data.layers.layer(i), labels);
        out << path.string() << ": " << data.layers.layer(i).numberOfEdges() << " edges\n";
    }
    auto truth = openOut(fs::path(a.out) / "truth.txt");
    writeClustering(truth, data.truth, labels);
    out << (fs::path(a.out) / "truth.txt").string() << ": " << data.truth.numberOfClusters() << " clusters\n";
    return kExitOk;
}

/// Command-line values that override the config file when given.
struct RunOverrides {
    std::string config;
    std::string dataset;
    std::vector<std::string> layers;
    std::string truth;
    std::optional<std::string> measure;
    std::optional<std::string> clustering;
    std::optional<double> epsilon;
    std::optional<double> nu;
    std::optional<double> delta;
    std::optional<std::size_t> maxRounds;
    std::optional<std::size_t> patience;
    std::optional<std::string> residual;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> repetitions;
    std::optional<std::string> out;

    ExperimentConfig resolve() const {
        ExperimentConfig c = config.empty() ? ExperimentConfig{} : loadConfig(config);
        if (!dataset.empty()) {
            c.dataset = {};
            c.dataset.preset = dataset;
        }
        if (!layers.empty()) {
            c.dataset.preset.clear();
            c.dataset.layers.assign(layers.begin(), layers.end());
        }
        if (!truth.empty()) {
            c.dataset.truth = truth;
        }
        if (measure) c.quality = *measure;
        if (clustering) c.clustering = *clustering;
        if (epsilon) c.params.epsilon = *epsilon;
        if (nu) c.params.nu = *nu;
        if (delta) c.params.delta = *delta;
        if (maxRounds) c.params.maxRounds = *maxRounds;
        if (patience) c.params.patience = *patience;
        if (seed) c.params.seed = *seed;
        if (repetitions) c.repetitions = *repetitions;
        if (out) c.out = *out;
        if (residual) {
            try {
                c.params.residual = parseResidualPolicy(*residual);
            } catch (const InputError& e) {
                throw UsageError(e.what());
            }
        }
        if (c.dataset.truth && c.dataset.isPreset()) {
            throw UsageError("--truth only applies to layer files");
        }
        c.validate();
        return c;
    }
};

void writeSummary(const fs::path& path, const std::vector<RunRecord>& records) {
    auto file = openOut(path);
    writeSummaryHeader(file);
    for (const RunRecord& r : records) {
        writeSummaryRow(file, r.summary());
    }
}

int runExperiment(const ExperimentConfig& c, std::size_t threads, std::ostream& out) {
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < c.repetitions; ++k) {
        jobs.push_back({c, c.params.seed + k});
    }
    // vertex labels only matter for file datasets; presets use 0..n-1
    std::optional<LabelTable> fileLabels;
    if (!c.dataset.isPreset()) {
        fileLabels = loadDataset(c.dataset, c.params.seed).labels;
    }
    const std::vector<RunRecord> records = runJobs(jobs, threads);

    makeDirectory(c.out);
    writeSummaryHeader(out);
    for (const RunRecord& r : records) {
        const std::string tag = "_seed" + std::to_string(r.seed);
        const std::size_t m = r.result.finalState.numberOfLayers();
        auto trace = openOut(c.out / ("trace" + tag + ".csv"));
        writeTraceCsv(trace, r.result.trace, m);
        const LabelTable labels = fileLabels ? *fileLabels : LabelTable::identity(r.result.learned.numberOfNodes());
        auto learned = openOut(c.out / ("learned" + tag + ".txt"));
        writeEdgeList(learned, r.result.learned, labels);
        auto clusters = openOut(c.out / ("clusters" + tag + ".txt"));
        writeClustering(clusters, r.result.learnedClustering, labels);
        writeSummaryRow(out, r.summary());
    }
    writeSummary(c.out / "summary.csv", records);
    auto aggregate = openOut(c.out / "aggregate.csv");
    writeAggregate(aggregate, records);
    return kExitOk;
}

struct ReproduceArgs {
    std::string table;
    std::size_t seeds = 10;
    std::uint64_t firstSeed = 1;
    std::vector<std::string> presets;
    std::optional<std::size_t> maxRounds;
    std::string out = "lbga-reproduce";
};

int reproduce(const ReproduceArgs& a, std::size_t threads, std::ostream& out) {
    std::vector<Scenario> scenarios = reproduceScenarios();
    if (!a.presets.empty()) {
        std::erase_if(scenarios, [&](const Scenario& s) {
            return std::find(a.presets.begin(), a.presets.end(), s.dataset) == a.presets.end();
        });
    }
    std::vector<std::uint64_t> seeds;
    for (std::size_t k = 0; k < a.seeds; ++k) {
        seeds.push_back(a.firstSeed + k);
    }
    LbgaParams base;
    if (a.maxRounds) {
        base.maxRounds = *a.maxRounds;
    }
    const std::vector<RunRecord> records = runJobs(makeJobs(scenarios, seeds, base), threads);
    const auto criteria = evaluateRunCriteria(records);

    makeDirectory(a.out);
    writeSummary(fs::path(a.out) / "summary.csv", records);
    auto aggregate = openOut(fs::path(a.out) / "aggregate.csv");
    writeAggregate(aggregate, records);
    auto report = openOut(fs::path(a.out) / "report.md");
    writeReport(report, records, criteria);
    writeReport(out, records, criteria);
    return kExitOk;
}

} // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learn one graph from several noisy layers by locally boosted aggregation", "lbga"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* genCmd = app.add_subcommand("generate", "Write a preset's layers and ground truth as edge lists");
    genCmd->add_option("preset", gen.preset, "GSBM-1..5, LSBM-1..3 or ER-only")->required();
    genCmd->add_option("--seed", gen.seed, "Generator seed");
    genCmd->add_option("--out", gen.out, "Output directory");

    RunOverrides ro;
    auto* runCmd = app.add_subcommand("run", "Run the aggregation on a preset or on layer files");
    runCmd->add_option("--config", ro.config, "JSON run config; flags override it");
    runCmd->add_option("--dataset", ro.dataset, "Preset name");
    runCmd->add_option("--layers", ro.layers, "Edge-list layer files");
    runCmd->add_option("--truth", ro.truth, "Ground-truth clustering file for --layers");
    runCmd->add_option("--measure", ro.measure, "ec, no, jaccard, dice or consistent-<base>");
    runCmd->add_option("--clustering", ro.clustering, "walktrap or singletons");
    runCmd->add_option("--epsilon", ro.epsilon, "Learning rate for sources with the edge");
    runCmd->add_option("--nu", ro.nu, "Learning rate for sources without the edge");
    runCmd->add_option("--delta", ro.delta, "Freezing threshold");
    runCmd->add_option("--max-rounds", ro.maxRounds, "Round limit");
    runCmd->add_option("--patience", ro.patience, "Stop after this many rounds without freezing (0: never)");
    runCmd->add_option("--residual", ro.residual, "last-candidate or threshold");
    runCmd->add_option("--seed", ro.seed, "First seed");
    runCmd->add_option("--repetitions", ro.repetitions, "Number of consecutive seeds");
    runCmd->add_option("--out", ro.out, "Output directory");

    ReproduceArgs rep;
    auto* repCmd = app.add_subcommand("reproduce", "Rerun the synthetic results table and check the criteria");
    repCmd->add_option("table", rep.table, "Only table2")->required();
    repCmd->add_option("--seeds", rep.seeds, "Seeds per cell");
    repCmd->add_option("--seed", rep.firstSeed, "First seed");
    repCmd->add_option("--presets", rep.presets, "Restrict to these presets");
    repCmd->add_option("--max-rounds", rep.maxRounds, "Round limit");
    repCmd->add_option("--out", rep.out, "Output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    std::function<int()> action;
    std::size_t threads = 1;
    try {
        app.parse(reversed);
        threads = threadLimit();
        if (genCmd->parsed()) {
            if (!findPreset(gen.preset)) {
                throw UsageError("unknown dataset preset '" + gen.preset + "'");
            }
            action = [&] { return generate(gen, out); };
        } else if (runCmd->parsed()) {
            const ExperimentConfig config = ro.resolve();
            action = [&, config] { return runExperiment(config, threads, out); };
        } else {
            if (rep.table != "table2") {
                throw UsageError("unknown table '" + rep.table + "' (only table2)");
            }
            if (rep.seeds == 0) {
                throw UsageError("--seeds must be positive");
            }
            for (const std::string& p : rep.presets) {
                if (!findPreset(p)) {
                    throw UsageError("unknown dataset preset '" + p + "'");
                }
            }
            action = [&] { return reproduce(rep, threads, out); };
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        err << "lbga: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return action();
    } catch (const std::exception& e) {
        err << "lbga: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace lbga::cli
