#include <lbga_cli/experiment.hpp>

#include <lbga/eval.hpp>
#include <lbga/quality.hpp>
#include <lbga/synth.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace lbga::cli {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (dataset.isPreset()) {
        if (!findPreset(dataset.preset)) {
            throw UsageError("unknown dataset preset '" + dataset.preset + "'");
        }
        if (!dataset.layers.empty()) {
            throw UsageError("give either a preset or layer files, not both");
        }
    } else if (dataset.layers.empty()) {
        throw UsageError("no dataset: name a preset or list layer files");
    }
    if (repetitions == 0) {
        throw UsageError("repetitions must be positive");
    }
    try {
        params.validate();
        makeQualityMeasure(quality);
        makeClusteringAlgorithm(clustering);
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
}

namespace {

template <typename T>
void readField(const nlohmann::json& j, const char* key, T& into) {
    if (!j.contains(key)) {
        return;
    }
    try {
        into = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError(std::string("config field '") + key + "' has the wrong type");
    }
}

fs::path resolve(const fs::path& base, const fs::path& p) {
    return p.is_absolute() || base.empty() ? p : base / p;
}

} // namespace

ExperimentConfig parseConfig(const nlohmann::json& j, const fs::path& base) {
    if (!j.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    static const std::vector<std::string> known = {"dataset", "truth",      "clustering", "quality",
                                                   "epsilon", "nu",         "delta",      "max_rounds",
                                                   "seed",    "repetitions", "patience",  "residual",
                                                   "out"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw UsageError("unknown config field '" + key + "'");
        }
    }
    ExperimentConfig c;
    if (j.contains("dataset")) {
        const auto& d = j.at("dataset");
        if (d.is_string()) {
            c.dataset.preset = d.get<std::string>();
        } else if (d.is_array()) {
            for (const auto& p : d) {
                if (!p.is_string()) {
                    throw UsageError("dataset paths must be strings");
                }
                c.dataset.layers.push_back(resolve(base, p.get<std::string>()));
            }
        } else {
            throw UsageError("dataset must be a preset name or a list of paths");
        }
    }
    if (j.contains("truth")) {
        std::string truth;
        readField(j, "truth", truth);
        c.dataset.truth = resolve(base, truth);
    }
    readField(j, "clustering", c.clustering);
    readField(j, "quality", c.quality);
    readField(j, "epsilon", c.params.epsilon);
    readField(j, "nu", c.params.nu);
    readField(j, "delta", c.params.delta);
    readField(j, "max_rounds", c.params.maxRounds);
    readField(j, "seed", c.params.seed);
    readField(j, "repetitions", c.repetitions);
    readField(j, "patience", c.params.patience);
    if (j.contains("residual")) {
        std::string residual;
        readField(j, "residual", residual);
        try {
            c.params.residual = parseResidualPolicy(residual);
        } catch (const InputError& e) {
            throw UsageError(e.what());
        }
    }
    if (j.contains("out")) {
        std::string out;
        readField(j, "out", out);
        c.out = out;
    }
    return c;
}

ExperimentConfig loadConfig(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config " + path.string() + ": " + e.what());
    }
    return parseConfig(j, path.parent_path());
}

Dataset loadDataset(const DatasetSource& source, std::uint64_t seed) {
    if (source.isPreset()) {
        const auto preset = findPreset(source.preset);
        if (!preset) {
            throw UsageError("unknown dataset preset '" + source.preset + "'");
        }
        SyntheticData data = preset->generate(seed);
        const std::size_t n = data.layers.numberOfNodes();
        return Dataset{preset->name, std::move(data.layers), LabelTable::identity(n), std::move(data.truth),
                       blockAssignment(preset->blockSizes)};
    }
    LabelTable labels;
    std::optional<GroundTruth> truth;
    if (source.truth) {
        std::ifstream in(*source.truth);
        if (!in) {
            throw std::runtime_error("cannot open truth file " + source.truth->string());
        }
        truth = readClustering(in, labels);
    }
    GraphCollection layers = readLayers(source.layers, labels);
    if (truth && truth->size() != layers.numberOfNodes()) {
        throw InputError("truth file does not assign every vertex of the layers");
    }
    return Dataset{"custom", std::move(layers), std::move(labels), std::move(truth), std::nullopt};
}

SummaryRow RunRecord::summary() const {
    SummaryRow row;
    row.dataset = dataset;
    row.unionModularity = unionModularity;
    row.measure = measure;
    row.modularity = modularity;
    row.nmi = nmi;
    row.sparsity = sparsity;
    row.sourceWeights = sourceWeights;
    row.seed = seed;
    row.rounds = result.roundsExecuted;
    row.terminatedBy = toString(result.terminatedBy);
    return row;
}

RunRecord runOnce(const Dataset& data, const ExperimentConfig& config, std::uint64_t seed) {
    const auto algo = makeClusteringAlgorithm(config.clustering);
    const auto measure = makeQualityMeasure(config.quality);
    LbgaParams params = config.params;
    params.seed = seed;

    RunRecord r;
    r.dataset = data.name;
    r.measure = measure->name();
    r.seed = seed;
    r.nu = params.nu;
    r.result = run(data.layers, *algo, *measure, params, data.truth ? &*data.truth : nullptr);
    const Graph& learned = r.result.learned;
    r.sparsity = sparsity(learned, data.layers);
    if (learned.numberOfEdges() > 0) {
        r.modularity = modularity(learned, r.result.learnedClustering);
    }
    if (data.truth) {
        r.nmi = nmi(r.result.learnedClustering, *data.truth);
        if (data.layers.unionGraph().numberOfEdges() > 0) {
            r.unionModularity = unionBaseline(data.layers, *data.truth);
        }
    }
    if (data.blocks) {
        r.nmiBlocks = nmi(r.result.learnedClustering, *data.blocks);
    }
    r.sourceWeights = sourceWeightProfile(r.result.finalState);
    return r;
}

std::vector<RunRecord> runJobs(const std::vector<Job>& jobs, std::size_t threads) {
    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureLock;
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                const Dataset data = loadDataset(jobs[k].config.dataset, jobs[k].seed);
                records[k] = runOnce(data, jobs[k].config, jobs[k].seed);
            } catch (...) {
                std::lock_guard lock(failureLock);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = jobs.size();
            }
        }
    };
    const std::size_t count = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

std::size_t threadLimit() {
    const std::size_t hardware = std::max(1U, std::thread::hardware_concurrency());
    const char* env = std::getenv("LBGA_THREADS");
    if (!env || !*env) {
        return hardware;
    }
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1) {
        throw UsageError(std::string("LBGA_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<std::size_t>(value);
}

Spread spread(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("spread of an empty sample");
    }
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {quantile(0.5), quantile(0.25), quantile(0.75)};
}

void writeAggregate(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "dataset,measure,nu,metric,runs,median,q1,q3\n";
    std::vector<std::size_t> done(records.size(), 0);
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (done[k]) {
            continue;
        }
        std::vector<const RunRecord*> group;
        for (std::size_t j = k; j < records.size(); ++j) {
            if (records[j].dataset == records[k].dataset && records[j].measure == records[k].measure &&
                records[j].nu == records[k].nu) {
                group.push_back(&records[j]);
                done[j] = 1;
            }
        }
        auto emit = [&](const std::string& metric, auto get) {
            std::vector<double> values;
            for (const RunRecord* r : group) {
                if (const std::optional<double> v = get(*r)) {
                    values.push_back(*v);
                }
            }
            if (values.empty()) {
                return;
            }
            const Spread s = spread(values);
            out << records[k].dataset << ',' << records[k].measure << ',' << formatValue(records[k].nu) << ','
                << metric << ',' << values.size() << ',' << formatValue(s.median) << ',' << formatValue(s.q1)
                << ',' << formatValue(s.q3) << '\n';
        };
        using Opt = std::optional<double>;
        emit("union_modularity", [](const RunRecord& r) { return r.unionModularity; });
        emit("modularity", [](const RunRecord& r) { return r.modularity; });
        emit("nmi", [](const RunRecord& r) { return r.nmi; });
        emit("sparsity", [](const RunRecord& r) { return Opt(r.sparsity); });
        emit("rounds", [](const RunRecord& r) { return Opt(static_cast<double>(r.result.roundsExecuted)); });
        emit("last_freeze_round",
             [](const RunRecord& r) { return Opt(static_cast<double>(r.result.lastFreezeRound)); });
        for (std::size_t i = 0; i < records[k].sourceWeights.size(); ++i) {
            emit("w_src_" + std::to_string(i), [i](const RunRecord& r) {
                return i < r.sourceWeights.size() ? Opt(r.sourceWeights[i]) : std::nullopt;
            });
        }
    }
}

} // namespace lbga::cli
