#pragma once

#include <lbga/clustering.hpp>
#include <lbga/engine.hpp>
#include <lbga/graph.hpp>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbga::cli {

/// Bad flags or config; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Either a preset name or explicit layer files (the `custom` case).
struct DatasetSource {
    std::string preset;
    std::vector<std::filesystem::path> layers;
    std::optional<std::filesystem::path> truth;

    bool isPreset() const { return !preset.empty(); }
    std::string name() const { return isPreset() ? preset : "custom"; }
};

struct ExperimentConfig {
    DatasetSource dataset;
    std::string clustering = "walktrap";
    std::string quality = "consistent-no";
    LbgaParams params;
    std::size_t repetitions = 1;
    std::filesystem::path out = "lbga-out";

    /// Throws UsageError for unknown presets, measures, algorithms or bad parameters.
    void validate() const;
};

/// Reads the JSON run config. Relative layer/truth paths resolve against `base`.
ExperimentConfig parseConfig(const nlohmann::json& j, const std::filesystem::path& base = {});
ExperimentConfig loadConfig(const std::filesystem::path& path);

struct Dataset {
    std::string name;
    GraphCollection layers;
    LabelTable labels;
    std::optional<GroundTruth> truth;
    /// block labels of a preset, also for presets without planted communities
    std::optional<GroundTruth> blocks;
};

/// Presets are regenerated from `seed`. For files, the truth file is read
/// first so its label order fixes vertex ids.
Dataset loadDataset(const DatasetSource& source, std::uint64_t seed);

struct RunRecord {
    std::string dataset;
    std::string measure;
    std::uint64_t seed = 0;
    double nu = 0;
    RunResult result;
    double sparsity = 0;
    std::optional<double> modularity; // G* w.r.t. A(G*)
    std::optional<double> nmi;        // A(G*) vs ground truth
    std::optional<double> nmiBlocks;  // A(G*) vs the preset's block labels
    std::optional<double> unionModularity;
    std::vector<double> sourceWeights;

    SummaryRow summary() const;
};

RunRecord runOnce(const Dataset& data, const ExperimentConfig& config, std::uint64_t seed);

/// One (dataset, measure, ν, seed) cell of a batch.
struct Job {
    ExperimentConfig config;
    std::uint64_t seed = 1;
};

/// Runs jobs on up to `threads` workers; results keep job order. The first
/// exception thrown by any job is rethrown after all workers stop.
std::vector<RunRecord> runJobs(const std::vector<Job>& jobs, std::size_t threads);

/// Worker count: LBGA_THREADS if set, else the hardware concurrency.
/// Throws UsageError for a malformed LBGA_THREADS.
std::size_t threadLimit();

struct Spread {
    double median = 0;
    double q1 = 0;
    double q3 = 0;
};

/// Linear-interpolated quartiles. Throws std::invalid_argument on empty input.
Spread spread(std::vector<double> values);

/// Writes `dataset,measure,nu,metric,runs,median,q1,q3` rows, one group per
/// (dataset, measure, ν) in first-seen order.
void writeAggregate(std::ostream& out, const std::vector<RunRecord>& records);

} // namespace lbga::cli
