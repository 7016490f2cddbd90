#pragma once

#include <lbga_cli/experiment.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lbga::cli {

/// Published learned-graph results for one synthetic dataset.
struct ReferenceRow {
    struct Cell {
        double modularity;
        double nmi;
        double sparsity;
        std::vector<double> weights;
    };
    std::string dataset;
    double unionModularity;
    Cell ec;
    Cell consistentNo;
};

const std::vector<ReferenceRow>& referenceTable();

/// Batch cell without a seed.
struct Scenario {
    std::string dataset;
    std::string measure;
    double nu = 0.2;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Cells the run-based criteria 1-7 read.
std::vector<Scenario> criteriaScenarios();
/// Every preset under both measures, plus the ν = 0 control run.
std::vector<Scenario> reproduceScenarios();

/// ε = ν = 0.2, δ = 0.05 unless the scenario overrides ν.
std::vector<Job> makeJobs(const std::vector<Scenario>& scenarios, const std::vector<std::uint64_t>& seeds,
                          const LbgaParams& base = {});

enum class Verdict { Pass, Fail, Skipped };

struct CriterionResult {
    int id = 0;
    std::string title;
    Verdict verdict = Verdict::Skipped;
    std::string detail;
};

std::string toString(Verdict v);

/// Criteria 1-7 over a batch of records. A criterion whose cells are missing
/// is Skipped.
std::vector<CriterionResult> evaluateRunCriteria(const std::vector<RunRecord>& records);

/// `criterion <id> PASS|FAIL|SKIP: <title> (<detail>)`
std::string formatCriterion(const CriterionResult& c);

/// Side-by-side table of medians against the reference values, then the criteria.
void writeReport(std::ostream& out, const std::vector<RunRecord>& records,
                 const std::vector<CriterionResult>& criteria);

} // namespace lbga::cli
