#include <lbga_cli/criteria.hpp>

#include <lbga/eval.hpp>
#include <lbga/synth.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace lbga::cli {

const std::vector<ReferenceRow>& referenceTable() {
    static const std::vector<ReferenceRow> rows = {
        {"GSBM-1", 0.264, {0.549, 1, 0.644, {0.250, 0.251, 0.250, 0.249}},
         {0.750, 1, 0.515, {0.250, 0.251, 0.249, 0.249}}},
        {"GSBM-2", 0.323, {0.580, 1, 0.691, {0.252, 0.250, 0.248, 0.251}},
         {0.750, 1, 0.573, {0.252, 0.250, 0.247, 0.251}}},
        {"GSBM-3", 0.312, {0.607, 1, 0.657, {0.225, 0.224, 0.226, 0.227, 0.098}},
         {0.750, 1, 0.562, {0.221, 0.221, 0.222, 0.223, 0.113}}},
        {"GSBM-4", 0.143, {0.421, 0.966, 0.585, {0.202, 0.232, 0.265, 0.302}},
         {0.750, 0.983, 0.393, {0.202, 0.231, 0.266, 0.302}}},
        {"GSBM-5", 0.145, {0.395, 0.919, 0.653, {0.213, 0.282, 0.361, 0.144}},
         {0.666, 0.958, 0.477, {0.199, 0.271, 0.348, 0.182}}},
        {"LSBM-1", 0.111, {0.298, 0.765, 0.651, {0.253, 0.250, 0.250, 0.248}},
         {0.378, 0.032, 0.060, {0.249, 0.251, 0.250, 0.250}}},
        {"LSBM-2", 0.167, {0.464, 0.975, 0.582, {0.249, 0.251, 0.248, 0.252}},
         {0.750, 1, 0.417, {0.250, 0.250, 0.248, 0.252}}},
        {"LSBM-3", 0.162, {0.473, 0.966, 0.568, {0.218, 0.217, 0.222, 0.219, 0.124}},
         {0.750, 0.968, 0.395, {0.212, 0.212, 0.213, 0.209, 0.154}}},
        {"ER-only", -0.002, {0.193, 0.012, 0.999, {0.264, 0.234, 0.260, 0.243}},
         {0.836, 0.025, 0.230, {0.251, 0.253, 0.248, 0.247}}},
    };
    return rows;
}

std::vector<Scenario> criteriaScenarios() {
    return {
        {"GSBM-1", "ec"},          {"GSBM-1", "consistent-no"}, {"GSBM-2", "ec"},
        {"GSBM-2", "consistent-no"}, {"GSBM-2", "ec", 0.0},       {"GSBM-3", "ec"},
        {"GSBM-3", "consistent-no"}, {"LSBM-1", "consistent-no"}, {"LSBM-2", "ec"},
        {"LSBM-2", "consistent-no"}, {"LSBM-3", "ec"},           {"LSBM-3", "consistent-no"},
        {"ER-only", "consistent-no"},
    };
}

std::vector<Scenario> reproduceScenarios() {
    std::vector<Scenario> all;
    for (const DatasetPreset& p : datasetPresets()) {
        all.push_back({p.name, "ec"});
        all.push_back({p.name, "consistent-no"});
    }
    all.push_back({"GSBM-2", "ec", 0.0});
    return all;
}

std::vector<Job> makeJobs(const std::vector<Scenario>& scenarios, const std::vector<std::uint64_t>& seeds,
                          const LbgaParams& base) {
    std::vector<Job> jobs;
    for (const Scenario& s : scenarios) {
        for (std::uint64_t seed : seeds) {
            Job job;
            job.config.dataset.preset = s.dataset;
            job.config.quality = s.measure;
            job.config.params = base;
            job.config.params.nu = s.nu;
            job.config.params.seed = seed;
            job.seed = seed;
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

std::string toString(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "PASS";
    case Verdict::Fail:
        return "FAIL";
    case Verdict::Skipped:
        return "SKIP";
    }
    return "?";
}

namespace {

std::vector<const RunRecord*> select(const std::vector<RunRecord>& records, const std::string& dataset,
                                     const std::string& measure, double nu = 0.2) {
    std::vector<const RunRecord*> out;
    for (const RunRecord& r : records) {
        if (r.dataset == dataset && r.measure == measure && r.nu == nu) {
            out.push_back(&r);
        }
    }
    return out;
}

template <typename Get>
double medianOf(const std::vector<const RunRecord*>& rs, Get get) {
    std::vector<double> v;
    for (const RunRecord* r : rs) {
        v.push_back(get(*r));
    }
    return spread(std::move(v)).median;
}

std::vector<double> medianWeights(const std::vector<const RunRecord*>& rs) {
    std::vector<double> w(rs.front()->sourceWeights.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = medianOf(rs, [i](const RunRecord& r) { return r.sourceWeights.at(i); });
    }
    return w;
}

std::size_t perfectRuns(const std::vector<const RunRecord*>& rs) {
    return static_cast<std::size_t>(
        std::count_if(rs.begin(), rs.end(), [](const RunRecord* r) { return r->nmi && *r->nmi == 1.0; }));
}

// NaN-safe: anything missing counts as failing the comparison
double orNan(const std::optional<double>& v) {
    return v.value_or(std::nan(""));
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string fmtList(const std::vector<double>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? ", " : "") + fmt(xs[i]);
    }
    return s + ")";
}

bool within(double x, double target, double tol) {
    return std::abs(x - target) <= tol;
}

bool atLeastFraction(std::size_t hits, std::size_t total, std::size_t num, std::size_t den) {
    return hits * den >= total * num;
}

CriterionResult pending(int id, std::string title) {
    return {id, std::move(title), Verdict::Skipped, "no runs"};
}

Verdict verdict(bool ok) {
    return ok ? Verdict::Pass : Verdict::Fail;
}

CriterionResult perfectGsbm2(const std::vector<RunRecord>& records, int id, const std::string& measure,
                             double modTarget, double modTol, double sparsTarget, double sparsTol,
                             bool checkWeights) {
    CriterionResult c = pending(id, "GSBM-2 + " + measure + " recovers the planted blocks");
    const auto rs = select(records, "GSBM-2", measure);
    if (rs.empty()) {
        return c;
    }
    const std::size_t perfect = perfectRuns(rs);
    const double mod = medianOf(rs, [](const RunRecord& r) { return orNan(r.modularity); });
    const double spars = medianOf(rs, [](const RunRecord& r) { return r.sparsity; });
    bool ok = atLeastFraction(perfect, rs.size(), 9, 10) && within(mod, modTarget, modTol) &&
              within(spars, sparsTarget, sparsTol);
    std::string detail = "NMI=1 in " + std::to_string(perfect) + "/" + std::to_string(rs.size()) +
                         ", modularity " + fmt(mod) + ", sparsity " + fmt(spars);
    if (checkWeights) {
        const auto w = medianWeights(rs);
        for (double x : w) {
            ok = ok && within(x, 0.25, 0.03);
        }
        detail += ", weights " + fmtList(w);
    }
    c.verdict = verdict(ok);
    c.detail = detail;
    return c;
}

CriterionResult noiseSource(const std::vector<RunRecord>& records) {
    CriterionResult c = pending(3, "GSBM-3 noise source is down-weighted");
    std::string detail;
    bool ok = true;
    for (const std::string measure : {"ec", "consistent-no"}) {
        const auto rs = select(records, "GSBM-3", measure);
        if (rs.empty()) {
            return c;
        }
        const auto w = medianWeights(rs);
        if (w.size() != 5) {
            c.verdict = Verdict::Fail;
            c.detail = "expected 5 sources";
            return c;
        }
        const double mean = (w[0] + w[1] + w[2] + w[3]) / 4.0;
        ok = ok && w[4] <= 0.15;
        for (int i = 0; i < 4; ++i) {
            ok = ok && std::abs(w[i] - mean) <= 0.02;
        }
        detail += (detail.empty() ? "" : "; ") + measure + " " + fmtList(w);
    }
    c.verdict = verdict(ok);
    c.detail = detail;
    return c;
}

CriterionResult sparserAndMoreModular(const std::vector<RunRecord>& records) {
    CriterionResult c = pending(4, "consistent-no is sparser and more modular than ec");
    std::string detail;
    bool ok = true;
    for (const std::string dataset : {"GSBM-1", "GSBM-2", "GSBM-3", "LSBM-2", "LSBM-3"}) {
        const auto ec = select(records, dataset, "ec");
        const auto no = select(records, dataset, "consistent-no");
        if (ec.empty() || no.empty()) {
            return c;
        }
        std::size_t paired = 0;
        std::size_t wins = 0;
        for (const RunRecord* a : no) {
            for (const RunRecord* b : ec) {
                if (a->seed != b->seed) {
                    continue;
                }
                ++paired;
                if (orNan(a->modularity) > orNan(b->modularity) && a->sparsity < b->sparsity) {
                    ++wins;
                }
            }
        }
        ok = ok && paired > 0 && atLeastFraction(wins, paired, 8, 10);
        detail += (detail.empty() ? "" : ", ") + dataset + " " + std::to_string(wins) + "/" +
                  std::to_string(paired);
    }
    c.verdict = verdict(ok);
    c.detail = detail;
    return c;
}

CriterionResult pureNoise(const std::vector<RunRecord>& records) {
    CriterionResult c = pending(5, "ER-only + consistent-no learns no structure");
    const auto rs = select(records, "ER-only", "consistent-no");
    if (rs.empty()) {
        return c;
    }
    const double spars = medianOf(rs, [](const RunRecord& r) { return r.sparsity; });
    const double blockNmi = medianOf(rs, [](const RunRecord& r) { return orNan(r.nmiBlocks); });
    const auto w = medianWeights(rs);
    bool ok = spars <= 0.30 && blockNmi <= 0.1;
    for (double x : w) {
        ok = ok && within(x, 0.25, 0.03);
    }
    c.verdict = verdict(ok);
    c.detail = "sparsity " + fmt(spars) + ", NMI vs blocks " + fmt(blockNmi) + ", weights " + fmtList(w);
    return c;
}

CriterionResult lowSignal(const std::vector<RunRecord>& records) {
    CriterionResult c = pending(6, "LSBM-1 + consistent-no degenerates");
    const auto rs = select(records, "LSBM-1", "consistent-no");
    if (rs.empty()) {
        return c;
    }
    const double spars = medianOf(rs, [](const RunRecord& r) { return r.sparsity; });
    const double n = medianOf(rs, [](const RunRecord& r) { return orNan(r.nmi); });
    c.verdict = verdict(spars <= 0.15 && n <= 0.15);
    c.detail = "sparsity " + fmt(spars) + ", NMI " + fmt(n);
    return c;
}

CriterionResult nonEdgeFeedback(const std::vector<RunRecord>& records) {
    CriterionResult c = pending(7, "non-edge feedback speeds up convergence on GSBM-2 + ec");
    const auto with = select(records, "GSBM-2", "ec", 0.2);
    const auto without = select(records, "GSBM-2", "ec", 0.0);
    if (with.empty() || without.empty()) {
        return c;
    }
    auto rounds = [](const RunRecord& r) { return static_cast<double>(r.result.lastFreezeRound); };
    const double a = medianOf(with, rounds);
    const double b = medianOf(without, rounds);
    c.verdict = verdict(a <= 0.7 * b);
    c.detail = "median rounds to converge " + fmt(a) + " (nu=0.2) vs " + fmt(b) + " (nu=0)";
    return c;
}

} // namespace

std::vector<CriterionResult> evaluateRunCriteria(const std::vector<RunRecord>& records) {
    return {
        perfectGsbm2(records, 1, "consistent-no", 0.750, 0.01, 0.573, 0.08, true),
        perfectGsbm2(records, 2, "ec", 0.58, 0.06, 0.69, 0.08, false),
        noiseSource(records),
        sparserAndMoreModular(records),
        pureNoise(records),
        lowSignal(records),
        nonEdgeFeedback(records),
    };
}

std::string formatCriterion(const CriterionResult& c) {
    return "criterion " + std::to_string(c.id) + " " + toString(c.verdict) + ": " + c.title + " (" + c.detail +
           ")";
}

void writeReport(std::ostream& out, const std::vector<RunRecord>& records,
                 const std::vector<CriterionResult>& criteria) {
    out << "| dataset | measure | union modularity | modularity | NMI | sparsity | source weights |\n"
        << "|---|---|---|---|---|---|---|\n";
    auto pair = [](double ours, std::optional<double> ref) {
        return fmt(ours) + (ref ? " (" + fmt(*ref) + ")" : "");
    };
    for (const ReferenceRow& ref : referenceTable()) {
        for (const std::string measure : {"ec", "consistent-no"}) {
            const auto rs = select(records, ref.dataset, measure);
            if (rs.empty()) {
                continue;
            }
            const ReferenceRow::Cell& cell = measure == "ec" ? ref.ec : ref.consistentNo;
            const double um = medianOf(rs, [](const RunRecord& r) { return orNan(r.unionModularity); });
            const double mod = medianOf(rs, [](const RunRecord& r) { return orNan(r.modularity); });
            const double n = medianOf(rs, [](const RunRecord& r) { return orNan(r.nmi); });
            const double spars = medianOf(rs, [](const RunRecord& r) { return r.sparsity; });
            out << "| " << ref.dataset << " | " << measure << " | " << pair(um, ref.unionModularity) << " | "
                << pair(mod, cell.modularity) << " | " << pair(n, cell.nmi) << " | "
                << pair(spars, cell.sparsity) << " | " << fmtList(medianWeights(rs)) << " "
                << fmtList(cell.weights) << " |\n";
        }
    }
    out << "\nMedians over " << (records.empty() ? 0 : select(records, records.front().dataset,
                                                               records.front().measure, records.front().nu)
                                                          .size())
        << " seeds; reference values in parentheses.\n\n";
    for (const CriterionResult& c : criteria) {
        out << "- " << formatCriterion(c) << '\n';
    }
}

} // namespace lbga::cli
