#pragma once

#include <lbga/clustering.hpp>
#include <lbga/graph.hpp>
#include <lbga/weight_state.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lbga {

/// Normalized mutual information 2·I(a;b) / (H(a) + H(b)), natural log.
/// Two single-cluster partitions score 1. Throws InputError on size mismatch.
double nmi(const Clustering& a, const Clustering& b);

/// Newman modularity Σ_c (e_c / M − (d_c / 2M)²).
/// Throws InputError for an edgeless graph or a size mismatch.
double modularity(const Graph& g, const Clustering& c);

/// Component-wise mean of every union edge's normalized weight vector.
std::vector<double> sourceWeightProfile(const WeightState& state);

/// Modularity of the union graph against the planted partition.
double unionBaseline(const GraphCollection& coll, const GroundTruth& truth);

struct TraceRow {
    std::size_t round = 0;
    std::optional<double> nmi;        // A(G_t) vs ground truth, when known
    std::optional<double> modularity; // G_t vs A(G_t), absent for edgeless G_t
    std::size_t numEdges = 0;
    std::size_t activeEdges = 0;
    std::vector<double> sourceWeights;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct RunTrace {
    std::vector<TraceRow> rows;

    friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

/// Header `round,nmi,modularity,num_edges,active_edges,w_src_0,...`; missing
/// values are written as empty fields.
void writeTraceCsv(std::ostream& out, const RunTrace& trace, std::size_t layers);

/// One learned-graph summary, laid out like the usual results table.
struct SummaryRow {
    std::string dataset;
    std::optional<double> unionModularity;
    std::string measure;
    std::optional<double> modularity;
    std::optional<double> nmi;
    double sparsity = 0;
    std::vector<double> sourceWeights;
    std::size_t seed = 0;
    std::size_t rounds = 0;
    std::string terminatedBy;
};

/// Header `dataset,union_modularity,measure,modularity,nmi,sparsity,source_weights,seed,rounds,terminated_by`;
/// source weights are one ';'-separated field so rows with different m share a file.
void writeSummaryHeader(std::ostream& out);
void writeSummaryRow(std::ostream& out, const SummaryRow& row);

/// Formats a double with enough digits to round-trip, or "" when absent.
std::string formatValue(std::optional<double> v);

} // namespace lbga
