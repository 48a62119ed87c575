#pragma once

#include "zxstar/circuits.hpp"
#include "zxstar/diagram.hpp"
#include "zxstar/oracle.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

namespace zxstar {

struct MasterCandidate {
    VertexId vertex = 0;
    int star_degree = 0;
    long weight = 0;
    std::optional<VertexId> linked_pair;
};

/// Port of the master-node weighting routine to the edge-typed model.
/// Throws if v is not a Z spider.
long master_weight(const Diagram& d, VertexId v);

/// Highest-weight candidate among Z spiders with incident star edges; ties
/// break on higher star degree, then lower id. Linked stack pairs share one
/// combined weight. Empty iff the term is star free.
std::optional<MasterCandidate> select_master(const Term& term);

struct TermSum {
    std::vector<Term> terms;
};

enum class Strategy { Weighted, Greedy };
enum class DiffusionMode { Auto, None };

struct PipelineTimeout : std::runtime_error {
    PipelineTimeout() : std::runtime_error("pipeline deadline exceeded") {}
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Weighted-master decomposition of a closed main-part diagram: preprocess
/// (NOT pushing, stack form, partial simplification), then expand the term
/// tree until every term is a star-free Clifford diagram.
TermSum decompose_weighted(const Diagram& d, Deadline deadline = {});

/// Baseline: per term, greedily apply the applicable action with the
/// smallest catalog scaling.
TermSum decompose_greedy(const Diagram& d, Deadline deadline = {});

struct RunResult {
    std::size_t terminal_terms = 0;
    std::vector<ExactScalar> statevector;
    std::vector<double> probabilities;
    std::vector<std::size_t> peaks;
    double threshold = 0;
    struct Timings {
        double prep_ms = 0, stage1_ms = 0, stage2_ms = 0, sum_ms = 0;
    } timings;
};

struct PipelineOptions {
    /// close outputs with <0| effects (scalar-mode benchmarking)
    bool plug_outputs = false;
    Deadline deadline;
    OracleLimits limits;
};

RunResult run_pipeline(const Circuit& c, Strategy strategy,
                       DiffusionMode diffusion = DiffusionMode::Auto,
                       const PipelineOptions& opts = {});

/// The full circuit diagram the pipeline must agree with (inputs closed,
/// diffusion appended when requested and defined).
Diagram whole_circuit_diagram(const Circuit& c, DiffusionMode diffusion,
                              bool plug_outputs = false);

/// threshold = (max+min)/2; peaks are the strictly-above indices.
std::pair<double, std::vector<std::size_t>>
count_peaks(const std::vector<double>& probabilities);

} // namespace zxstar
