#pragma once

#include "vchc/rational.hpp"

#include <string>
#include <vector>

namespace vchc {

/// One rounding decision. `kind` is one of:
///   "z-fix", "tight-edge", "ueq-fix"   (relaxation-resolve runs)
///   "stop-a", "stop-b", "stop-c"       (path-tracing runs; exact t recorded)
///   "pre-round"                        (graph-path threshold covers)
struct TraceEvent {
    std::string kind;
    std::vector<int> vertices;
    int edge = -1;
    int vertex = -1;
    bool has_t = false;
    Rat t;
};

struct TraceIteration {
    Rat objective;  // relaxation cost over undecided vertices at entry
    std::vector<TraceEvent> events;
    int u_gt = 0, u_eq = 0, w = 0, z = 0, d = 0, covered_edges = 0;
};

/// Full record of one rounding run: per-iteration events, terminal
/// structure sizes, and the outcome of every enabled runtime check.
struct RunTrace {
    std::string algorithm;
    Rat lp1_objective;
    std::vector<TraceIteration> iterations;
    long long solve_count = 0;
    int terminal_w = 0;          // undecided fractional low-value vertices
    int terminal_u_at_cap = 0;   // undecided high-value vertices at their copy limit
    bool checks_enabled = false;
    std::vector<std::string> check_failures;
    long long cost = 0;

    bool checks_ok() const { return check_failures.empty(); }
};

std::string trace_to_json(const RunTrace& trace);

}  // namespace vchc
