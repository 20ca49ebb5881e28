#pragma once

#include "vchc/relaxations.hpp"
#include "vchc/trace.hpp"

#include <optional>
#include <vector>

namespace vchc {

struct RoundOptions {
    bool checks = false;  // runtime structural checks; failures throw
};

struct RoundResult {
    std::vector<long long> x;
    RunTrace trace;
};

/// Fix every zero-value undecided vertex at 0 copies. No-op when none.
void apply_z_fix(RoundingState& st);

/// Cover the lexicographically smallest (edge, vertex) pair whose live
/// coverage equals the endpoint's current x* (endpoint in the high-value
/// class); returns false when no such pair exists.
bool apply_tight_edge(RoundingState& st);

/// Fix every undecided vertex sitting exactly at the 1/f threshold to one
/// copy, freezing its current coverage. No-op when none.
void apply_ueq_fix(RoundingState& st);

std::optional<std::pair<int, int>> find_tight_pair(const RoundingState& st);

/// Iterative rounding through repeated extreme-point solves of the
/// shrunken relaxation. Returns the integral copy vector (edge assignment
/// is recovered separately via max flow) and the full run trace.
RoundResult round_lp2(const Instance& inst, const RoundOptions& opt = {});

struct TerminalReport {
    int w_size = 0;
    int u_at_cap = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Terminal structural checks, run when the loop guard holds:
///  (a) every uncovered edge retains at least |carriers|/f live coverage;
///  (b) the fractional low-value class is no larger than the set of
///      high-value vertices pinned at their copy limit;
///  (c) the tight-set certificate of the last solve draws from each
///      constraint family within the counting bounds that force (b).
TerminalReport check_termination_invariants(const RoundingState& st, const BuiltLp& built,
                                            const BasicSolution& sol);

}  // namespace vchc
