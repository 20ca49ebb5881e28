#pragma once

#include "vchc/rounding_lp2.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace vchc {

/// Deterministic edge ownership: every uncovered edge is owned by the
/// smallest-index high-value vertex among its live undecided endpoints.
/// Throws InvariantViolation when an uncovered edge has none (that would
/// break the well-definedness guarantee of the covering relaxation).
std::vector<int> assign_edges(const CoveringState& st);

/// Coverage redistribution for a move of the low-value coordinates to
/// x_new: low-value coverage rescales proportionally to its vertex value,
/// each owner absorbs the per-edge difference, all other coverage stays.
/// Preserves the per-edge coverage total exactly.
std::map<std::pair<int, int>, Rat> propagate_y(const CoveringState& st,
                                               const std::map<int, Rat>& x_new);

/// Iterative rounding driven by the aggregated covering relaxation, with
/// exact continuous movement between optima (all ranks).
RoundResult round_lp3(const Instance& inst, const RoundOptions& opt = {});

/// Graph specialization (rank 2 only): covering relaxation over the
/// low-value side, threshold pre-rounding, coupled movement.
RoundResult round_lp4(const Instance& inst, const RoundOptions& opt = {});

/// Matching in the bipartite nonzero pattern of the coupling matrix that
/// saturates w_f; nullopt when none exists (an invariant violation at a
/// certified extreme point). Augmenting-path search, deterministic.
std::optional<std::vector<std::pair<int, int>>> certify_matching(
    const std::map<std::pair<int, int>, Rat>& coupling, const std::vector<int>& w_f,
    const std::vector<int>& u_side);

}  // namespace vchc
