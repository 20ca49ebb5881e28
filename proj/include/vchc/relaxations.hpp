#pragma once

#include "vchc/lp.hpp"
#include "vchc/state.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vchc {

/// Constraint families of the relaxations, used by the structural checks
/// to account for which rows a tight-set certificate draws from.
enum class LabelKind {
    EdgeCover,      // per-edge coverage equality
    YLeX,           // y(e,v) <= x_v
    Capacity,       // sum of incident y <= (residual) capacity * x
    MultUpper,      // x_v <= m_v
    LowerOneOverF,  // x_u >= 1/f
    UpperOneOverF,  // x_w <= 1/f
    YNonneg,        // y(e,v) >= 0
    CoveringRow,    // aggregated covering constraint per owner
    Box,            // remaining x bounds (x >= 0, x <= 1)
};

struct LpLabel {
    LabelKind kind = LabelKind::Box;
    int edge = -1;
    int vertex = -1;
};

/// A relaxation plus the metadata linking its rows and variables back to
/// instance objects: one label per constraint and the variable indices of
/// each x_v / y(e,v).
struct BuiltLp {
    LpProblem lp;
    std::vector<LpLabel> labels;
    std::vector<int> x_var;                        // vertex -> var index or -1
    std::map<std::pair<int, int>, int> y_var;      // (edge, vertex) -> var index

    /// Point assembled from a state's x*/y* restricted to this LP's
    /// variables, usable for feasibility cross-checks.
    std::vector<Rat> restrict_point(const RoundingState& st) const;
};

/// Full relaxation of the covering problem.
BuiltLp build_lp1(const Instance& inst);

/// Shrunken relaxation over undecided vertices and uncovered edges, with
/// the 1/f box constraints that make high-value vertices persistent.
BuiltLp build_lp2(const Instance& inst, const RoundingState& st);

/// Per-unit coverage contribution of each undecided low-value vertex w to
/// the edges owned by u: M(u,w) = sum over shared uncovered edges of
/// y*(e,w) / x*_w. Entries with no shared edge are absent (zero).
std::map<std::pair<int, int>, Rat> coupling_matrix(const Instance& inst,
                                                   const CoveringState& st);

/// Covering relaxation over x only: one aggregated row per high-value
/// vertex, boxes elsewhere.
BuiltLp build_lp3(const Instance& inst, const CoveringState& st);

/// Graph specialization (rank 2): covering rows over the low-value side
/// only. Throws std::invalid_argument when the instance rank is not 2.
BuiltLp build_lp4(const Instance& inst, const CoveringState& st);

/// Labeled human-readable dump.
std::string dump_lp(const BuiltLp& built);

std::string label_str(const LpLabel& label);

}  // namespace vchc
