#pragma once

#include "vchc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vchc {

/// One sparse coefficient of a constraint or objective row.
struct Term {
    int var = -1;
    Rat coeff;
};

/// Sparse row: strictly increasing var indices, no zero coefficients.
using Row = std::vector<Term>;

enum class Rel { Le, Eq, Ge };

struct Constraint {
    Row row;
    Rel rel = Rel::Le;
    Rat rhs;
};

/// Minimization LP over named variables. Variable bounds are expressed as
/// ordinary constraints; the solver never sees implicit bounds.
struct LpProblem {
    std::vector<std::string> var_names;
    std::vector<Rat> objective;
    std::vector<Constraint> constraints;

    int num_vars() const { return static_cast<int>(var_names.size()); }
    int add_var(std::string name, Rat obj_coeff = Rat(0));

    /// Terms are sorted and merged; zero coefficients dropped.
    void add_constraint(Row row, Rel rel, Rat rhs);

    /// Human-readable text form for debugging.
    std::string dump() const;
};

/// A feasible point together with a certificate that it is a vertex of the
/// feasible polyhedron: `tight_set` lists constraints that hold with exact
/// equality at `values` and whose rows span the full variable space.
struct BasicSolution {
    std::vector<Rat> values;
    Rat objective_value;
    std::vector<int> tight_set;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    BasicSolution solution;  // meaningful only when status == Optimal
};

/// Exact primal simplex returning an optimal extreme point with its
/// tight-constraint certificate. Deterministic: identical problems (same
/// row order) give identical solutions. Throws InvariantViolation if the
/// feasible region has an optimum but no vertex (cannot happen for LPs
/// coming from the relaxation builders).
LpResult solve_extreme(const LpProblem& lp);

/// True iff sol is feasible for lp, every tight_set row holds with exact
/// equality, tight_set has one entry per variable, the tight rows have full
/// rank, and the recorded objective value matches the point.
bool verify_extreme(const LpProblem& lp, const BasicSolution& sol);

Rat row_value(const Row& row, const std::vector<Rat>& z);
bool satisfies(const Constraint& c, const std::vector<Rat>& z);
bool is_feasible_point(const LpProblem& lp, const std::vector<Rat>& z);

/// Affine stop condition row·z == rhs evaluated along a segment.
struct StopEvent {
    Row row;
    Rat rhs;
};

struct StopResult {
    Rat t;                        // in (0, 1]
    std::vector<int> triggered;   // indices of all events holding at t
};

/// Smallest t in (0,1] at which some event holds exactly on the segment
/// z(t) = (1-t)·from + t·to, with every event triggered at that t.
/// Events must not hold at t = 0 (callers filter those); events constant
/// in t never trigger. Returns nullopt when nothing triggers on (0,1].
std::optional<StopResult> line_stop_time(const std::vector<Rat>& from,
                                         const std::vector<Rat>& to,
                                         const std::vector<StopEvent>& events);

}  // namespace vchc
