#include "vchc/lp.hpp"

#include "vchc/instance.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace vchc {

int LpProblem::add_var(std::string name, Rat obj_coeff) {
    var_names.push_back(std::move(name));
    objective.push_back(std::move(obj_coeff));
    return static_cast<int>(var_names.size()) - 1;
}

void LpProblem::add_constraint(Row row, Rel rel, Rat rhs) {
    std::sort(row.begin(), row.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    Row merged;
    for (auto& t : row) {
        if (t.var < 0 || t.var >= num_vars())
            throw InvariantViolation("constraint references undeclared variable");
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == 0; }),
                 merged.end());
    constraints.push_back(Constraint{std::move(merged), rel, std::move(rhs)});
}

std::string LpProblem::dump() const {
    std::ostringstream os;
    os << "min";
    bool first = true;
    for (int j = 0; j < num_vars(); ++j) {
        if (objective[j] == 0) continue;
        os << (first ? " " : " + ") << rat_str(objective[j]) << "*" << var_names[j];
        first = false;
    }
    if (first) os << " 0";
    os << "\n";
    for (size_t i = 0; i < constraints.size(); ++i) {
        const auto& c = constraints[i];
        os << "[" << i << "] ";
        if (c.row.empty()) os << "0";
        for (size_t t = 0; t < c.row.size(); ++t) {
            if (t) os << " + ";
            os << rat_str(c.row[t].coeff) << "*" << var_names[c.row[t].var];
        }
        os << (c.rel == Rel::Le ? " <= " : c.rel == Rel::Eq ? " == " : " >= ");
        os << rat_str(c.rhs) << "\n";
    }
    return os.str();
}

Rat row_value(const Row& row, const std::vector<Rat>& z) {
    Rat v(0);
    for (const auto& t : row) v += t.coeff * z[t.var];
    return v;
}

bool satisfies(const Constraint& c, const std::vector<Rat>& z) {
    Rat v = row_value(c.row, z);
    switch (c.rel) {
        case Rel::Le: return v <= c.rhs;
        case Rel::Eq: return v == c.rhs;
        case Rel::Ge: return v >= c.rhs;
    }
    return false;
}

bool is_feasible_point(const LpProblem& lp, const std::vector<Rat>& z) {
    if (static_cast<int>(z.size()) != lp.num_vars()) return false;
    for (const auto& c : lp.constraints)
        if (!satisfies(c, z)) return false;
    return true;
}

namespace {

// ---------------------------------------------------------------------------
// Exact Gaussian elimination helpers over dense rational rows.
// ---------------------------------------------------------------------------

/// Incremental row space: accepts a row iff it increases the rank.
class RowSpace {
public:
    explicit RowSpace(int n) : n_(n) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    bool try_add(std::vector<Rat> row) {
        reduce(row);
        int lead = leading(row);
        if (lead < 0) return false;
        Rat inv = Rat(1) / row[lead];
        for (int j = lead; j < n_; ++j) row[j] *= inv;
        rows_.push_back(std::move(row));
        leads_.push_back(lead);
        return true;
    }

    /// A nonzero vector orthogonal to every accepted row, or nullopt when
    /// the rows span the full space. Deterministic: unit weight on the
    /// first non-pivot coordinate.
    std::optional<std::vector<Rat>> kernel_vector() const {
        if (rank() == n_) return std::nullopt;
        std::vector<char> is_lead(n_, 0);
        for (int l : leads_) is_lead[l] = 1;
        int free_col = -1;
        for (int j = 0; j < n_; ++j)
            if (!is_lead[j]) { free_col = j; break; }
        std::vector<Rat> d(n_, Rat(0));
        d[free_col] = Rat(1);
        // Back-substitute in reverse acceptance order so earlier pivots see
        // fully determined trailing coordinates.
        std::vector<size_t> order(rows_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return leads_[a] > leads_[b]; });
        for (size_t idx : order) {
            const auto& row = rows_[idx];
            int lead = leads_[idx];
            Rat acc(0);
            for (int j = lead + 1; j < n_; ++j)
                if (row[j] != 0) acc += row[j] * d[j];
            d[lead] = -acc;
        }
        return d;
    }

private:
    void reduce(std::vector<Rat>& row) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            int lead = leads_[i];
            if (row[lead] == 0) continue;
            Rat factor = row[lead];
            const auto& base = rows_[i];
            for (int j = lead; j < n_; ++j)
                if (base[j] != 0) row[j] -= factor * base[j];
        }
    }

    int leading(const std::vector<Rat>& row) const {
        for (int j = 0; j < n_; ++j)
            if (row[j] != 0) return j;
        return -1;
    }

    int n_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<int> leads_;
};

std::vector<Rat> dense_row(const Row& row, int n) {
    std::vector<Rat> d(n, Rat(0));
    for (const auto& t : row) d[t.var] = t.coeff;
    return d;
}

// ---------------------------------------------------------------------------
// Internal standard form: min c·u  s.t.  A u = b, u >= 0.
// Original variables are shifted/reflected/split so that every internal
// variable is nonnegative; singleton constraint rows are absorbed into the
// substitution. The tight-set certificate is recomputed afterwards against
// the caller's original rows, so this transformation never distorts the
// reported bookkeeping.
// ---------------------------------------------------------------------------

struct VarXform {
    // z = shift + sign1 * u[u1] + sign2 * u[u2]   (u2 < 0 when unused)
    Rat shift;
    int u1 = -1, u2 = -1;
    int sign1 = 1, sign2 = -1;
};

struct InternalRow {
    std::vector<Rat> coeffs;  // dense over internal u variables
    Rel rel = Rel::Le;
    Rat rhs;
};

struct Bounds {
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
};

class SimplexTableau {
public:
    // rows: equality system A u = b with b >= 0 (callers normalize).
    SimplexTableau(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                   std::vector<int> basis, int ncols)
        : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)), ncols_(ncols) {}

    int rows() const { return static_cast<int>(a_.size()); }
    int cols() const { return ncols_; }
    const std::vector<int>& basis() const { return basis_; }
    const Rat& rhs(int i) const { return b_[i]; }
    const Rat& at(int i, int j) const { return a_[i][j]; }

    /// Reduced costs for the given objective over current basis.
    void set_objective(const std::vector<Rat>& cost) {
        cost_ = cost;
        red_.assign(ncols_, Rat(0));
        obj_ = Rat(0);
        for (int j = 0; j < ncols_; ++j) red_[j] = cost_[j];
        for (int i = 0; i < rows(); ++i) {
            const Rat& cb = cost_[basis_[i]];
            if (cb == 0) continue;
            obj_ += cb * b_[i];
            for (int j = 0; j < ncols_; ++j)
                if (a_[i][j] != 0) red_[j] -= cb * a_[i][j];
        }
    }

    const Rat& objective() const { return obj_; }

    /// Bland's rule: entering = lowest-index column with negative reduced
    /// cost; leaving = lowest basic-variable index among min-ratio rows.
    /// Columns >= col_limit are excluded (used to freeze artificials out).
    /// Returns Optimal or Unbounded.
    LpStatus run(int col_limit) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < col_limit; ++j) {
                if (red_[j] < 0) { enter = j; break; }
            }
            if (enter < 0) return LpStatus::Optimal;
            int leave = -1;
            Rat best_ratio;
            for (int i = 0; i < rows(); ++i) {
                if (a_[i][enter] <= 0) continue;
                Rat ratio = b_[i] / a_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(int l, int e) {
        Rat p = a_[l][e];
        if (p == 0) throw InvariantViolation("zero pivot");
        if (p != 1) {
            Rat inv = Rat(1) / p;
            for (int j = 0; j < ncols_; ++j)
                if (a_[l][j] != 0) a_[l][j] *= inv;
            b_[l] *= inv;
        }
        for (int i = 0; i < rows(); ++i) {
            if (i == l) continue;
            const Rat f = a_[i][e];
            if (f == 0) continue;
            for (int j = 0; j < ncols_; ++j)
                if (a_[l][j] != 0) a_[i][j] -= f * a_[l][j];
            if (b_[l] != 0) b_[i] -= f * b_[l];
            a_[i][e] = Rat(0);  // keep exact zeros exact
        }
        {
            const Rat f = red_[e];
            if (f != 0) {
                for (int j = 0; j < ncols_; ++j)
                    if (a_[l][j] != 0) red_[j] -= f * a_[l][j];
                obj_ += f * b_[l];
                red_[e] = Rat(0);
            }
        }
        basis_[l] = e;
    }

    void drop_row(int i) {
        a_.erase(a_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
    }

    void truncate_cols(int new_cols) {
        ncols_ = new_cols;
        for (auto& row : a_) row.resize(new_cols);
        red_.resize(new_cols);
        cost_.resize(new_cols);
    }

    std::vector<Rat> extract_point(int nvars) const {
        std::vector<Rat> u(nvars, Rat(0));
        for (int i = 0; i < rows(); ++i)
            if (basis_[i] < nvars) u[basis_[i]] = b_[i];
        return u;
    }

private:
    std::vector<std::vector<Rat>> a_;
    std::vector<Rat> b_;
    std::vector<int> basis_;
    int ncols_;
    std::vector<Rat> cost_, red_;
    Rat obj_;
};

/// Moves an optimal point to an optimal vertex: while the tight rows do not
/// span the variable space, slide along a kernel direction (objective is
/// constant there by optimality) until a new independent row becomes tight.
void purify_to_vertex(const LpProblem& lp, std::vector<Rat>& z) {
    const int n = lp.num_vars();
    const int m = static_cast<int>(lp.constraints.size());
    for (int round = 0; round <= n; ++round) {
        std::vector<char> tight(m, 0);
        RowSpace space(n);
        int rank = 0;
        for (int i = 0; i < m; ++i) {
            const auto& c = lp.constraints[i];
            if (row_value(c.row, z) == c.rhs) {
                tight[i] = 1;
                if (space.try_add(dense_row(c.row, n))) ++rank;
            }
        }
        if (rank == n) return;
        auto dir = space.kernel_vector();
        if (!dir) throw InvariantViolation("rank bookkeeping out of sync");
        std::vector<Rat>& d = *dir;
        {
            Rat cd(0);
            for (int j = 0; j < n; ++j)
                if (lp.objective[j] != 0) cd += lp.objective[j] * d[j];
            if (cd != 0)
                throw InvariantViolation("kernel direction changes objective at an optimum");
        }
        auto max_step = [&](int sign) -> std::optional<Rat> {
            std::optional<Rat> best;
            for (int i = 0; i < m; ++i) {
                if (tight[i]) continue;
                const auto& c = lp.constraints[i];
                Rat rate(0);
                for (const auto& t : c.row) rate += t.coeff * d[t.var];
                if (sign < 0) rate = -rate;
                Rat slack = row_value(c.row, z) - c.rhs;  // sign depends on rel
                Rat limit;
                if (c.rel == Rel::Le) {
                    if (rate <= 0) continue;
                    limit = (-slack) / rate;
                } else if (c.rel == Rel::Ge) {
                    if (rate >= 0) continue;
                    limit = slack / (-rate);
                } else {
                    throw InvariantViolation("equality row not tight at feasible point");
                }
                if (!best || limit < *best) best = limit;
            }
            return best;
        };
        auto step = max_step(+1);
        int sign = +1;
        if (!step) {
            step = max_step(-1);
            sign = -1;
        }
        if (!step)
            throw InvariantViolation("feasible region has no extreme point along direction");
        if (*step < 0) throw InvariantViolation("negative purification step");
        for (int j = 0; j < n; ++j)
            if (d[j] != 0) z[j] += *step * Rat(sign) * d[j];
    }
    throw InvariantViolation("purification failed to reach a vertex");
}

/// Lowest-index maximal independent set of rows tight at z.
std::vector<int> pick_tight_basis(const LpProblem& lp, const std::vector<Rat>& z) {
    const int n = lp.num_vars();
    RowSpace space(n);
    std::vector<int> chosen;
    for (int i = 0; i < static_cast<int>(lp.constraints.size()) && space.rank() < n; ++i) {
        const auto& c = lp.constraints[i];
        if (row_value(c.row, z) != c.rhs) continue;
        if (space.try_add(dense_row(c.row, n))) chosen.push_back(i);
    }
    if (space.rank() != n)
        throw InvariantViolation("point is not a vertex: tight rows are rank deficient");
    return chosen;
}

}  // namespace

LpResult solve_extreme(const LpProblem& lp) {
    const int n = lp.num_vars();
    // Zero-variable and zero-coefficient rows reduce to plain truth checks.
    for (const auto& c : lp.constraints) {
        if (!c.row.empty()) continue;
        bool ok = c.rel == Rel::Le ? Rat(0) <= c.rhs
                : c.rel == Rel::Eq ? Rat(0) == c.rhs
                                   : Rat(0) >= c.rhs;
        if (!ok) return LpResult{LpStatus::Infeasible, {}};
    }
    if (n == 0) {
        BasicSolution sol;
        sol.objective_value = Rat(0);
        return LpResult{LpStatus::Optimal, std::move(sol)};
    }

    // Absorb singleton rows into variable bounds.
    std::vector<Bounds> bounds(n);
    auto tighten_lo = [&](int v, const Rat& val) {
        if (!bounds[v].has_lo || val > bounds[v].lo) { bounds[v].has_lo = true; bounds[v].lo = val; }
    };
    auto tighten_hi = [&](int v, const Rat& val) {
        if (!bounds[v].has_hi || val < bounds[v].hi) { bounds[v].has_hi = true; bounds[v].hi = val; }
    };
    for (const auto& c : lp.constraints) {
        if (c.row.size() != 1) continue;
        int v = c.row[0].var;
        const Rat& a = c.row[0].coeff;
        Rat val = c.rhs / a;
        bool lower = (c.rel == Rel::Ge && a > 0) || (c.rel == Rel::Le && a < 0);
        if (c.rel == Rel::Eq) {
            tighten_lo(v, val);
            tighten_hi(v, val);
        } else if (lower) {
            tighten_lo(v, val);
        } else {
            tighten_hi(v, val);
        }
    }
    for (int v = 0; v < n; ++v)
        if (bounds[v].has_lo && bounds[v].has_hi && bounds[v].lo > bounds[v].hi)
            return LpResult{LpStatus::Infeasible, {}};

    // Variable transforms to nonnegative internal variables.
    std::vector<VarXform> xf(n);
    int nu = 0;
    for (int v = 0; v < n; ++v) {
        auto& x = xf[v];
        if (bounds[v].has_lo) {
            x.shift = bounds[v].lo;
            x.u1 = nu++;
            x.sign1 = 1;
        } else if (bounds[v].has_hi) {
            x.shift = bounds[v].hi;
            x.u1 = nu++;
            x.sign1 = -1;
        } else {
            x.shift = Rat(0);
            x.u1 = nu++;
            x.u2 = nu++;
            x.sign1 = 1;
            x.sign2 = -1;
        }
    }

    std::vector<InternalRow> rows;
    // Residual upper-bound rows for doubly bounded variables.
    for (int v = 0; v < n; ++v) {
        if (!(bounds[v].has_lo && bounds[v].has_hi)) continue;
        InternalRow r;
        r.coeffs.assign(nu, Rat(0));
        r.coeffs[xf[v].u1] = Rat(1);
        r.rel = Rel::Le;
        r.rhs = bounds[v].hi - bounds[v].lo;
        rows.push_back(std::move(r));
    }
    // General rows, substituted.
    for (const auto& c : lp.constraints) {
        if (c.row.size() <= 1) continue;
        InternalRow r;
        r.coeffs.assign(nu, Rat(0));
        Rat shift_sum(0);
        for (const auto& t : c.row) {
            const auto& x = xf[t.var];
            shift_sum += t.coeff * x.shift;
            r.coeffs[x.u1] += t.coeff * Rat(x.sign1);
            if (x.u2 >= 0) r.coeffs[x.u2] += t.coeff * Rat(x.sign2);
        }
        r.rel = c.rel;
        r.rhs = c.rhs - shift_sum;
        rows.push_back(std::move(r));
    }

    // Standard form with slacks; normalize rhs >= 0; artificials as needed.
    const int mrows = static_cast<int>(rows.size());
    int nslack = 0;
    for (const auto& r : rows)
        if (r.rel != Rel::Eq) ++nslack;
    int total = nu + nslack;
    std::vector<std::vector<Rat>> a(mrows, std::vector<Rat>(total, Rat(0)));
    std::vector<Rat> b(mrows, Rat(0));
    std::vector<int> basis(mrows, -1);
    std::vector<int> needs_artificial;
    int slack_at = nu;
    for (int i = 0; i < mrows; ++i) {
        auto& r = rows[i];
        bool negate = r.rhs < 0;
        for (int j = 0; j < nu; ++j) a[i][j] = negate ? -r.coeffs[j] : r.coeffs[j];
        b[i] = negate ? -r.rhs : r.rhs;
        if (r.rel != Rel::Eq) {
            Rat coeff = (r.rel == Rel::Le) ? Rat(1) : Rat(-1);
            if (negate) coeff = -coeff;
            a[i][slack_at] = coeff;
            if (coeff == 1)
                basis[i] = slack_at;
            else
                needs_artificial.push_back(i);
            ++slack_at;
        } else {
            needs_artificial.push_back(i);
        }
    }
    int nart = static_cast<int>(needs_artificial.size());
    int full = total + nart;
    for (auto& row : a) row.resize(full, Rat(0));
    for (int t = 0; t < nart; ++t) {
        int i = needs_artificial[t];
        a[i][total + t] = Rat(1);
        basis[i] = total + t;
    }

    SimplexTableau tab(std::move(a), std::move(b), std::move(basis), full);

    if (nart > 0) {
        std::vector<Rat> phase1(full, Rat(0));
        for (int t = 0; t < nart; ++t) phase1[total + t] = Rat(1);
        tab.set_objective(phase1);
        LpStatus st = tab.run(full);
        if (st != LpStatus::Optimal)
            throw InvariantViolation("phase-1 objective is bounded by construction");
        if (tab.objective() != 0) return LpResult{LpStatus::Infeasible, {}};
        // Drive leftover artificials out of the basis; drop redundant rows.
        for (int i = tab.rows() - 1; i >= 0; --i) {
            if (tab.basis()[i] < total) continue;
            int enter = -1;
            for (int j = 0; j < total; ++j)
                if (tab.at(i, j) != 0) { enter = j; break; }
            if (enter >= 0)
                tab.pivot(i, enter);
            else
                tab.drop_row(i);
        }
        tab.truncate_cols(total);
    }

    std::vector<Rat> phase2(total, Rat(0));
    for (int v = 0; v < n; ++v) {
        const auto& x = xf[v];
        if (lp.objective[v] == 0) continue;
        phase2[x.u1] += lp.objective[v] * Rat(x.sign1);
        if (x.u2 >= 0) phase2[x.u2] += lp.objective[v] * Rat(x.sign2);
    }
    tab.set_objective(phase2);
    LpStatus st = tab.run(total);
    if (st == LpStatus::Unbounded) return LpResult{LpStatus::Unbounded, {}};

    std::vector<Rat> u = tab.extract_point(total);
    std::vector<Rat> z(n, Rat(0));
    for (int v = 0; v < n; ++v) {
        const auto& x = xf[v];
        z[v] = x.shift + Rat(x.sign1) * u[x.u1];
        if (x.u2 >= 0) z[v] += Rat(x.sign2) * u[x.u2];
    }
    if (!is_feasible_point(lp, z))
        throw InvariantViolation("simplex produced an infeasible point");

    purify_to_vertex(lp, z);

    BasicSolution sol;
    sol.tight_set = pick_tight_basis(lp, z);
    sol.objective_value = Rat(0);
    for (int j = 0; j < n; ++j)
        if (lp.objective[j] != 0) sol.objective_value += lp.objective[j] * z[j];
    sol.values = std::move(z);
    return LpResult{LpStatus::Optimal, std::move(sol)};
}

bool verify_extreme(const LpProblem& lp, const BasicSolution& sol) {
    const int n = lp.num_vars();
    if (static_cast<int>(sol.values.size()) != n) return false;
    if (!is_feasible_point(lp, sol.values)) return false;
    if (static_cast<int>(sol.tight_set.size()) != n) return false;
    RowSpace space(n);
    for (int idx : sol.tight_set) {
        if (idx < 0 || idx >= static_cast<int>(lp.constraints.size())) return false;
        const auto& c = lp.constraints[idx];
        if (row_value(c.row, sol.values) != c.rhs) return false;
        if (!space.try_add(dense_row(c.row, n))) return false;
    }
    Rat obj(0);
    for (int j = 0; j < n; ++j)
        if (lp.objective[j] != 0) obj += lp.objective[j] * sol.values[j];
    return obj == sol.objective_value;
}

std::optional<StopResult> line_stop_time(const std::vector<Rat>& from,
                                         const std::vector<Rat>& to,
                                         const std::vector<StopEvent>& events) {
    if (from.size() != to.size())
        throw InvariantViolation("segment endpoints have mismatched dimension");
    std::optional<Rat> best;
    for (const auto& ev : events) {
        // row·z(t) - rhs = alpha + t*beta
        Rat alpha = row_value(ev.row, from) - ev.rhs;
        Rat beta(0);
        for (const auto& t : ev.row) beta += t.coeff * (to[t.var] - from[t.var]);
        if (beta == 0) continue;            // constant in t: never triggers on (0,1]
        Rat t = -alpha / beta;
        if (t <= 0 || t > 1) continue;
        if (!best || t < *best) best = t;
    }
    if (!best) return std::nullopt;
    StopResult res;
    res.t = *best;
    std::vector<Rat> at(from.size());
    for (size_t j = 0; j < from.size(); ++j) at[j] = from[j] + res.t * (to[j] - from[j]);
    for (int i = 0; i < static_cast<int>(events.size()); ++i)
        if (row_value(events[i].row, at) == events[i].rhs) res.triggered.push_back(i);
    return res;
}

}  // namespace vchc
