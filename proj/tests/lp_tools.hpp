#pragma once

// Test-only LP oracles, kept independent of the simplex implementation
// path: a brute-force vertex enumerator and an exact weak-duality
// certificate checker. Also the seeded random-LP generator used by the
// solver-equivalence suites.

#include "vchc/lp.hpp"

#include <optional>
#include <random>
#include <vector>

namespace vchc::testing {

/// Solve the square system formed by the given constraint rows (as
/// equalities). Returns nullopt when singular.
inline std::optional<std::vector<Rat>> solve_square(const LpProblem& lp,
                                                    const std::vector<int>& rows) {
    const int n = lp.num_vars();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (const auto& t : lp.constraints[rows[i]].row) a[i][t.var] = t.coeff;
        a[i][n] = lp.constraints[rows[i]].rhs;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[col], a[piv]);
        Rat inv = Rat(1) / a[col][col];
        for (int j = col; j <= n; ++j) a[col][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<Rat> z(n);
    for (int i = 0; i < n; ++i) z[i] = a[i][n];
    return z;
}

/// Brute-force optimum over polyhedron vertices: every n-subset of
/// constraints is intersected, feasible candidates are kept, the minimum
/// objective is returned. Exact for bounded feasible regions, where an
/// optimum is always attained at a vertex; nullopt means no feasible
/// vertex (infeasible, for the box-bounded problems generated below).
inline std::optional<Rat> enumerate_vertex_optimum(const LpProblem& lp) {
    const int n = lp.num_vars();
    const int m = static_cast<int>(lp.constraints.size());
    if (n == 0) {
        for (const auto& c : lp.constraints)
            if (!satisfies(c, {})) return std::nullopt;
        return Rat(0);
    }
    std::optional<Rat> best;
    std::vector<int> pick(n);
    auto consider = [&](const std::vector<int>& rows) {
        auto z = solve_square(lp, rows);
        if (!z || !is_feasible_point(lp, *z)) return;
        Rat obj(0);
        for (int j = 0; j < n; ++j)
            if (lp.objective[j] != 0) obj += lp.objective[j] * (*z)[j];
        if (!best || obj < *best) best = obj;
    };
    // Iterative combination enumeration.
    for (int i = 0; i < n; ++i) pick[i] = i;
    if (n > m) return std::nullopt;
    for (;;) {
        consider(pick);
        int i = n - 1;
        while (i >= 0 && pick[i] == m - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

/// Exact weak-duality check: multipliers (>= 0 on Ge rows, <= 0 on Le
/// rows, free on Eq rows) with A^T y == c certify min c·x >= y·b.
inline bool certifies_lower_bound(const LpProblem& lp, const std::vector<Rat>& mult,
                                  const Rat& bound) {
    if (mult.size() != lp.constraints.size()) return false;
    std::vector<Rat> combo(lp.num_vars(), Rat(0));
    Rat total(0);
    for (size_t i = 0; i < mult.size(); ++i) {
        const auto& c = lp.constraints[i];
        if (c.rel == Rel::Ge && mult[i] < 0) return false;
        if (c.rel == Rel::Le && mult[i] > 0) return false;
        for (const auto& t : c.row) combo[t.var] += mult[i] * t.coeff;
        total += mult[i] * c.rhs;
    }
    for (int j = 0; j < lp.num_vars(); ++j)
        if (combo[j] != lp.objective[j]) return false;
    return total == bound;
}

/// Seeded random LP with box constraints (so the feasible region, when
/// nonempty, is a polytope and vertex enumeration is a complete oracle).
inline LpProblem random_boxed_lp(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };
    LpProblem lp;
    int nv = 1 + draw(4);
    for (int j = 0; j < nv; ++j)
        lp.add_var("x" + std::to_string(j), Rat(draw(7) - 3));
    for (int j = 0; j < nv; ++j) {
        lp.add_constraint({Term{j, Rat(1)}}, Rel::Ge, Rat(-(1 + draw(3))));
        lp.add_constraint({Term{j, Rat(1)}}, Rel::Le, Rat(draw(4)));
    }
    int extra = std::min(12 - 2 * nv, 1 + draw(4));
    for (int r = 0; r < extra; ++r) {
        Row row;
        for (int j = 0; j < nv; ++j) {
            int coeff = draw(7) - 3;
            if (coeff != 0) row.push_back(Term{j, Rat(coeff)});
        }
        if (row.empty()) row.push_back(Term{draw(nv), Rat(1)});
        Rel rel = draw(4) == 0 ? Rel::Eq : (draw(2) ? Rel::Le : Rel::Ge);
        lp.add_constraint(std::move(row), rel, Rat(draw(9) - 4, 1 + draw(2)));
    }
    return lp;
}

}  // namespace vchc::testing
