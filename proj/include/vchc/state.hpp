#pragma once

#include "vchc/instance.hpp"
#include "vchc/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace vchc {

/// Exact split of undecided vertices at the 1/f threshold.
struct Partition {
    std::vector<int> u_gt;  // x* >  1/f
    std::vector<int> u_eq;  // x* == 1/f
    std::vector<int> w;     // 0 < x* < 1/f
    std::vector<int> z;     // x* == 0
};

Partition classify(const std::map<int, Rat>& xstar, int f);

/// Bookkeeping shared by the iterative-rounding runs: the current
/// fractional point, permanently covered edges with their owners, decided
/// vertices with their frozen copy counts, and the frozen per-pair
/// coverage values.
///
/// `live[e]` holds the working endpoint list of edge e; the graph-path
/// run shrinks it when an endpoint's coverage hits zero. A pair (e, v)
/// carries a y variable iff e is uncovered, v is in live[e] and v is
/// undecided.
struct RoundingState {
    const Instance* inst = nullptr;
    int f = 0;
    std::vector<Rat> xstar;                      // meaningful for undecided vertices
    std::map<std::pair<int, int>, Rat> ystar;    // live (edge, vertex) pairs
    std::vector<char> in_d;
    std::vector<long long> bar_x;
    std::map<std::pair<int, int>, Rat> bar_y;    // frozen coverage values
    std::vector<int> tight_owner;                // per edge; -1 while uncovered
    std::vector<long long> tight_count;          // per vertex |T_v|
    std::vector<std::vector<int>> live;          // working endpoints, ascending
    Partition part;

    static RoundingState fresh(const Instance& inst);

    bool edge_tight(int e) const { return tight_owner[e] >= 0; }
    bool decided(int v) const { return in_d[v] != 0; }

    /// Endpoints of e still carrying y variables.
    std::vector<int> live_undecided(int e) const;

    /// Residual coverage requirement of an uncovered edge:
    /// 1 minus the frozen coverage already recorded on it.
    Rat residual(int e) const;

    /// Frozen coverage recorded for (e, v); zero when none.
    Rat frozen_y(int e, int v) const;

    std::map<int, Rat> undecided_x() const;
    void reclassify();

    /// Sum of x* over undecided vertices (the current relaxation cost).
    Rat undecided_cost() const;

    // Mutations. Each maintains the per-edge coverage identity.
    void decide(int v, long long value);     // freezes y at current values
    void cover_edge(int e, int u);           // owner pays one capacity unit
    void drop_endpoint(int e, int u);        // zero-coverage endpoint removal

    /// Exact check: for every uncovered edge, live y values sum to the
    /// residual requirement. Returns the first offending edge or -1.
    int coverage_identity_violation() const;
};

/// State for the covering-relaxation runs: adds the edge-ownership
/// assignment (each uncovered edge is owned by one of its undecided
/// high-value endpoints).
struct CoveringState : RoundingState {
    std::vector<int> owner;  // per edge; -1 for covered/unassigned

    static CoveringState fresh(const Instance& inst);
};

}  // namespace vchc
