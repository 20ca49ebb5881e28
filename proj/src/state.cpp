#include "vchc/state.hpp"

#include <algorithm>

namespace vchc {

Partition classify(const std::map<int, Rat>& xstar, int f) {
    if (f < 1) throw InvariantViolation("classification requires rank >= 1");
    const Rat threshold(1, f);
    Partition part;
    for (const auto& [v, x] : xstar) {
        if (x < 0) throw InvariantViolation("negative x* value");
        if (x == 0)
            part.z.push_back(v);
        else if (x < threshold)
            part.w.push_back(v);
        else if (x == threshold)
            part.u_eq.push_back(v);
        else
            part.u_gt.push_back(v);
    }
    return part;
}

RoundingState RoundingState::fresh(const Instance& inst) {
    RoundingState st;
    st.inst = &inst;
    st.f = inst.rank();
    st.xstar.assign(inst.num_vertices, Rat(0));
    st.in_d.assign(inst.num_vertices, 0);
    st.bar_x.assign(inst.num_vertices, 0);
    st.tight_owner.assign(inst.edges.size(), -1);
    st.tight_count.assign(inst.num_vertices, 0);
    st.live.resize(inst.edges.size());
    for (size_t e = 0; e < inst.edges.size(); ++e)
        st.live[e] = inst.sorted_edge(static_cast<int>(e));
    return st;
}

CoveringState CoveringState::fresh(const Instance& inst) {
    CoveringState st;
    static_cast<RoundingState&>(st) = RoundingState::fresh(inst);
    st.owner.assign(inst.edges.size(), -1);
    return st;
}

std::vector<int> RoundingState::live_undecided(int e) const {
    std::vector<int> out;
    for (int v : live[e])
        if (!decided(v)) out.push_back(v);
    return out;
}

Rat RoundingState::residual(int e) const {
    Rat r(1);
    for (int v : inst->sorted_edge(e)) {
        auto it = bar_y.find({e, v});
        if (it != bar_y.end()) r -= it->second;
    }
    return r;
}

Rat RoundingState::frozen_y(int e, int v) const {
    auto it = bar_y.find({e, v});
    return it == bar_y.end() ? Rat(0) : it->second;
}

std::map<int, Rat> RoundingState::undecided_x() const {
    std::map<int, Rat> out;
    for (int v = 0; v < inst->num_vertices; ++v)
        if (!decided(v)) out.emplace(v, xstar[v]);
    return out;
}

void RoundingState::reclassify() { part = classify(undecided_x(), f); }

Rat RoundingState::undecided_cost() const {
    Rat c(0);
    for (int v = 0; v < inst->num_vertices; ++v)
        if (!decided(v)) c += xstar[v];
    return c;
}

void RoundingState::decide(int v, long long value) {
    if (decided(v)) throw InvariantViolation("vertex decided twice");
    auto delta = inst->incidence();
    for (int e : delta[v]) {
        if (edge_tight(e)) continue;
        auto it = ystar.find({e, v});
        if (it == ystar.end()) continue;  // endpoint was dropped earlier
        bar_y[{e, v}] = it->second;
        ystar.erase(it);
    }
    in_d[v] = 1;
    bar_x[v] = value;
}

void RoundingState::cover_edge(int e, int u) {
    if (edge_tight(e)) throw InvariantViolation("edge covered twice");
    if (decided(u)) throw InvariantViolation("cover by a decided vertex");
    // Capacity justification differs per run (k_u for the relaxation
    // paths, k_u * ceil(x_u) for the graph path); callers enforce it.
    for (int v : inst->sorted_edge(e)) {
        bar_y[{e, v}] = (v == u) ? Rat(1) : Rat(0);
        ystar.erase({e, v});
    }
    tight_owner[e] = u;
    ++tight_count[u];
}

void RoundingState::drop_endpoint(int e, int u) {
    if (edge_tight(e)) throw InvariantViolation("drop from a covered edge");
    auto& ends = live[e];
    auto it = std::find(ends.begin(), ends.end(), u);
    if (it == ends.end()) throw InvariantViolation("drop of a non-live endpoint");
    ends.erase(it);
    bar_y[{e, u}] = Rat(0);
    ystar.erase({e, u});
}

int RoundingState::coverage_identity_violation() const {
    for (size_t e = 0; e < inst->edges.size(); ++e) {
        if (edge_tight(static_cast<int>(e))) continue;
        Rat sum(0);
        for (int v : live_undecided(static_cast<int>(e))) {
            auto it = ystar.find({static_cast<int>(e), v});
            if (it == ystar.end())
                throw InvariantViolation("live pair without a y value");
            sum += it->second;
        }
        if (sum != residual(static_cast<int>(e))) return static_cast<int>(e);
    }
    return -1;
}

}  // namespace vchc
