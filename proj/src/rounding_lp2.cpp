#include "vchc/rounding_lp2.hpp"

#include "vchc/assignment.hpp"

#include <algorithm>
#include <set>

namespace vchc {

namespace {

bool in_set(const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

void load_solution(RoundingState& st, const BuiltLp& built, const BasicSolution& sol) {
    for (int v = 0; v < st.inst->num_vertices; ++v)
        if (built.x_var[v] >= 0) st.xstar[v] = sol.values[built.x_var[v]];
    for (const auto& [key, idx] : built.y_var) st.ystar[key] = sol.values[idx];
}

}  // namespace

std::optional<std::pair<int, int>> find_tight_pair(const RoundingState& st) {
    const int e_count = static_cast<int>(st.inst->edges.size());
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        for (int u : st.live_undecided(e)) {
            if (!in_set(st.part.u_gt, u) && !in_set(st.part.u_eq, u)) continue;
            auto it = st.ystar.find({e, u});
            if (it != st.ystar.end() && it->second == st.xstar[u]) return {{e, u}};
        }
    }
    return std::nullopt;
}

void apply_z_fix(RoundingState& st) {
    if (st.part.z.empty()) return;
    auto delta = st.inst->incidence();
    for (int v : st.part.z) {
        for (int e : delta[v]) {
            if (st.edge_tight(e)) continue;
            auto it = st.ystar.find({e, v});
            if (it != st.ystar.end() && it->second != 0)
                throw InvariantViolation("zero-value vertex carries nonzero coverage");
        }
        st.decide(v, 0);
    }
    st.reclassify();
}

bool apply_tight_edge(RoundingState& st) {
    auto pair = find_tight_pair(st);
    if (!pair) return false;
    if (st.tight_count[pair->second] >= st.inst->k[pair->second])
        throw InvariantViolation("tight cover would exceed the owner's capacity");
    st.cover_edge(pair->first, pair->second);
    return true;
}

void apply_ueq_fix(RoundingState& st) {
    if (st.part.u_eq.empty()) return;
    for (int u : st.part.u_eq) st.decide(u, 1);
    st.reclassify();
}

TerminalReport check_termination_invariants(const RoundingState& st, const BuiltLp& built,
                                            const BasicSolution& sol) {
    TerminalReport rep;
    const Instance& inst = *st.inst;
    const int e_count = static_cast<int>(inst.edges.size());
    const Rat inv_f(1, st.f);

    rep.w_size = static_cast<int>(st.part.w.size());
    for (int u : st.part.u_gt)
        if (st.xstar[u] == Rat(inst.m[u])) ++rep.u_at_cap;

    if (!st.part.u_eq.empty() || !st.part.z.empty())
        rep.failures.push_back("terminal check before threshold/zero classes emptied");

    // (a) residual coverage per uncovered edge.
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        auto carriers = st.live_undecided(e);
        Rat sum(0);
        for (int v : carriers) sum += st.ystar.at({e, v});
        if (sum < Rat(static_cast<int>(carriers.size()), st.f))
            rep.failures.push_back("edge " + std::to_string(e) +
                                   " keeps less than |carriers|/f coverage");
    }

    // (b) fractional support bounded by capped high-value vertices.
    if (rep.w_size > rep.u_at_cap)
        rep.failures.push_back("fractional class larger than capped class (" +
                               std::to_string(rep.w_size) + " > " +
                               std::to_string(rep.u_at_cap) + ")");

    // (c) tight-certificate family accounting on the last solve.
    std::set<int> wset(st.part.w.begin(), st.part.w.end());
    std::set<int> uset(st.part.u_gt.begin(), st.part.u_gt.end());
    long long w_family = 0;
    std::map<int, int> ynn_u_per_edge;
    for (int idx : sol.tight_set) {
        const LpLabel& lab = built.labels[idx];
        switch (lab.kind) {
            case LabelKind::LowerOneOverF:
                rep.failures.push_back("threshold lower bound tight at termination");
                break;
            case LabelKind::UpperOneOverF:
                rep.failures.push_back("threshold upper bound tight at termination");
                break;
            case LabelKind::Box:
                rep.failures.push_back("zero lower bound tight at termination");
                break;
            case LabelKind::YLeX:
                if (uset.count(lab.vertex))
                    rep.failures.push_back("uncovered tight pair left at termination");
                else
                    ++w_family;
                break;
            case LabelKind::Capacity:
                if (wset.count(lab.vertex)) ++w_family;
                break;
            case LabelKind::YNonneg:
                if (wset.count(lab.vertex))
                    ++w_family;
                else if (uset.count(lab.vertex))
                    ++ynn_u_per_edge[lab.edge];
                break;
            default:
                break;
        }
    }
    long long w_slots = 0;
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        for (int v : st.live_undecided(e))
            if (wset.count(v)) ++w_slots;
    }
    if (w_family > w_slots)
        rep.failures.push_back("low-value constraint family exceeds its slot count");
    for (const auto& [e, cnt] : ynn_u_per_edge) {
        int u_live = 0;
        for (int v : st.live_undecided(e))
            if (uset.count(v)) ++u_live;
        if (cnt > u_live - 1)
            rep.failures.push_back("edge " + std::to_string(e) +
                                   " has every high-value coverage pinned at zero");
    }
    return rep;
}

RoundResult round_lp2(const Instance& inst, const RoundOptions& opt) {
    inst.validate();
    RunTrace trace;
    trace.algorithm = "iter-lp2";
    trace.checks_enabled = opt.checks;
    const int n = inst.num_vertices;
    if (inst.edges.empty()) {
        trace.lp1_objective = Rat(0);
        return {std::vector<long long>(n, 0), trace};
    }
    if (!is_coverable(inst)) throw InfeasibleError("instance admits no cover");
    const int f = inst.rank();

    auto fail = [&](const std::string& msg) {
        trace.check_failures.push_back(msg);
        throw InvariantViolation("structural check failed: " + msg);
    };

    RoundingState st = RoundingState::fresh(inst);
    BuiltLp built = build_lp1(inst);
    LpResult res = solve_extreme(built.lp);
    ++trace.solve_count;
    if (res.status != LpStatus::Optimal)
        throw InvariantViolation("full relaxation unsolvable on a coverable instance");
    if (opt.checks && !verify_extreme(built.lp, res.solution))
        fail("extreme-point certificate rejected");
    load_solution(st, built, res.solution);
    st.reclassify();
    trace.lp1_objective = res.solution.objective_value;

    std::vector<char> seen_high(n, 0);
    auto note_persistence = [&]() {
        const Rat inv_f(1, f);
        for (int v = 0; v < n; ++v) {
            if (st.decided(v)) continue;
            if (seen_high[v] && st.xstar[v] < inv_f)
                fail("high-value vertex fell below the threshold");
            if (st.xstar[v] >= inv_f) seen_high[v] = 1;
        }
    };
    note_persistence();

    Rat prev_cost = res.solution.objective_value;
    const long long max_iters = 2LL * (n + static_cast<long long>(inst.edges.size())) + 4;
    for (long long iter = 0;; ++iter) {
        if (iter > max_iters) throw InvariantViolation("rounding loop exceeded its budget");
        TraceIteration ti;
        ti.objective = st.undecided_cost();

        Rat decided_mass(0);
        if (!st.part.z.empty()) {
            TraceEvent ev;
            ev.kind = "z-fix";
            ev.vertices = st.part.z;
            ti.events.push_back(std::move(ev));
            apply_z_fix(st);
        }
        if (auto pair = find_tight_pair(st)) {
            if (st.tight_count[pair->second] >= inst.k[pair->second])
                throw InvariantViolation("tight cover would exceed the owner's capacity");
            st.cover_edge(pair->first, pair->second);
            TraceEvent ev;
            ev.kind = "tight-edge";
            ev.edge = pair->first;
            ev.vertex = pair->second;
            ti.events.push_back(std::move(ev));
        }
        if (!st.part.u_eq.empty()) {
            TraceEvent ev;
            ev.kind = "ueq-fix";
            ev.vertices = st.part.u_eq;
            for (int u : st.part.u_eq) decided_mass += st.xstar[u];
            ti.events.push_back(std::move(ev));
            apply_ueq_fix(st);
        }
        if (opt.checks && st.coverage_identity_violation() >= 0)
            fail("per-edge coverage identity broken after fixes");

        built = build_lp2(inst, st);
        if (opt.checks && !is_feasible_point(built.lp, built.restrict_point(st)))
            fail("previous optimum infeasible for the rebuilt relaxation");
        res = solve_extreme(built.lp);
        ++trace.solve_count;
        if (res.status != LpStatus::Optimal)
            throw InvariantViolation("shrunken relaxation unsolvable mid-run");
        if (opt.checks && !verify_extreme(built.lp, res.solution))
            fail("extreme-point certificate rejected");
        if (opt.checks && !(res.solution.objective_value <= prev_cost - decided_mass))
            fail("relaxation cost failed to shrink by the decided mass");
        load_solution(st, built, res.solution);
        st.reclassify();
        note_persistence();
        if (opt.checks && st.coverage_identity_violation() >= 0)
            fail("per-edge coverage identity broken after re-solve");
        prev_cost = res.solution.objective_value;

        ti.u_gt = static_cast<int>(st.part.u_gt.size());
        ti.u_eq = static_cast<int>(st.part.u_eq.size());
        ti.w = static_cast<int>(st.part.w.size());
        ti.z = static_cast<int>(st.part.z.size());
        ti.d = static_cast<int>(std::count(st.in_d.begin(), st.in_d.end(), 1));
        ti.covered_edges =
            static_cast<int>(std::count_if(st.tight_owner.begin(), st.tight_owner.end(),
                                           [](int o) { return o >= 0; }));
        trace.iterations.push_back(std::move(ti));

        if (st.part.u_eq.empty() && st.part.z.empty() && !find_tight_pair(st)) break;
    }

    // Round the survivors up.
    std::vector<long long> x = st.bar_x;
    for (int v = 0; v < n; ++v) {
        if (st.decided(v)) continue;
        x[v] = rat_ceil(st.xstar[v]).convert_to<long long>();
    }
    trace.cost = 0;
    for (long long c : x) trace.cost += c;

    TerminalReport rep = check_termination_invariants(st, built, res.solution);
    trace.terminal_w = rep.w_size;
    trace.terminal_u_at_cap = rep.u_at_cap;
    if (opt.checks) {
        for (const auto& f_msg : rep.failures) fail(f_msg);
        // Cost of the final round-up against the last relaxation cost.
        Rat roundup_cost(0);
        for (int v = 0; v < n; ++v)
            if (!st.decided(v)) roundup_cost += rat_ceil(st.xstar[v]);
        if (f >= 2 && !(roundup_cost <= Rat(f) * prev_cost))
            fail("final round-up exceeds f times the last relaxation cost");
        // Approximation bound against the initial relaxation.
        if (f >= 2 && !(Rat(trace.cost) <= Rat(f) * trace.lp1_objective))
            fail("output cost exceeds f times the relaxation optimum");
        for (int v = 0; v < n; ++v)
            if (seen_high[v] && x[v] < 1) fail("persistent vertex rounded to zero");
        auto recovered = recover_assignment(inst, x);
        if (!recovered) fail("integral assignment recovery failed");
        auto verdict = verify_cover(inst, *recovered);
        if (!verdict.ok) fail("recovered cover rejected: " + verdict.diagnostic);
    }
    return {std::move(x), trace};
}

}  // namespace vchc
