#include "vchc/covering.hpp"

#include "vchc/assignment.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace vchc {

namespace {

bool in_set(const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

bool is_high(const RoundingState& st, int v) {
    return in_set(st.part.u_gt, v) || in_set(st.part.u_eq, v);
}

void load_solution(RoundingState& st, const BuiltLp& built, const BasicSolution& sol) {
    for (int v = 0; v < st.inst->num_vertices; ++v)
        if (built.x_var[v] >= 0) st.xstar[v] = sol.values[built.x_var[v]];
    for (const auto& [key, idx] : built.y_var) st.ystar[key] = sol.values[idx];
}

/// Coordinates of the path space: current x of the listed vertices plus
/// current y of the listed pairs, flattened into one vector for
/// line_stop_time.
struct PathSpace {
    std::vector<int> verts;                            // slot order
    std::vector<std::pair<int, int>> pairs;            // after the vertex slots
    std::map<int, int> vslot;
    std::map<std::pair<int, int>, int> yslot;

    static PathSpace over(const std::vector<int>& verts,
                          const std::vector<std::pair<int, int>>& pairs) {
        PathSpace ps;
        ps.verts = verts;
        ps.pairs = pairs;
        for (size_t i = 0; i < verts.size(); ++i) ps.vslot[verts[i]] = static_cast<int>(i);
        for (size_t i = 0; i < pairs.size(); ++i)
            ps.yslot[pairs[i]] = static_cast<int>(verts.size() + i);
        return ps;
    }

    int size() const { return static_cast<int>(verts.size() + pairs.size()); }

    std::vector<Rat> current(const RoundingState& st) const {
        std::vector<Rat> z(size());
        for (size_t i = 0; i < verts.size(); ++i) z[i] = st.xstar[verts[i]];
        for (size_t i = 0; i < pairs.size(); ++i)
            z[verts.size() + i] = st.ystar.at(pairs[i]);
        return z;
    }

    void write_back(RoundingState& st, const std::vector<Rat>& z) const {
        for (size_t i = 0; i < verts.size(); ++i) st.xstar[verts[i]] = z[i];
        for (size_t i = 0; i < pairs.size(); ++i)
            st.ystar[pairs[i]] = z[verts.size() + i];
    }
};

/// Capacity feasibility at the current point: low-value vertices against
/// k_w * x_w, high-value vertices against the tight-count-adjusted bound.
bool path_capacity_ok(const RoundingState& st) {
    const Instance& inst = *st.inst;
    auto delta = inst.incidence();
    for (int w : st.part.w) {
        Rat sum(0);
        for (int e : delta[w]) {
            auto it = st.ystar.find({e, w});
            if (it != st.ystar.end()) sum += it->second;
        }
        if (sum > Rat(inst.k[w]) * st.xstar[w]) return false;
    }
    for (int u : st.part.u_gt) {
        Rat sum(0);
        for (int e : delta[u]) {
            auto it = st.ystar.find({e, u});
            if (it != st.ystar.end()) sum += it->second;
        }
        if (sum > Rat(inst.k[u] - st.tight_count[u]) * st.xstar[u]) return false;
    }
    return true;
}

Rat low_side_cost(const RoundingState& st) {
    Rat c(0);
    for (int w : st.part.w) c += st.xstar[w];
    return c;
}

}  // namespace

std::vector<int> assign_edges(const CoveringState& st) {
    const int e_count = static_cast<int>(st.inst->edges.size());
    std::vector<int> owner(e_count, -1);
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        for (int v : st.live_undecided(e)) {
            if (is_high(st, v)) {
                owner[e] = v;  // live lists are ascending, first hit is smallest
                break;
            }
        }
        if (owner[e] < 0 && !st.live_undecided(e).empty())
            throw InvariantViolation("uncovered edge " + std::to_string(e) +
                                     " has no high-value endpoint");
    }
    return owner;
}

std::map<std::pair<int, int>, Rat> propagate_y(const CoveringState& st,
                                               const std::map<int, Rat>& x_new) {
    std::map<std::pair<int, int>, Rat> y_new;
    // Pass 1: rescale the low-value side.
    for (const auto& [key, y] : st.ystar) {
        auto [e, v] = key;
        if (in_set(st.part.w, v)) {
            if (st.xstar[v] == 0)
                throw InvariantViolation("live low-value pair with zero vertex value");
            y_new[key] = y / st.xstar[v] * x_new.at(v);
        } else {
            y_new[key] = y;  // carried over; owners adjusted in pass 2
        }
    }
    // Pass 2: owners absorb the per-edge difference.
    for (const auto& [key, y] : st.ystar) {
        auto [e, v] = key;
        if (!in_set(st.part.w, v)) continue;
        int u = st.owner[e];
        if (u < 0) throw InvariantViolation("live edge without owner during propagation");
        y_new[{e, u}] += y - y_new[key];
    }
    return y_new;
}

std::optional<std::vector<std::pair<int, int>>> certify_matching(
    const std::map<std::pair<int, int>, Rat>& coupling, const std::vector<int>& w_f,
    const std::vector<int>& u_side) {
    std::map<int, std::vector<int>> neighbors;  // w -> candidate u's, ascending
    for (int u : u_side)
        for (int w : w_f)
            if (auto it = coupling.find({u, w}); it != coupling.end() && it->second != 0)
                neighbors[w].push_back(u);
    std::map<int, int> matched_u;  // u -> w
    std::function<bool(int, std::set<int>&)> augment = [&](int w, std::set<int>& seen) {
        for (int u : neighbors[w]) {
            if (seen.count(u)) continue;
            seen.insert(u);
            auto it = matched_u.find(u);
            if (it == matched_u.end() || augment(it->second, seen)) {
                matched_u[u] = w;
                return true;
            }
        }
        return false;
    };
    for (int w : w_f) {
        std::set<int> seen;
        if (!augment(w, seen)) return std::nullopt;
    }
    std::vector<std::pair<int, int>> result;
    for (const auto& [u, w] : matched_u) result.emplace_back(u, w);
    return result;
}

// ---------------------------------------------------------------------------
// Covering-relaxation run (all ranks).
// ---------------------------------------------------------------------------

RoundResult round_lp3(const Instance& inst, const RoundOptions& opt) {
    inst.validate();
    RunTrace trace;
    trace.algorithm = "iter-lp3";
    trace.checks_enabled = opt.checks;
    const int n = inst.num_vertices;
    if (inst.edges.empty()) {
        trace.lp1_objective = Rat(0);
        return {std::vector<long long>(n, 0), trace};
    }
    if (!is_coverable(inst)) throw InfeasibleError("instance admits no cover");
    const int f = inst.rank();
    const Rat inv_f(1, f);

    auto fail = [&](const std::string& msg) {
        trace.check_failures.push_back(msg);
        throw InvariantViolation("structural check failed: " + msg);
    };

    CoveringState st = CoveringState::fresh(inst);
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
        for (int v = 0; v < n; ++v) {
            if (st.decided(v)) continue;
            if (seen_high[v] && st.xstar[v] < inv_f)
                fail("high-value vertex fell below the threshold");
            if (st.xstar[v] >= inv_f) seen_high[v] = 1;
        }
    };
    note_persistence();

    // Clear conditions that already hold at the current point, in the
    // fixed order: covers, then threshold fixes, then zero-coverage drops.
    auto settle_point = [&](TraceIteration& ti, Rat& decided_mass) {
        for (;;) {
            if (auto pair = find_tight_pair(st)) {
                if (st.tight_count[pair->second] >= inst.k[pair->second])
                    throw InvariantViolation("tight cover would exceed the owner's capacity");
                st.cover_edge(pair->first, pair->second);
                TraceEvent ev;
                ev.kind = "stop-a";
                ev.edge = pair->first;
                ev.vertex = pair->second;
                ev.has_t = true;
                ti.events.push_back(std::move(ev));
                continue;
            }
            if (!st.part.u_eq.empty()) {
                TraceEvent ev;
                ev.kind = "stop-b";
                ev.vertices = st.part.u_eq;
                ev.has_t = true;
                for (int u : st.part.u_eq) decided_mass += st.xstar[u];
                ti.events.push_back(std::move(ev));
                apply_ueq_fix(st);
                continue;
            }
            std::optional<std::pair<int, int>> drop;
            for (const auto& [key, y] : st.ystar) {
                if (y != 0) continue;
                if (!is_high(st, key.second)) continue;
                drop = key;
                break;
            }
            if (drop) {
                st.drop_endpoint(drop->first, drop->second);
                TraceEvent ev;
                ev.kind = "stop-c";
                ev.edge = drop->first;
                ev.vertex = drop->second;
                ev.has_t = true;
                ti.events.push_back(std::move(ev));
                continue;
            }
            break;
        }
    };

    Rat checkpoint = st.undecided_cost();
    const long long budget = 4LL * (n + static_cast<long long>(inst.edges.size())) + 16;
    bool done = false;
    for (long long iter = 0; !done; ++iter) {
        if (iter > budget) throw InvariantViolation("covering loop exceeded its budget");
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
        settle_point(ti, decided_mass);
        if (opt.checks && st.coverage_identity_violation() >= 0)
            fail("per-edge coverage identity broken after settling");

        st.owner = assign_edges(st);
        built = build_lp3(inst, st);
        if (opt.checks && !is_feasible_point(built.lp, built.restrict_point(st)))
            fail("current point infeasible for the covering relaxation");
        res = solve_extreme(built.lp);
        ++trace.solve_count;
        if (res.status != LpStatus::Optimal)
            throw InvariantViolation("covering relaxation unsolvable mid-run");
        if (opt.checks && !verify_extreme(built.lp, res.solution))
            fail("extreme-point certificate rejected");
        if (opt.checks && !(res.solution.objective_value <= checkpoint - decided_mass))
            fail("covering cost failed to shrink by the decided mass");

        // Target point: x from the solve, y redistributed around it.
        std::map<int, Rat> x_new;
        for (int v = 0; v < n; ++v)
            if (built.x_var[v] >= 0) x_new[v] = res.solution.values[built.x_var[v]];
        auto y_new = propagate_y(st, x_new);
        if (opt.checks) {
            for (size_t e = 0; e < inst.edges.size(); ++e) {
                if (st.edge_tight(static_cast<int>(e))) continue;
                Rat before(0), after(0);
                for (int v : st.live_undecided(static_cast<int>(e))) {
                    before += st.ystar.at({static_cast<int>(e), v});
                    after += y_new.at({static_cast<int>(e), v});
                }
                if (before != after) fail("coverage total drifted during redistribution");
            }
        }

        std::vector<int> path_verts;
        for (int v = 0; v < n; ++v)
            if (!st.decided(v)) path_verts.push_back(v);
        std::vector<std::pair<int, int>> path_pairs;
        for (const auto& [key, y] : st.ystar) path_pairs.push_back(key);
        PathSpace ps = PathSpace::over(path_verts, path_pairs);
        std::vector<Rat> from = ps.current(st);
        std::vector<Rat> to(ps.size());
        for (size_t i = 0; i < path_verts.size(); ++i) to[i] = x_new.at(path_verts[i]);
        for (size_t i = 0; i < path_pairs.size(); ++i)
            to[path_verts.size() + i] = y_new.at(path_pairs[i]);

        struct EventRef {
            char kind;  // 'a', 'b', 'c'
            int edge, vertex;
        };
        std::vector<StopEvent> events;
        std::vector<EventRef> refs;
        for (const auto& [key, y] : st.ystar) {
            auto [e, u] = key;
            if (!is_high(st, u)) continue;
            events.push_back(StopEvent{
                {Term{ps.yslot.at(key), Rat(1)}, Term{ps.vslot.at(u), Rat(-1)}}, Rat(0)});
            refs.push_back({'a', e, u});
        }
        for (int v : path_verts) {
            events.push_back(StopEvent{{Term{ps.vslot.at(v), Rat(1)}}, inv_f});
            refs.push_back({'b', -1, v});
        }
        for (const auto& [key, y] : st.ystar) {
            auto [e, u] = key;
            if (!is_high(st, u)) continue;
            events.push_back(StopEvent{{Term{ps.yslot.at(key), Rat(1)}}, Rat(0)});
            refs.push_back({'c', e, u});
        }
        if (opt.checks) {
            for (const auto& ev : events)
                if (row_value(ev.row, from) == ev.rhs)
                    fail("stop condition already holds before the move");
        }

        auto stop = line_stop_time(from, to, events);
        if (!stop) {
            ps.write_back(st, to);
            st.reclassify();
            note_persistence();
            if (opt.checks && !path_capacity_ok(st)) fail("capacity broken at the path end");
            TraceEvent ev;
            ev.kind = "full-move";
            ev.has_t = true;
            ev.t = Rat(1);
            ti.events.push_back(std::move(ev));
            trace.iterations.push_back(std::move(ti));
            done = true;
            break;
        }

        std::vector<Rat> at(ps.size());
        for (int i = 0; i < ps.size(); ++i) at[i] = from[i] + stop->t * (to[i] - from[i]);
        ps.write_back(st, at);
        st.reclassify();
        note_persistence();
        if (opt.checks && !path_capacity_ok(st)) fail("capacity broken at a stop point");

        // Apply every event triggered at this t, covers first, then
        // threshold fixes, then drops; each re-validated against the state.
        auto apply_ref = [&](const EventRef& ref) {
            if (ref.kind == 'a') {
                if (st.edge_tight(ref.edge) || st.decided(ref.vertex)) return;
                if (!st.ystar.count({ref.edge, ref.vertex})) return;
                if (st.ystar.at({ref.edge, ref.vertex}) != st.xstar[ref.vertex]) return;
                if (st.ystar.at({ref.edge, ref.vertex}) == 0) return;  // handled as a drop
                if (st.tight_count[ref.vertex] >= inst.k[ref.vertex])
                    throw InvariantViolation("tight cover would exceed the owner's capacity");
                st.cover_edge(ref.edge, ref.vertex);
                TraceEvent ev;
                ev.kind = "stop-a";
                ev.edge = ref.edge;
                ev.vertex = ref.vertex;
                ev.has_t = true;
                ev.t = stop->t;
                ti.events.push_back(std::move(ev));
            } else if (ref.kind == 'b') {
                if (st.decided(ref.vertex)) return;
                if (st.xstar[ref.vertex] != inv_f) return;
                decided_mass += st.xstar[ref.vertex];
                st.decide(ref.vertex, 1);
                TraceEvent ev;
                ev.kind = "stop-b";
                ev.vertices = {ref.vertex};
                ev.has_t = true;
                ev.t = stop->t;
                ti.events.push_back(std::move(ev));
            } else {
                if (st.edge_tight(ref.edge) || st.decided(ref.vertex)) return;
                auto it = st.ystar.find({ref.edge, ref.vertex});
                if (it == st.ystar.end() || it->second != 0) return;
                st.drop_endpoint(ref.edge, ref.vertex);
                TraceEvent ev;
                ev.kind = "stop-c";
                ev.edge = ref.edge;
                ev.vertex = ref.vertex;
                ev.has_t = true;
                ev.t = stop->t;
                ti.events.push_back(std::move(ev));
            }
        };
        for (char kind : {'a', 'b', 'c'})
            for (int idx : stop->triggered)
                if (refs[idx].kind == kind) apply_ref(refs[idx]);
        st.reclassify();
        if (opt.checks && st.coverage_identity_violation() >= 0)
            fail("per-edge coverage identity broken after stop events");

        ti.u_gt = static_cast<int>(st.part.u_gt.size());
        ti.u_eq = static_cast<int>(st.part.u_eq.size());
        ti.w = static_cast<int>(st.part.w.size());
        ti.z = static_cast<int>(st.part.z.size());
        ti.d = static_cast<int>(std::count(st.in_d.begin(), st.in_d.end(), 1));
        ti.covered_edges =
            static_cast<int>(std::count_if(st.tight_owner.begin(), st.tight_owner.end(),
                                           [](int o) { return o >= 0; }));
        trace.iterations.push_back(std::move(ti));

        if (opt.checks && !(st.undecided_cost() <= checkpoint - decided_mass))
            fail("undecided cost failed to shrink by the decided mass");
        checkpoint = st.undecided_cost();
    }

    std::vector<long long> x = st.bar_x;
    for (int v = 0; v < n; ++v) {
        if (st.decided(v)) continue;
        x[v] = rat_ceil(st.xstar[v]).convert_to<long long>();
    }
    trace.cost = 0;
    for (long long c : x) trace.cost += c;
    trace.terminal_w = static_cast<int>(st.part.w.size());
    for (int u : st.part.u_gt)
        if (st.xstar[u] == Rat(inst.m[u])) ++trace.terminal_u_at_cap;

    if (opt.checks) {
        if (!st.part.u_eq.empty()) fail("threshold class nonempty at termination");
        if (trace.terminal_w > trace.terminal_u_at_cap)
            fail("fractional class larger than capped class");
        // Certificate families of the last solve: threshold bounds must not
        // be tight (their events would have fired at the path end).
        for (int idx : res.solution.tight_set) {
            const LpLabel& lab = built.labels[idx];
            if (lab.kind == LabelKind::LowerOneOverF || lab.kind == LabelKind::UpperOneOverF)
                fail("threshold bound tight at termination");
        }
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

// ---------------------------------------------------------------------------
// Graph run (rank 2): frozen classes, threshold pre-rounding, coupled path.
// ---------------------------------------------------------------------------

RoundResult round_lp4(const Instance& inst, const RoundOptions& opt) {
    inst.validate();
    if (inst.rank() != 2)
        throw std::invalid_argument("graph covering run requires rank 2");
    RunTrace trace;
    trace.algorithm = "iter-lp4";
    trace.checks_enabled = opt.checks;
    const int n = inst.num_vertices;
    if (!is_coverable(inst)) throw InfeasibleError("instance admits no cover");

    auto fail = [&](const std::string& msg) {
        trace.check_failures.push_back(msg);
        throw InvariantViolation("structural check failed: " + msg);
    };

    CoveringState st = CoveringState::fresh(inst);
    BuiltLp built = build_lp1(inst);
    LpResult res = solve_extreme(built.lp);
    ++trace.solve_count;
    if (res.status != LpStatus::Optimal)
        throw InvariantViolation("full relaxation unsolvable on a coverable instance");
    if (opt.checks && !verify_extreme(built.lp, res.solution))
        fail("extreme-point certificate rejected");
    load_solution(st, built, res.solution);
    st.reclassify();  // frozen from here on
    trace.lp1_objective = res.solution.objective_value;

    std::vector<int> u_frozen;
    for (int u : st.part.u_gt) u_frozen.push_back(u);
    for (int u : st.part.u_eq) u_frozen.push_back(u);
    std::sort(u_frozen.begin(), u_frozen.end());
    std::vector<Rat> blow_num(n), blow_den(n);  // threshold y >= x/ceil(x), per u
    for (int u : u_frozen) {
        blow_num[u] = st.xstar[u];
        blow_den[u] = rat_ceil(st.xstar[u]);
    }

    // Threshold pre-round: cover (e,u) whenever y * ceil(x_u) >= x_u.
    auto preround = [&](TraceIteration& ti) {
        for (;;) {
            std::optional<std::pair<int, int>> hit;
            for (const auto& [key, y] : st.ystar) {
                auto [e, u] = key;
                if (!in_set(u_frozen, u)) continue;
                if (y * blow_den[u] >= blow_num[u]) { hit = key; break; }
            }
            if (!hit) break;
            st.cover_edge(hit->first, hit->second);
            TraceEvent ev;
            ev.kind = "pre-round";
            ev.edge = hit->first;
            ev.vertex = hit->second;
            ti.events.push_back(std::move(ev));
        }
    };

    // Scaled capacity along the path: covered edges each consume one unit
    // of the rounded-up capacity; live coverage blows up by ceil(x)/x.
    auto scaled_capacity_ok = [&]() {
        auto delta = inst.incidence();
        for (int u : u_frozen) {
            Rat live(0);
            for (int e : delta[u]) {
                auto it = st.ystar.find({e, u});
                if (it != st.ystar.end()) live += it->second;
            }
            // live * ceil/x + |T_u| <= k * ceil   (exact, cross-multiplied)
            if (live * blow_den[u] + Rat(st.tight_count[u]) * blow_num[u] >
                Rat(inst.k[u]) * blow_den[u] * blow_num[u])
                return false;
        }
        for (int w : st.part.w) {
            Rat sum(0);
            for (int e : delta[w]) {
                auto it = st.ystar.find({e, w});
                if (it != st.ystar.end()) sum += it->second;
            }
            if (sum > Rat(inst.k[w]) * st.xstar[w]) return false;
        }
        return true;
    };

    Rat low_checkpoint = low_side_cost(st);
    const long long budget = 4LL * (n + static_cast<long long>(inst.edges.size())) + 16;
    bool done = false;
    for (long long iter = 0; !done; ++iter) {
        if (iter > budget) throw InvariantViolation("graph covering loop exceeded its budget");
        TraceIteration ti;
        ti.objective = low_side_cost(st);

        preround(ti);
        if (opt.checks && st.coverage_identity_violation() >= 0)
            fail("per-edge coverage identity broken after pre-rounding");
        if (opt.checks && !scaled_capacity_ok()) fail("scaled capacity broken after pre-rounding");

        st.owner = assign_edges(st);
        built = build_lp4(inst, st);
        if (opt.checks && !is_feasible_point(built.lp, built.restrict_point(st)))
            fail("current point infeasible for the graph covering relaxation");
        res = solve_extreme(built.lp);
        ++trace.solve_count;
        if (res.status != LpStatus::Optimal)
            throw InvariantViolation("graph covering relaxation unsolvable mid-run");
        if (opt.checks && !verify_extreme(built.lp, res.solution))
            fail("extreme-point certificate rejected");
        if (opt.checks && !(res.solution.objective_value <= low_checkpoint))
            fail("low-side cost increased across a solve");

        std::map<int, Rat> x_new;
        for (int w : st.part.w) x_new[w] = res.solution.values[built.x_var[w]];
        auto y_new = propagate_y(st, x_new);

        std::vector<std::pair<int, int>> path_pairs;
        for (const auto& [key, y] : st.ystar) {
            auto [e, v] = key;
            // Only pairs of live mixed edges move; anything else is constant.
            int other = -1;
            for (int cand : st.live[e])
                if (cand != v) other = cand;
            bool mixed = (in_set(u_frozen, v) && other >= 0 && in_set(st.part.w, other)) ||
                         (in_set(st.part.w, v) && other >= 0 && in_set(u_frozen, other));
            if (mixed) path_pairs.push_back(key);
        }
        PathSpace ps = PathSpace::over(st.part.w, path_pairs);
        std::vector<Rat> from = ps.current(st);
        std::vector<Rat> to(ps.size());
        for (size_t i = 0; i < st.part.w.size(); ++i) to[i] = x_new.at(st.part.w[i]);
        for (size_t i = 0; i < path_pairs.size(); ++i)
            to[st.part.w.size() + i] = y_new.at(path_pairs[i]);

        std::vector<StopEvent> events;
        std::vector<std::pair<int, int>> refs;
        for (const auto& key : path_pairs) {
            auto [e, u] = key;
            if (!in_set(u_frozen, u)) continue;
            events.push_back(
                StopEvent{{Term{ps.yslot.at(key), blow_den[u]}}, blow_num[u]});
            refs.push_back(key);
        }
        if (opt.checks) {
            for (const auto& ev : events)
                if (row_value(ev.row, from) == ev.rhs)
                    fail("threshold condition already holds before the move");
        }

        auto stop = line_stop_time(from, to, events);
        if (!stop) {
            ps.write_back(st, to);
            if (opt.checks && !scaled_capacity_ok()) fail("scaled capacity broken at path end");
            TraceEvent ev;
            ev.kind = "full-move";
            ev.has_t = true;
            ev.t = Rat(1);
            ti.events.push_back(std::move(ev));
            trace.iterations.push_back(std::move(ti));
            done = true;
            break;
        }
        std::vector<Rat> at(ps.size());
        for (int i = 0; i < ps.size(); ++i) at[i] = from[i] + stop->t * (to[i] - from[i]);
        ps.write_back(st, at);
        if (opt.checks && !scaled_capacity_ok()) fail("scaled capacity broken at a stop point");
        for (int idx : stop->triggered) {
            auto [e, u] = refs[idx];
            if (st.edge_tight(e)) continue;
            if (st.ystar.at({e, u}) * blow_den[u] != blow_num[u]) continue;
            st.cover_edge(e, u);
            TraceEvent ev;
            ev.kind = "stop-a";
            ev.edge = e;
            ev.vertex = u;
            ev.has_t = true;
            ev.t = stop->t;
            ti.events.push_back(std::move(ev));
        }
        if (opt.checks && st.coverage_identity_violation() >= 0)
            fail("per-edge coverage identity broken after threshold covers");

        ti.u_gt = static_cast<int>(u_frozen.size());
        ti.w = static_cast<int>(st.part.w.size());
        ti.covered_edges =
            static_cast<int>(std::count_if(st.tight_owner.begin(), st.tight_owner.end(),
                                           [](int o) { return o >= 0; }));
        trace.iterations.push_back(std::move(ti));
        low_checkpoint = low_side_cost(st);
    }

    std::vector<long long> x(n, 0);
    for (int v = 0; v < n; ++v) x[v] = rat_ceil(st.xstar[v]).convert_to<long long>();
    trace.cost = 0;
    for (long long c : x) trace.cost += c;

    // Terminal matching over the fully fractional low-value vertices.
    std::vector<int> w_f;
    for (int w : st.part.w)
        if (st.xstar[w] > 0 && st.xstar[w] < 1) w_f.push_back(w);
    trace.terminal_w = static_cast<int>(w_f.size());
    st.owner = assign_edges(st);
    auto coupling = coupling_matrix(inst, st);
    auto matching = certify_matching(coupling, w_f, u_frozen);
    trace.terminal_u_at_cap = matching ? static_cast<int>(matching->size()) : -1;

    if (opt.checks) {
        if (!matching) fail("no saturating matching at termination");
        for (const auto& [u, w] : *matching) {
            // ceil(x_u) + 1 <= 2 (x_u + x_w), exactly.
            if (!(blow_den[u] + 1 <= Rat(2) * (st.xstar[u] + st.xstar[w])))
                fail("matched pair violates the rounding cost inequality");
        }
        if (!(Rat(trace.cost) <= Rat(2) * trace.lp1_objective))
            fail("output cost exceeds twice the relaxation optimum");
        auto recovered = recover_assignment(inst, x);
        if (!recovered) fail("integral assignment recovery failed");
        auto verdict = verify_cover(inst, *recovered);
        if (!verdict.ok) fail("recovered cover rejected: " + verdict.diagnostic);
    }
    return {std::move(x), trace};
}

}  // namespace vchc
