#include "vchc/relaxations.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vchc {

namespace {

std::string yname(int e, int v) {
    return "y(" + std::to_string(e) + "," + std::to_string(v) + ")";
}

std::string xname(int v) { return "x" + std::to_string(v); }

}  // namespace

std::vector<Rat> BuiltLp::restrict_point(const RoundingState& st) const {
    std::vector<Rat> z(lp.num_vars(), Rat(0));
    for (int v = 0; v < static_cast<int>(x_var.size()); ++v)
        if (x_var[v] >= 0) z[x_var[v]] = st.xstar[v];
    for (const auto& [key, idx] : y_var) {
        auto it = st.ystar.find(key);
        if (it == st.ystar.end())
            throw InvariantViolation("restriction misses a live pair value");
        z[idx] = it->second;
    }
    return z;
}

BuiltLp build_lp1(const Instance& inst) {
    BuiltLp built;
    auto& lp = built.lp;
    const int n = inst.num_vertices;
    built.x_var.assign(n, -1);
    for (int v = 0; v < n; ++v)
        built.x_var[v] = lp.add_var(xname(v), Rat(1));
    const int e_count = static_cast<int>(inst.edges.size());
    for (int e = 0; e < e_count; ++e)
        for (int v : inst.sorted_edge(e))
            built.y_var[{e, v}] = lp.add_var(yname(e, v), Rat(0));

    auto add = [&](Row row, Rel rel, Rat rhs, LpLabel label) {
        lp.add_constraint(std::move(row), rel, std::move(rhs));
        built.labels.push_back(label);
    };

    for (int e = 0; e < e_count; ++e) {
        Row row;
        for (int v : inst.sorted_edge(e)) row.push_back({built.y_var[{e, v}], Rat(1)});
        add(std::move(row), Rel::Eq, Rat(1), {LabelKind::EdgeCover, e, -1});
    }
    for (int e = 0; e < e_count; ++e)
        for (int v : inst.sorted_edge(e))
            add({{built.y_var[{e, v}], Rat(1)}, {built.x_var[v], Rat(-1)}}, Rel::Le, Rat(0),
                {LabelKind::YLeX, e, v});
    auto delta = inst.incidence();
    for (int v = 0; v < n; ++v) {
        Row row;
        for (int e : delta[v]) row.push_back({built.y_var[{e, v}], Rat(1)});
        row.push_back({built.x_var[v], Rat(-inst.k[v])});
        add(std::move(row), Rel::Le, Rat(0), {LabelKind::Capacity, -1, v});
    }
    for (int v = 0; v < n; ++v)
        add({{built.x_var[v], Rat(1)}}, Rel::Le, Rat(inst.m[v]),
            {LabelKind::MultUpper, -1, v});
    for (int v = 0; v < n; ++v)
        add({{built.x_var[v], Rat(1)}}, Rel::Ge, Rat(0), {LabelKind::Box, -1, v});
    for (int e = 0; e < e_count; ++e)
        for (int v : inst.sorted_edge(e))
            add({{built.y_var[{e, v}], Rat(1)}}, Rel::Ge, Rat(0), {LabelKind::YNonneg, e, v});
    return built;
}

BuiltLp build_lp2(const Instance& inst, const RoundingState& st) {
    BuiltLp built;
    auto& lp = built.lp;
    const int n = inst.num_vertices;
    const int e_count = static_cast<int>(inst.edges.size());
    const Rat inv_f(1, st.f);

    if (!st.part.u_eq.empty() || !st.part.z.empty())
        throw InvariantViolation("relaxation rebuilt before fixing threshold/zero vertices");

    built.x_var.assign(n, -1);
    for (int v = 0; v < n; ++v)
        if (!st.decided(v)) built.x_var[v] = lp.add_var(xname(v), Rat(1));
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        for (int v : st.live_undecided(e))
            built.y_var[{e, v}] = lp.add_var(yname(e, v), Rat(0));
    }

    auto add = [&](Row row, Rel rel, Rat rhs, LpLabel label) {
        lp.add_constraint(std::move(row), rel, std::move(rhs));
        built.labels.push_back(label);
    };

    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        auto carriers = st.live_undecided(e);
        Rat rhs = st.residual(e);
        if (carriers.empty()) {
            if (rhs != 0)
                throw InvariantViolation("fully decided edge with unmet coverage");
            continue;
        }
        Row row;
        for (int v : carriers) row.push_back({built.y_var[{e, v}], Rat(1)});
        add(std::move(row), Rel::Eq, std::move(rhs), {LabelKind::EdgeCover, e, -1});
    }
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        for (int v : st.live_undecided(e))
            add({{built.y_var[{e, v}], Rat(1)}, {built.x_var[v], Rat(-1)}}, Rel::Le, Rat(0),
                {LabelKind::YLeX, e, v});
    }
    auto delta = inst.incidence();
    for (int u : st.part.u_gt) {
        Row row;
        for (int e : delta[u]) {
            auto it = built.y_var.find({e, u});
            if (it != built.y_var.end()) row.push_back({it->second, Rat(1)});
        }
        row.push_back({built.x_var[u], Rat(-(inst.k[u] - st.tight_count[u]))});
        add(std::move(row), Rel::Le, Rat(0), {LabelKind::Capacity, -1, u});
    }
    for (int w : st.part.w) {
        if (st.tight_count[w] != 0)
            throw InvariantViolation("low-value vertex owns covered edges");
        Row row;
        for (int e : delta[w]) {
            auto it = built.y_var.find({e, w});
            if (it != built.y_var.end()) row.push_back({it->second, Rat(1)});
        }
        row.push_back({built.x_var[w], Rat(-inst.k[w])});
        add(std::move(row), Rel::Le, Rat(0), {LabelKind::Capacity, -1, w});
    }
    for (int u : st.part.u_gt)
        add({{built.x_var[u], Rat(1)}}, Rel::Ge, inv_f, {LabelKind::LowerOneOverF, -1, u});
    for (int u : st.part.u_gt)
        add({{built.x_var[u], Rat(1)}}, Rel::Le, Rat(inst.m[u]), {LabelKind::MultUpper, -1, u});
    for (int w : st.part.w)
        add({{built.x_var[w], Rat(1)}}, Rel::Ge, Rat(0), {LabelKind::Box, -1, w});
    // Redundant given the classification, but kept so the tight-row
    // accounting matches the constraint families one-for-one.
    for (int w : st.part.w)
        add({{built.x_var[w], Rat(1)}}, Rel::Le, inv_f, {LabelKind::UpperOneOverF, -1, w});
    for (const auto& [key, idx] : built.y_var)
        add({{idx, Rat(1)}}, Rel::Ge, Rat(0), {LabelKind::YNonneg, key.first, key.second});
    return built;
}

std::map<std::pair<int, int>, Rat> coupling_matrix(const Instance& inst,
                                                   const CoveringState& st) {
    std::map<std::pair<int, int>, Rat> m;
    const int e_count = static_cast<int>(inst.edges.size());
    std::set<int> wset(st.part.w.begin(), st.part.w.end());
    for (int e = 0; e < e_count; ++e) {
        if (st.edge_tight(e)) continue;
        int u = st.owner[e];
        if (u < 0) throw InvariantViolation("uncovered edge without an owner");
        for (int w : st.live_undecided(e)) {
            if (!wset.count(w)) continue;
            if (st.xstar[w] == 0)
                throw InvariantViolation("coupling ratio over a zero-value vertex");
            auto it = st.ystar.find({e, w});
            if (it == st.ystar.end()) throw InvariantViolation("live pair missing y value");
            m[{u, w}] += it->second / st.xstar[w];
        }
    }
    return m;
}

BuiltLp build_lp3(const Instance& inst, const CoveringState& st) {
    BuiltLp built;
    auto& lp = built.lp;
    const int n = inst.num_vertices;
    const Rat inv_f(1, st.f);
    if (!st.part.u_eq.empty() || !st.part.z.empty())
        throw InvariantViolation("covering relaxation built before fixing threshold/zero vertices");

    built.x_var.assign(n, -1);
    for (int v = 0; v < n; ++v)
        if (!st.decided(v)) built.x_var[v] = lp.add_var(xname(v), Rat(1));

    auto add = [&](Row row, Rel rel, Rat rhs, LpLabel label) {
        lp.add_constraint(std::move(row), rel, std::move(rhs));
        built.labels.push_back(label);
    };

    auto coupling = coupling_matrix(inst, st);
    auto delta = inst.incidence();
    for (int u : st.part.u_gt) {
        Row row;
        Rat rhs(0);
        for (int w : st.part.w) {
            auto it = coupling.find({u, w});
            if (it == coupling.end()) continue;
            row.push_back({built.x_var[w], it->second});
            rhs += it->second * st.xstar[w];
        }
        for (int e : delta[u]) {
            if (st.edge_tight(e)) continue;
            auto it = st.ystar.find({e, u});
            if (it != st.ystar.end()) rhs += it->second;
        }
        row.push_back({built.x_var[u], Rat(inst.k[u] - st.tight_count[u])});
        add(std::move(row), Rel::Ge, std::move(rhs), {LabelKind::CoveringRow, -1, u});
    }
    for (int u : st.part.u_gt)
        add({{built.x_var[u], Rat(1)}}, Rel::Ge, inv_f, {LabelKind::LowerOneOverF, -1, u});
    for (int u : st.part.u_gt)
        add({{built.x_var[u], Rat(1)}}, Rel::Le, Rat(inst.m[u]), {LabelKind::MultUpper, -1, u});
    for (int w : st.part.w)
        add({{built.x_var[w], Rat(1)}}, Rel::Ge, Rat(0), {LabelKind::Box, -1, w});
    for (int w : st.part.w)
        add({{built.x_var[w], Rat(1)}}, Rel::Le, inv_f, {LabelKind::UpperOneOverF, -1, w});
    return built;
}

BuiltLp build_lp4(const Instance& inst, const CoveringState& st) {
    if (inst.rank() != 2)
        throw std::invalid_argument("graph covering relaxation requires rank 2");
    BuiltLp built;
    auto& lp = built.lp;
    built.x_var.assign(inst.num_vertices, -1);
    for (int w : st.part.w)
        built.x_var[w] = lp.add_var(xname(w), Rat(1));

    auto add = [&](Row row, Rel rel, Rat rhs, LpLabel label) {
        lp.add_constraint(std::move(row), rel, std::move(rhs));
        built.labels.push_back(label);
    };

    auto coupling = coupling_matrix(inst, st);
    std::vector<int> u_all;
    u_all.reserve(st.part.u_gt.size() + st.part.u_eq.size());
    for (int u : st.part.u_gt) u_all.push_back(u);
    for (int u : st.part.u_eq) u_all.push_back(u);
    std::sort(u_all.begin(), u_all.end());
    for (int u : u_all) {
        Row row;
        Rat rhs(0);
        for (int w : st.part.w) {
            auto it = coupling.find({u, w});
            if (it == coupling.end()) continue;
            row.push_back({built.x_var[w], it->second});
            rhs += it->second * st.xstar[w];
        }
        add(std::move(row), Rel::Ge, std::move(rhs), {LabelKind::CoveringRow, -1, u});
    }
    for (int w : st.part.w)
        add({{built.x_var[w], Rat(1)}}, Rel::Ge, Rat(0), {LabelKind::Box, -1, w});
    for (int w : st.part.w)
        add({{built.x_var[w], Rat(1)}}, Rel::Le, Rat(1), {LabelKind::Box, -1, w});
    return built;
}

std::string label_str(const LpLabel& label) {
    std::ostringstream os;
    switch (label.kind) {
        case LabelKind::EdgeCover: os << "edge-cover"; break;
        case LabelKind::YLeX: os << "y-le-x"; break;
        case LabelKind::Capacity: os << "capacity"; break;
        case LabelKind::MultUpper: os << "mult-upper"; break;
        case LabelKind::LowerOneOverF: os << "lower-1-over-f"; break;
        case LabelKind::UpperOneOverF: os << "upper-1-over-f"; break;
        case LabelKind::YNonneg: os << "y-nonneg"; break;
        case LabelKind::CoveringRow: os << "covering-row"; break;
        case LabelKind::Box: os << "box"; break;
    }
    if (label.edge >= 0) os << " e" << label.edge;
    if (label.vertex >= 0) os << " v" << label.vertex;
    return os.str();
}

std::string dump_lp(const BuiltLp& built) {
    std::ostringstream os;
    os << built.lp.dump();
    for (size_t i = 0; i < built.labels.size(); ++i)
        os << "[" << i << "] " << label_str(built.labels[i]) << "\n";
    return os.str();
}

}  // namespace vchc
