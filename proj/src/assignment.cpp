#include "vchc/assignment.hpp"

#include <algorithm>
#include <queue>

namespace vchc {

void FlowNetwork::add_arc(int from, int to, long long cap) {
    adj_[from].push_back(Arc{to, cap, static_cast<int>(adj_[to].size())});
    adj_[to].push_back(Arc{from, 0, static_cast<int>(adj_[from].size()) - 1});
}

long long FlowNetwork::max_flow(int source, int sink) {
    constexpr long long kInf = 1LL << 62;
    long long total = 0;
    for (;;) {
        level_.assign(num_nodes(), -1);
        std::queue<int> q;
        level_[source] = 0;
        q.push(source);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Arc& a : adj_[v]) {
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[v] + 1;
                    q.push(a.to);
                }
            }
        }
        if (level_[sink] < 0) break;
        iter_.assign(num_nodes(), 0);
        while (long long f = dfs(source, sink, kInf)) total += f;
    }
    return total;
}

long long FlowNetwork::dfs(int v, int sink, long long limit) {
    if (v == sink) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
        Arc& a = adj_[v][i];
        if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
        long long got = dfs(a.to, sink, std::min(limit, a.cap));
        if (got > 0) {
            a.cap -= got;
            adj_[a.to][a.rev].cap += got;
            return got;
        }
    }
    return 0;
}

FlowNetwork build_assignment_network(const Instance& inst, const std::vector<long long>& x) {
    const int e_count = static_cast<int>(inst.edges.size());
    const int n = inst.num_vertices;
    FlowNetwork net(e_count + n + 2);
    const int sink = e_count + n + 1;
    for (int e = 0; e < e_count; ++e) {
        net.add_arc(0, 1 + e, 1);
        for (int v : inst.sorted_edge(e)) net.add_arc(1 + e, 1 + e_count + v, 1);
    }
    for (int v = 0; v < n; ++v) {
        // Capacity above |E| never helps; clamping also avoids overflow.
        long long cap = 0;
        if (x[v] > 0 && inst.k[v] > 0) {
            if (x[v] >= e_count || inst.k[v] >= e_count || x[v] * inst.k[v] >= e_count)
                cap = e_count;
            else
                cap = x[v] * inst.k[v];
        }
        net.add_arc(1 + e_count + v, sink, cap);
    }
    return net;
}

std::optional<CoverSolution> recover_assignment(const Instance& inst,
                                                const std::vector<long long>& x) {
    if (static_cast<int>(x.size()) != inst.num_vertices)
        throw std::invalid_argument("copy vector length mismatch");
    for (int v = 0; v < inst.num_vertices; ++v)
        if (x[v] < 0 || x[v] > inst.m[v])
            throw std::invalid_argument("copy count outside [0, m_v]");
    const int e_count = static_cast<int>(inst.edges.size());
    FlowNetwork net = build_assignment_network(inst, x);
    long long value = net.max_flow(0, e_count + inst.num_vertices + 1);
    if (value != e_count) return std::nullopt;
    CoverSolution sol;
    sol.x = x;
    sol.y.reserve(e_count);
    for (int e = 0; e < e_count; ++e) {
        int chosen = -1;
        for (const auto& arc : net.arcs(1 + e)) {
            if (arc.to == 0) continue;  // reverse arc back to source
            if (arc.cap == 0) {         // saturated forward arc carries the edge
                chosen = arc.to - 1 - e_count;
                break;
            }
        }
        if (chosen < 0) throw InvariantViolation("saturated edge node without outgoing flow");
        sol.y.emplace_back(e, chosen);
    }
    return sol;
}

VerifyResult verify_cover(const Instance& inst, const CoverSolution& sol) {
    const int n = inst.num_vertices;
    const int e_count = static_cast<int>(inst.edges.size());
    if (static_cast<int>(sol.x.size()) != n)
        return {false, "x has wrong length"};
    for (int v = 0; v < n; ++v) {
        if (sol.x[v] < 0)
            return {false, "negative copy count at vertex " + std::to_string(v)};
        if (sol.x[v] > inst.m[v])
            return {false, "copy limit exceeded at vertex " + std::to_string(v)};
    }
    std::vector<int> assigned(e_count, -1);
    for (const auto& [e, v] : sol.y) {
        if (e < 0 || e >= e_count)
            return {false, "assignment references edge " + std::to_string(e) + " out of range"};
        if (v < 0 || v >= n)
            return {false, "assignment references vertex " + std::to_string(v) + " out of range"};
        const auto& ends = inst.edges[e];
        if (std::find(ends.begin(), ends.end(), v) == ends.end())
            return {false, "edge " + std::to_string(e) + " assigned to non-endpoint " +
                               std::to_string(v)};
        if (assigned[e] != -1)
            return {false, "edge " + std::to_string(e) + " assigned more than once"};
        assigned[e] = v;
    }
    for (int e = 0; e < e_count; ++e)
        if (assigned[e] < 0)
            return {false, "edge " + std::to_string(e) + " is not covered"};
    std::vector<long long> load(n, 0);
    for (int e = 0; e < e_count; ++e) ++load[assigned[e]];
    for (int v = 0; v < n; ++v) {
        long long cap = 0;
        if (sol.x[v] > 0 && inst.k[v] > 0) {
            if (sol.x[v] >= e_count || inst.k[v] >= e_count ||
                sol.x[v] * inst.k[v] >= e_count)
                cap = e_count;
            else
                cap = sol.x[v] * inst.k[v];
        }
        if (load[v] > cap)
            return {false, "capacity exceeded at vertex " + std::to_string(v)};
    }
    return {true, ""};
}

}  // namespace vchc
