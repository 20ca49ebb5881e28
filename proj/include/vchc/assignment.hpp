#pragma once

#include "vchc/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vchc {

/// Flow network over source -> edge nodes -> vertex nodes -> sink, with
/// integer capacities. Arc order is insertion order, which makes every
/// flow computation deterministic.
class FlowNetwork {
public:
    struct Arc {
        int to;
        long long cap;
        int rev;  // index of the reverse arc in adj[to]
    };

    explicit FlowNetwork(int num_nodes) : adj_(num_nodes) {}

    int num_nodes() const { return static_cast<int>(adj_.size()); }
    void add_arc(int from, int to, long long cap);
    const std::vector<Arc>& arcs(int node) const { return adj_[node]; }

    /// Dinic blocking-flow; returns the max flow value and leaves the
    /// residual capacities in place (flow on an arc = original - residual).
    long long max_flow(int source, int sink);

private:
    long long dfs(int v, int sink, long long limit);

    std::vector<std::vector<Arc>> adj_;
    std::vector<int> level_, iter_;
};

/// Network realizing the edge-assignment feasibility test for copy
/// vector x: saturating all source arcs means every edge can be assigned
/// to a selected endpoint within capacity k_v * x_v.
/// Nodes: 0 = source, 1..E = edges, E+1..E+n = vertices, E+n+1 = sink.
FlowNetwork build_assignment_network(const Instance& inst, const std::vector<long long>& x);

/// Integral edge assignment for an integral x, via maximum flow; nullopt
/// when x admits no full assignment. Requires 0 <= x_v <= m_v.
std::optional<CoverSolution> recover_assignment(const Instance& inst,
                                                const std::vector<long long>& x);

struct VerifyResult {
    bool ok = false;
    std::string diagnostic;  // names the first violated condition
};

/// Exact check of the three feasibility conditions: copy limits, one
/// covering endpoint per edge, and per-vertex capacity.
VerifyResult verify_cover(const Instance& inst, const CoverSolution& sol);

}  // namespace vchc
