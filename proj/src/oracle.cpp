#include "vchc/oracle.hpp"

#include "vchc/assignment.hpp"

#include <numeric>

namespace vchc {

std::optional<OracleResult> brute_force_opt(const Instance& inst, long long budget) {
    inst.validate();
    const int n = inst.num_vertices;
    long long space = 1;
    for (int v = 0; v < n; ++v) {
        if (inst.m[v] >= budget || space > budget / (inst.m[v] + 1))
            throw std::invalid_argument("enumeration space exceeds the oracle budget");
        space *= inst.m[v] + 1;
    }

    const int e_count = static_cast<int>(inst.edges.size());
    auto feasible = [&](const std::vector<long long>& x) {
        FlowNetwork net = build_assignment_network(inst, x);
        return net.max_flow(0, e_count + n + 1) == e_count;
    };

    std::optional<OracleResult> best;
    std::vector<long long> x(n, 0);
    for (;;) {
        long long total = std::accumulate(x.begin(), x.end(), 0LL);
        // Candidates matching the incumbent keep the earlier witness.
        if ((!best || total < best->opt) && feasible(x)) best = OracleResult{total, x};
        int pos = n - 1;
        while (pos >= 0 && x[pos] == inst.m[pos]) {
            x[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++x[pos];
    }
    return best;
}

}  // namespace vchc
