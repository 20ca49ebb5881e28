#pragma once

#include "vchc/instance.hpp"

#include <optional>
#include <vector>

namespace vchc {

struct OracleResult {
    long long opt = 0;
    std::vector<long long> witness;  // lexicographically first optimal x
};

/// Exhaustive optimum: enumerates every copy vector 0 <= x <= m in
/// lexicographic order and decides feasibility of each by maximum flow.
/// Independent of the relaxation/rounding stack (shares only the flow
/// module). Returns nullopt when no copy vector is feasible; throws
/// std::invalid_argument when the enumeration space exceeds the budget.
std::optional<OracleResult> brute_force_opt(const Instance& inst,
                                            long long budget = 2'000'000);

}  // namespace vchc
