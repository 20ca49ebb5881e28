#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vchc {

/// Input document could not be parsed or fails structural validation.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The instance (or a generated candidate) admits no feasible cover.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal structural invariant was violated; always a bug, never
/// silently ignored.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Covering instance on a multigraph or hypergraph with hard capacities.
///
/// Edges are identified by their index in `edges`; repeating the same
/// endpoint set yields distinct parallel edges. `k[v]` is the number of
/// incident edges one copy of v can cover, `m[v]` the number of copies
/// of v that may be selected. Instances are immutable after construction
/// and safe to share across concurrent solver runs.
struct Instance {
    int num_vertices = 0;
    std::vector<std::vector<int>> edges;
    std::vector<long long> k;
    std::vector<long long> m;

    /// Throws ParseError if any structural invariant fails.
    void validate() const;

    /// Maximum edge size; 0 for an edge-free instance.
    int rank() const;

    /// Incident edge indices per vertex, each list ascending.
    std::vector<std::vector<int>> incidence() const;

    /// Endpoints of edge e in ascending vertex order.
    std::vector<int> sorted_edge(int e) const;

    bool operator==(const Instance&) const = default;
};

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

/// Integral cover: x[v] copies per vertex plus one (edge, vertex)
/// assignment pair per covered edge. Kept deliberately permissive so that
/// invalid documents can be represented and then rejected by verify_cover.
struct CoverSolution {
    std::vector<long long> x;
    std::vector<std::pair<int, int>> y;

    bool operator==(const CoverSolution&) const = default;
};

CoverSolution parse_solution(const std::string& text);
std::string serialize_solution(const CoverSolution& sol);

/// True iff buying every copy (x = m) admits a full edge assignment.
bool is_coverable(const Instance& inst);

struct GenParams {
    int num_vertices = 1;
    int num_edges = 1;
    int min_edge_size = 1;
    int max_edge_size = 2;
    long long max_capacity = 1;
    long long max_mult = 1;
};

/// Seeded random coverable instance; a pure function of (params, seed).
/// Throws InfeasibleError when the retry budget is exhausted without
/// hitting a coverable draw.
Instance generate_random(const GenParams& params, std::uint64_t seed);

}  // namespace vchc
