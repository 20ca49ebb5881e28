#include "vchc/instance.hpp"

#include "vchc/assignment.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace vchc {

namespace {

using Json = nlohmann::ordered_json;

long long require_int(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(std::string(what) + " must be an integer");
    return j.get<long long>();
}

std::vector<long long> require_int_array(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<long long> out;
    out.reserve(j.size());
    for (const auto& el : j) out.push_back(require_int(el, what));
    return out;
}

/// Portable uniform draw in [0, bound); rejection on raw 64-bit output so
/// results do not depend on the standard library's distribution internals.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

}  // namespace

void Instance::validate() const {
    if (num_vertices < 0) throw ParseError("num_vertices must be non-negative");
    if (static_cast<int>(k.size()) != num_vertices)
        throw ParseError("k has wrong length");
    if (static_cast<int>(m.size()) != num_vertices)
        throw ParseError("m has wrong length");
    for (long long kv : k)
        if (kv < 0) throw ParseError("capacities must be non-negative");
    for (long long mv : m)
        if (mv < 0) throw ParseError("multiplicities must be non-negative");
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& ends = edges[e];
        if (ends.empty())
            throw ParseError("edge " + std::to_string(e) + " is empty");
        std::set<int> seen;
        for (int v : ends) {
            if (v < 0 || v >= num_vertices)
                throw ParseError("edge " + std::to_string(e) + " references vertex out of range");
            if (!seen.insert(v).second)
                throw ParseError("edge " + std::to_string(e) + " repeats a vertex");
        }
    }
}

int Instance::rank() const {
    size_t f = 0;
    for (const auto& e : edges) f = std::max(f, e.size());
    return static_cast<int>(f);
}

std::vector<std::vector<int>> Instance::incidence() const {
    std::vector<std::vector<int>> delta(num_vertices);
    for (size_t e = 0; e < edges.size(); ++e)
        for (int v : edges[e]) delta[v].push_back(static_cast<int>(e));
    return delta;
}

std::vector<int> Instance::sorted_edge(int e) const {
    std::vector<int> ends = edges[e];
    std::sort(ends.begin(), ends.end());
    return ends;
}

Instance parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("invalid instance document: ") + ex.what());
    }
    if (!j.is_object()) throw ParseError("instance document must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "num_vertices" && key != "k" && key != "m" && key != "edges")
            throw ParseError("unexpected key '" + key + "' in instance document");
    }
    if (!j.contains("num_vertices") || !j.contains("k") || !j.contains("m") ||
        !j.contains("edges"))
        throw ParseError("instance document missing a required key");
    Instance inst;
    long long n = require_int(j["num_vertices"], "num_vertices");
    if (n < 0 || n > (1 << 28)) throw ParseError("num_vertices out of range");
    inst.num_vertices = static_cast<int>(n);
    inst.k = require_int_array(j["k"], "k entries");
    inst.m = require_int_array(j["m"], "m entries");
    if (!j["edges"].is_array()) throw ParseError("edges must be an array");
    for (const auto& je : j["edges"]) {
        std::vector<int> ends;
        if (!je.is_array()) throw ParseError("each edge must be an array");
        for (const auto& jv : je) {
            long long v = require_int(jv, "edge endpoints");
            if (v < 0 || v >= n) throw ParseError("edge endpoint out of range");
            ends.push_back(static_cast<int>(v));
        }
        inst.edges.push_back(std::move(ends));
    }
    inst.validate();
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    Json j;
    j["num_vertices"] = inst.num_vertices;
    j["k"] = inst.k;
    j["m"] = inst.m;
    j["edges"] = inst.edges;
    return j.dump();
}

CoverSolution parse_solution(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("invalid solution document: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw ParseError("solution document must contain x and y");
    CoverSolution sol;
    sol.x = require_int_array(j["x"], "x entries");
    if (!j["y"].is_array()) throw ParseError("y must be an array");
    for (const auto& jp : j["y"]) {
        if (!jp.is_array() || jp.size() != 2)
            throw ParseError("each y entry must be an [edge, vertex] pair");
        sol.y.emplace_back(static_cast<int>(require_int(jp[0], "edge index")),
                           static_cast<int>(require_int(jp[1], "vertex index")));
    }
    return sol;
}

std::string serialize_solution(const CoverSolution& sol) {
    Json j;
    j["x"] = sol.x;
    Json ys = Json::array();
    for (const auto& [e, v] : sol.y) ys.push_back(Json::array({e, v}));
    j["y"] = std::move(ys);
    return j.dump();
}

bool is_coverable(const Instance& inst) {
    FlowNetwork net = build_assignment_network(inst, inst.m);
    const int e_count = static_cast<int>(inst.edges.size());
    return net.max_flow(0, e_count + inst.num_vertices + 1) == e_count;
}

Instance generate_random(const GenParams& params, std::uint64_t seed) {
    if (params.num_vertices < 1 || params.num_edges < 1 || params.min_edge_size < 1 ||
        params.max_edge_size < params.min_edge_size || params.max_capacity < 1 ||
        params.max_mult < 1)
        throw std::invalid_argument("generator parameters out of range");
    if (params.max_edge_size > params.num_vertices)
        throw std::invalid_argument("max_edge_size exceeds num_vertices");

    std::mt19937_64 rng(seed);
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Instance inst;
        inst.num_vertices = params.num_vertices;
        inst.k.resize(params.num_vertices);
        inst.m.resize(params.num_vertices);
        for (int v = 0; v < params.num_vertices; ++v) {
            inst.k[v] = 1 + static_cast<long long>(
                                draw_below(rng, static_cast<std::uint64_t>(params.max_capacity)));
            inst.m[v] = 1 + static_cast<long long>(
                                draw_below(rng, static_cast<std::uint64_t>(params.max_mult)));
        }
        std::vector<int> pool(params.num_vertices);
        for (int e = 0; e < params.num_edges; ++e) {
            int size = params.min_edge_size +
                       static_cast<int>(draw_below(
                           rng, static_cast<std::uint64_t>(params.max_edge_size -
                                                           params.min_edge_size + 1)));
            for (int v = 0; v < params.num_vertices; ++v) pool[v] = v;
            // Fisher-Yates prefix of length `size`.
            for (int i = 0; i < size; ++i) {
                int j = i + static_cast<int>(draw_below(
                                rng, static_cast<std::uint64_t>(params.num_vertices - i)));
                std::swap(pool[i], pool[j]);
            }
            std::vector<int> ends(pool.begin(), pool.begin() + size);
            std::sort(ends.begin(), ends.end());
            inst.edges.push_back(std::move(ends));
        }
        inst.validate();
        if (is_coverable(inst)) return inst;
    }
    throw InfeasibleError("generator retry budget exhausted; coverable draws too rare");
}

}  // namespace vchc
