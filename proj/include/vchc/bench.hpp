#pragma once

#include "vchc/instance.hpp"
#include "vchc/rational.hpp"
#include "vchc/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vchc {

enum class Algo { IterLp2, IterLp3, IterLp4 };

std::string algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

/// Instance size profiles sized so the exhaustive oracle stays in the
/// millisecond range: small-graphs draws n in [4,8], |E| in [5,14],
/// edge size 2, k in [1,4], m in [1,3]; small-hypergraphs is the same
/// with edge sizes in {2,3}.
enum class Profile { SmallGraphs, SmallHypergraphs };

std::optional<Profile> profile_from_name(const std::string& name);
std::string profile_name(Profile p);

/// The instance a profile assigns to a seed (pure function).
Instance profile_instance(Profile p, std::uint64_t seed);

struct BenchConfig {
    int count = 10;
    std::uint64_t seed = 1;
    Profile profile = Profile::SmallGraphs;
    std::vector<Algo> algorithms;
    bool oracle = false;
    bool checks = true;
    bool timing = false;  // wall-clock fields; off keeps reports byte-deterministic
    long long oracle_budget = 2'000'000;
};

struct AlgoRecord {
    Algo algo = Algo::IterLp2;
    long long cost = 0;
    Rat ratio_lp1;
    bool within_f = false;
    bool feasible = false;
    bool checks_ok = false;
    long long solves = 0;
    std::optional<Rat> ratio_opt;
    bool within_f_opt = true;
    double wall_ms = 0.0;
    std::string error;
};

struct InstanceRecord {
    std::uint64_t seed = 0;
    int num_vertices = 0;
    int num_edges = 0;
    int rank = 0;
    Rat lp1;
    std::optional<long long> opt;
    std::vector<AlgoRecord> algos;
    std::string error;
};

struct BenchSummary {
    int count = 0;
    int violations = 0;
    Rat max_ratio_lp1;
    Rat mean_ratio_lp1;
};

struct BenchReport {
    BenchConfig config;
    std::vector<InstanceRecord> instances;
    BenchSummary summary;
};

/// Deterministic given the config; per-instance failures are recorded in
/// the report rather than thrown.
BenchReport bench_run(const BenchConfig& config);

/// Canonical document form; identical configs yield identical bytes
/// (timing fields only appear when config.timing is set).
std::string report_to_json(const BenchReport& report);

}  // namespace vchc
