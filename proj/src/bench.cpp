#include "vchc/bench.hpp"

#include "vchc/assignment.hpp"
#include "vchc/covering.hpp"
#include "vchc/oracle.hpp"
#include "vchc/rounding_lp2.hpp"

#include <json.hpp>

#include <chrono>
#include <random>

namespace vchc {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

Json trace_event_json(const TraceEvent& ev) {
    Json j;
    j["kind"] = ev.kind;
    if (!ev.vertices.empty()) j["vertices"] = ev.vertices;
    if (ev.edge >= 0) j["edge"] = ev.edge;
    if (ev.vertex >= 0) j["vertex"] = ev.vertex;
    if (ev.has_t) j["t"] = rat_str(ev.t);
    return j;
}

}  // namespace

std::string trace_to_json(const RunTrace& trace) {
    Json j;
    j["algorithm"] = trace.algorithm;
    j["lp1_objective"] = rat_str(trace.lp1_objective);
    j["solve_count"] = trace.solve_count;
    Json iters = Json::array();
    for (const auto& it : trace.iterations) {
        Json ji;
        ji["objective"] = rat_str(it.objective);
        Json evs = Json::array();
        for (const auto& ev : it.events) evs.push_back(trace_event_json(ev));
        ji["events"] = std::move(evs);
        ji["sizes"] = Json{{"u_gt", it.u_gt}, {"u_eq", it.u_eq}, {"w", it.w},
                           {"z", it.z},       {"d", it.d},       {"covered", it.covered_edges}};
        iters.push_back(std::move(ji));
    }
    j["iterations"] = std::move(iters);
    j["terminal"] = Json{{"w", trace.terminal_w},
                         {"u_at_cap", trace.terminal_u_at_cap},
                         {"checks_enabled", trace.checks_enabled},
                         {"check_failures", trace.check_failures}};
    j["cost"] = trace.cost;
    return j.dump();
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::IterLp2: return "iter-lp2";
        case Algo::IterLp3: return "iter-lp3";
        case Algo::IterLp4: return "iter-lp4";
    }
    return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
    if (name == "iter-lp2") return Algo::IterLp2;
    if (name == "iter-lp3") return Algo::IterLp3;
    if (name == "iter-lp4") return Algo::IterLp4;
    return std::nullopt;
}

std::string profile_name(Profile p) {
    return p == Profile::SmallGraphs ? "small-graphs" : "small-hypergraphs";
}

std::optional<Profile> profile_from_name(const std::string& name) {
    if (name == "small-graphs") return Profile::SmallGraphs;
    if (name == "small-hypergraphs") return Profile::SmallHypergraphs;
    return std::nullopt;
}

Instance profile_instance(Profile p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GenParams params;
    params.num_vertices = 4 + static_cast<int>(below(rng, 5));
    params.num_edges = 5 + static_cast<int>(below(rng, 10));
    params.min_edge_size = 2;
    params.max_edge_size = p == Profile::SmallGraphs ? 2 : 3;
    params.max_capacity = 4;
    params.max_mult = 3;
    return generate_random(params, rng());
}

BenchReport bench_run(const BenchConfig& config) {
    if (config.algorithms.empty())
        throw std::invalid_argument("bench requires at least one algorithm");
    BenchReport report;
    report.config = config;
    report.summary.count = config.count;
    report.summary.max_ratio_lp1 = Rat(0);
    Rat ratio_sum(0);
    long long ratio_n = 0;
    int violations = 0;

    RoundOptions opt;
    opt.checks = config.checks;

    for (int i = 0; i < config.count; ++i) {
        InstanceRecord rec;
        rec.seed = config.seed + static_cast<std::uint64_t>(i);
        Instance inst;
        try {
            inst = profile_instance(config.profile, rec.seed);
        } catch (const std::exception& ex) {
            rec.error = ex.what();
            ++violations;
            report.instances.push_back(std::move(rec));
            continue;
        }
        rec.num_vertices = inst.num_vertices;
        rec.num_edges = static_cast<int>(inst.edges.size());
        rec.rank = inst.rank();
        const Rat f_rat(rec.rank);

        if (config.oracle) {
            try {
                auto best = brute_force_opt(inst, config.oracle_budget);
                if (best)
                    rec.opt = best->opt;
                else {
                    rec.error = "oracle found the instance infeasible";
                    ++violations;
                }
            } catch (const std::exception& ex) {
                rec.error = ex.what();
                ++violations;
            }
        }

        bool lp1_set = false;
        for (Algo a : config.algorithms) {
            AlgoRecord ar;
            ar.algo = a;
            auto started = std::chrono::steady_clock::now();
            try {
                RoundResult rr;
                switch (a) {
                    case Algo::IterLp2: rr = round_lp2(inst, opt); break;
                    case Algo::IterLp3: rr = round_lp3(inst, opt); break;
                    case Algo::IterLp4: rr = round_lp4(inst, opt); break;
                }
                ar.cost = rr.trace.cost;
                ar.solves = rr.trace.solve_count;
                ar.checks_ok = rr.trace.checks_ok();
                if (!lp1_set) {
                    rec.lp1 = rr.trace.lp1_objective;
                    lp1_set = true;
                } else if (rec.lp1 != rr.trace.lp1_objective) {
                    ar.error = "relaxation optimum differs across algorithms";
                }
                ar.ratio_lp1 = rec.lp1 == 0 ? Rat(0) : Rat(ar.cost) / rec.lp1;
                ar.within_f = Rat(ar.cost) <= f_rat * rec.lp1;
                if (rec.opt) {
                    ar.ratio_opt = *rec.opt == 0 ? Rat(0) : Rat(ar.cost, *rec.opt);
                    ar.within_f_opt = Rat(ar.cost) <= f_rat * Rat(*rec.opt);
                }
                auto recovered = recover_assignment(inst, rr.x);
                ar.feasible = recovered && verify_cover(inst, *recovered).ok;
            } catch (const std::exception& ex) {
                ar.error = ex.what();
            }
            auto stopped = std::chrono::steady_clock::now();
            ar.wall_ms = std::chrono::duration<double, std::milli>(stopped - started).count();
            if (!ar.error.empty() || !ar.within_f || !ar.within_f_opt || !ar.feasible ||
                !ar.checks_ok)
                ++violations;
            if (ar.error.empty()) {
                if (ar.ratio_lp1 > report.summary.max_ratio_lp1)
                    report.summary.max_ratio_lp1 = ar.ratio_lp1;
                ratio_sum += ar.ratio_lp1;
                ++ratio_n;
            }
            rec.algos.push_back(std::move(ar));
        }
        report.instances.push_back(std::move(rec));
    }
    report.summary.violations = violations;
    report.summary.mean_ratio_lp1 = ratio_n == 0 ? Rat(0) : ratio_sum / Rat(ratio_n);
    return report;
}

std::string report_to_json(const BenchReport& report) {
    Json j;
    std::string algos;
    for (size_t i = 0; i < report.config.algorithms.size(); ++i) {
        if (i) algos += ",";
        algos += algo_name(report.config.algorithms[i]);
    }
    j["config"] = Json{{"count", report.config.count},
                       {"seed", report.config.seed},
                       {"profile", profile_name(report.config.profile)},
                       {"algorithms", algos},
                       {"oracle", report.config.oracle},
                       {"checks", report.config.checks}};
    Json insts = Json::array();
    for (const auto& rec : report.instances) {
        Json ji;
        ji["seed"] = rec.seed;
        ji["n"] = rec.num_vertices;
        ji["edges"] = rec.num_edges;
        ji["rank"] = rec.rank;
        ji["lp1"] = rat_str(rec.lp1);
        if (rec.opt) ji["opt"] = *rec.opt;
        if (!rec.error.empty()) ji["error"] = rec.error;
        Json jalgos = Json::array();
        for (const auto& ar : rec.algos) {
            Json ja;
            ja["algo"] = algo_name(ar.algo);
            if (!ar.error.empty()) {
                ja["error"] = ar.error;
            } else {
                ja["cost"] = ar.cost;
                ja["ratio_lp1"] = rat_str(ar.ratio_lp1);
                ja["within_f"] = ar.within_f;
                if (ar.ratio_opt) {
                    ja["ratio_opt"] = rat_str(*ar.ratio_opt);
                    ja["within_f_opt"] = ar.within_f_opt;
                }
                ja["feasible"] = ar.feasible;
                ja["checks_ok"] = ar.checks_ok;
                ja["solves"] = ar.solves;
                if (report.config.timing) ja["wall_ms"] = ar.wall_ms;
            }
            jalgos.push_back(std::move(ja));
        }
        ji["algorithms"] = std::move(jalgos);
        insts.push_back(std::move(ji));
    }
    j["instances"] = std::move(insts);
    j["summary"] = Json{{"count", report.summary.count},
                        {"violations", report.summary.violations},
                        {"max_ratio_lp1", rat_str(report.summary.max_ratio_lp1)},
                        {"mean_ratio_lp1", rat_str(report.summary.mean_ratio_lp1)}};
    return j.dump();
}

}  // namespace vchc
