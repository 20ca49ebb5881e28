#include "vchc/assignment.hpp"
#include "vchc/bench.hpp"
#include "vchc/covering.hpp"
#include "vchc/oracle.hpp"
#include "vchc/rounding_lp2.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text << "\n";
}

struct SolveArgs {
    std::string algo = "iter-lp2";
    std::string input, output, trace;
    bool check = false;
};

int run_solve(const SolveArgs& args) {
    auto algo = vchc::algo_from_name(args.algo);
    if (!algo) throw std::invalid_argument("unknown algorithm " + args.algo);
    vchc::Instance inst = vchc::parse_instance(slurp(args.input));
    vchc::RoundOptions opt;
    opt.checks = args.check;
    vchc::RoundResult result;
    switch (*algo) {
        case vchc::Algo::IterLp2: result = vchc::round_lp2(inst, opt); break;
        case vchc::Algo::IterLp3: result = vchc::round_lp3(inst, opt); break;
        case vchc::Algo::IterLp4: result = vchc::round_lp4(inst, opt); break;
    }
    auto recovered = vchc::recover_assignment(inst, result.x);
    if (!recovered)
        throw vchc::InvariantViolation("no integral assignment for the rounded copies");
    emit(args.output, vchc::serialize_solution(*recovered));
    if (!args.trace.empty()) emit(args.trace, vchc::trace_to_json(result.trace));
    return kExitOk;
}

int run_oracle(const std::string& input, long long budget) {
    vchc::Instance inst = vchc::parse_instance(slurp(input));
    auto best = vchc::brute_force_opt(inst, budget);
    if (!best) {
        std::cerr << "infeasible: no copy vector admits a full assignment\n";
        return kExitInfeasible;
    }
    nlohmann::ordered_json j;
    j["opt"] = best->opt;
    j["x"] = best->witness;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int run_verify(const std::string& input, const std::string& solution) {
    vchc::Instance inst = vchc::parse_instance(slurp(input));
    vchc::CoverSolution sol = vchc::parse_solution(slurp(solution));
    auto verdict = vchc::verify_cover(inst, sol);
    if (!verdict.ok) {
        std::cerr << "invalid solution: " << verdict.diagnostic << "\n";
        return kExitInfeasible;
    }
    std::cout << "ok\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact iterative-rounding solvers for vertex cover with hard capacities"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Round one instance to an integral cover");
    solve->add_option("--algo", solve_args.algo, "iter-lp2 | iter-lp3 | iter-lp4");
    solve->add_option("--input", solve_args.input, "instance document")->required();
    solve->add_option("--output", solve_args.output, "solution document (stdout when absent)");
    solve->add_option("--trace", solve_args.trace, "write the run trace here");
    solve->add_flag("--check", solve_args.check, "enable runtime structural checks");

    std::string oracle_input;
    long long oracle_budget = 2'000'000;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum by max-flow feasibility");
    oracle->add_option("--input", oracle_input, "instance document")->required();
    oracle->add_option("--budget", oracle_budget, "enumeration budget");

    vchc::GenParams gen_params;
    std::uint64_t gen_seed = 1;
    std::string gen_output;
    auto* gen = app.add_subcommand("gen", "Generate a random coverable instance");
    gen->add_option("--vertices", gen_params.num_vertices)->required();
    gen->add_option("--edges", gen_params.num_edges)->required();
    gen->add_option("--max-edge-size", gen_params.max_edge_size)->required();
    gen->add_option("--max-capacity", gen_params.max_capacity)->required();
    gen->add_option("--max-mult", gen_params.max_mult)->required();
    gen->add_option("--seed", gen_seed)->required();
    gen->add_option("--output", gen_output, "write the document here (stdout when absent)");

    std::string verify_input, verify_solution;
    auto* verify = app.add_subcommand("verify", "Check a solution document against an instance");
    verify->add_option("--input", verify_input)->required();
    verify->add_option("--solution", verify_solution)->required();

    vchc::BenchConfig bench_config;
    std::string bench_algos = "iter-lp2";
    std::string bench_profile = "small-graphs";
    std::string bench_output;
    bool bench_no_checks = false;
    auto* bench = app.add_subcommand("bench", "Seeded benchmark with ratio verification");
    bench->add_option("--count", bench_config.count)->required();
    bench->add_option("--seed", bench_config.seed)->required();
    bench->add_option("--algo", bench_algos, "comma-separated algorithm list");
    bench->add_option("--profile", bench_profile, "small-graphs | small-hypergraphs");
    bench->add_flag("--oracle", bench_config.oracle, "also compute exhaustive optima");
    bench->add_flag("--no-checks", bench_no_checks, "disable runtime structural checks");
    bench->add_flag("--timing", bench_config.timing,
                    "include wall-clock fields (report bytes become run-dependent)");
    bench->add_option("--output", bench_output, "write the report here (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (oracle->parsed()) return run_oracle(oracle_input, oracle_budget);
        if (gen->parsed()) {
            emit(gen_output, vchc::serialize_instance(vchc::generate_random(gen_params, gen_seed)));
            return kExitOk;
        }
        if (verify->parsed()) return run_verify(verify_input, verify_solution);
        if (bench->parsed()) {
            bench_config.checks = !bench_no_checks;
            auto profile = vchc::profile_from_name(bench_profile);
            if (!profile) throw std::invalid_argument("unknown profile " + bench_profile);
            bench_config.profile = *profile;
            std::stringstream ss(bench_algos);
            std::string piece;
            while (std::getline(ss, piece, ',')) {
                auto a = vchc::algo_from_name(piece);
                if (!a) throw std::invalid_argument("unknown algorithm " + piece);
                bench_config.algorithms.push_back(*a);
            }
            if (bench_config.profile == vchc::Profile::SmallHypergraphs)
                for (vchc::Algo a : bench_config.algorithms)
                    if (a == vchc::Algo::IterLp4)
                        throw std::invalid_argument(
                            "iter-lp4 requires the small-graphs profile (rank 2)");
            emit(bench_output, vchc::report_to_json(vchc::bench_run(bench_config)));
            return kExitOk;
        }
    } catch (const vchc::InvariantViolation& ex) {
        std::cerr << "internal invariant violation: " << ex.what() << "\n";
        return kExitInternal;
    } catch (const vchc::InfeasibleError& ex) {
        std::cerr << "infeasible: " << ex.what() << "\n";
        return kExitInfeasible;
    } catch (const vchc::ParseError& ex) {
        std::cerr << "bad input: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
