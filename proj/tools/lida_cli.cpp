#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lida/bench.hpp"
#include "lida/cli.hpp"
#include "lida/crp.hpp"
#include "lida/search.hpp"
#include "lida/tiles.hpp"

namespace {

using namespace lida;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

struct CommonOpts {
    std::string domain = "tiles";
    std::string policy_spec = "always";
    std::string timing_spec = "calibrate";
    int rows = 4, cols = 4;
    bool weighted = false;
    bool goal_blank_last = false;
    std::uint64_t node_cap = 0;
    double time_cap_s = 0.0;
    std::uint64_t seed = 1;
};

tiles::GoalConvention convention(const CommonOpts& o) {
    return o.goal_blank_last ? tiles::GoalConvention::BlankLast
                             : tiles::GoalConvention::BlankFirst;
}

tiles::TileCostModel cost_model(const CommonOpts& o) {
    return o.weighted ? tiles::TileCostModel::Weighted : tiles::TileCostModel::Unit;
}

template <SearchDomain D, class Sampler>
TimingModel resolve_timing(const cli::TimingSpec& spec, const D& domain, Sampler&& sampler) {
    switch (spec.kind) {
        case cli::TimingSpec::Kind::Fixed:
            return TimingModel::fixed(spec.t1, spec.t2, spec.te);
        case cli::TimingSpec::Kind::Ema:
            return TimingModel::online_ema(spec.decay);
        case cli::TimingSpec::Kind::Calibrate:
            return calibrate_timing(domain, sampler);
    }
    return TimingModel::fixed(1.0, 1.0, 1.0);
}

TimingModel domain_timing(const cli::TimingSpec& spec, const tiles::TileDomain& domain,
                          std::uint64_t seed) {
    std::uint64_t s = seed;
    auto& goal = domain.goal();
    return resolve_timing(spec, domain, [&]() {
        return tiles::random_walk_instance(goal.rows, goal.cols, 100, s++, goal.convention);
    });
}

TimingModel domain_timing(const cli::TimingSpec& spec, const crp::CrpDomain& domain,
                          std::uint64_t seed) {
    std::uint64_t s = seed;
    const auto& inst = domain.instance();
    int n = std::min(inst.n_containers, inst.n_stacks * inst.tier_limit - 1);
    return resolve_timing(spec, domain, [&]() {
        auto st = crp::random_instance(inst.n_stacks, inst.tier_limit, n, s++).initial_state();
        crp::crp_normalize(st);
        return st;
    });
}

template <class Result>
int report_result(const Result& result, bool show_moves,
                  const std::vector<std::string>& move_names) {
    const auto& st = result.stats;
    if (result.solved()) {
        std::cout << "outcome: solved\ncost: " << result.solution->cost << "\n";
    } else if (result.outcome == SearchOutcome::Unsolvable) {
        std::cout << "outcome: unsolvable\n";
    } else {
        std::cout << "outcome: resource-limit\n";
    }
    std::cout << "time: " << st.wall_time_s << " generated: " << st.generated
              << " h2-total: " << st.h2_evals << " h2-helpful: " << st.h2_helpful << "\n";
    std::cout << "iterations: " << st.iterations << " thresholds:";
    for (Cost t : st.thresholds) std::cout << " " << t;
    std::cout << "\n";
    if (show_moves && result.solved()) {
        std::cout << "moves:";
        for (const auto& name : move_names) std::cout << " " << name;
        std::cout << "\n";
    }
    if (result.solved()) return cli::kExitOk;
    if (result.outcome == SearchOutcome::Unsolvable) return cli::kExitUnsolvable;
    return cli::kExitCapExceeded;
}

int cmd_solve(const CommonOpts& opts, const std::string& instance_path, int index,
              bool show_moves) {
    DecisionPolicy policy = cli::parse_policy_spec(opts.policy_spec);
    auto timing_spec = cli::parse_timing_spec(opts.timing_spec);
    SearchConfig config;
    config.node_cap = opts.node_cap;
    config.time_cap_s = opts.time_cap_s;

    if (opts.domain == "tiles") {
        auto boards = tiles::parse_instance_file(read_file(instance_path), opts.rows, opts.cols);
        if (boards.empty()) throw tiles::ParseError("no instances in " + instance_path);
        if (index < 0 || index >= static_cast<int>(boards.size()))
            throw tiles::ParseError("instance index out of range");
        tiles::TileDomain domain(boards[index], cost_model(opts), convention(opts));
        if (!tiles::is_solvable(boards[index], domain.goal())) {
            std::cout << "outcome: unsolvable\n";
            return cli::kExitUnsolvable;
        }
        TimingModel timing = domain_timing(timing_spec, domain, opts.seed);
        auto result = ida_star(domain, EvalMode::Lazy, policy, timing, config);
        std::vector<std::string> names;
        if (result.solved())
            for (auto m : result.solution->path) names.push_back(tiles::move_name(m));
        return report_result(result, show_moves, names);
    }

    auto instances = crp::parse_crp_file(read_file(instance_path));
    if (instances.empty()) throw crp::ParseError("no instances in " + instance_path);
    if (index < 0 || index >= static_cast<int>(instances.size()))
        throw crp::ParseError("instance index out of range");
    crp::CrpDomain domain(instances[index]);
    TimingModel timing = domain_timing(timing_spec, domain, opts.seed);
    auto result = ida_star(domain, EvalMode::Lazy, policy, timing, config);
    std::vector<std::string> names;
    if (result.solved())
        for (const auto& m : result.solution->path)
            names.push_back(std::to_string(m.container) + ":" + std::to_string(m.from) + ">" +
                            std::to_string(m.to));
    return report_result(result, show_moves, names);
}

int cmd_bench(const CommonOpts& opts, const std::vector<std::string>& instance_paths,
              double const_ph, double cap, int reps, const std::string& format,
              const std::string& out_path) {
    bench::BenchLimits limits;
    limits.node_cap = opts.node_cap;
    limits.time_cap_s = opts.time_cap_s;
    limits.repetitions = reps;
    auto algos = bench::default_algorithms(const_ph, cap);
    auto timing_spec = cli::parse_timing_spec(opts.timing_spec);

    bench::BenchReport report;
    if (opts.domain == "tiles") {
        std::vector<bench::BenchInstance<tiles::TileDomain>> instances;
        for (const auto& path : instance_paths) {
            auto boards = tiles::parse_instance_file(read_file(path), opts.rows, opts.cols);
            for (std::size_t i = 0; i < boards.size(); ++i)
                instances.push_back({path + ":" + std::to_string(i),
                                     tiles::TileDomain(boards[i], cost_model(opts),
                                                       convention(opts)),
                                     0});
        }
        if (instances.empty()) throw tiles::ParseError("no instances");
        TimingModel timing = domain_timing(timing_spec, instances.front().domain, opts.seed);
        report = bench::run_suite(instances, algos, limits, timing);
    } else {
        std::vector<bench::BenchInstance<crp::CrpDomain>> instances;
        for (const auto& path : instance_paths) {
            auto insts = crp::parse_crp_file(read_file(path));
            for (std::size_t i = 0; i < insts.size(); ++i)
                instances.push_back(
                    {path + ":" + std::to_string(i), crp::CrpDomain(insts[i]), 0});
        }
        if (instances.empty()) throw crp::ParseError("no instances");
        TimingModel timing = domain_timing(timing_spec, instances.front().domain, opts.seed);
        report = bench::run_suite(instances, algos, limits, timing);
    }

    for (const auto& id : report.excluded)
        std::cerr << "excluded from aggregates (cap exceeded): " << id << "\n";
    write_output(out_path,
                 format == "csv" ? bench::emit_csv(report.detail) : bench::emit_markdown(report.rows));
    return cli::kExitOk;
}

int cmd_gen(const CommonOpts& opts, int steps_min, int steps_max, int count, int stacks, int tiers,
            int containers, const std::string& out_path) {
    std::string out;
    if (opts.domain == "tiles") {
        if (opts.rows * opts.cols < 2 || steps_min < 0 || steps_max < steps_min || count < 1) {
            std::cerr << "gen: invalid geometry or step range\n";
            return cli::kExitUsage;
        }
        std::mt19937_64 master(opts.seed);
        for (int i = 0; i < count; ++i) {
            int steps = static_cast<int>(
                std::uniform_int_distribution<int>(steps_min, steps_max)(master));
            std::uint64_t inst_seed = master();
            auto board = tiles::random_walk_instance(opts.rows, opts.cols, steps, inst_seed,
                                                     convention(opts));
            out += "# seed=" + std::to_string(inst_seed) + " steps=" + std::to_string(steps) + "\n";
            out += tiles::format_instance(board) + "\n";
        }
    } else {
        if (stacks < 2 || tiers < 1 || containers < 1 || containers >= stacks * tiers ||
            count < 1) {
            std::cerr << "gen: invalid crp geometry (need 1 <= N < S*T, S >= 2)\n";
            return cli::kExitUsage;
        }
        std::mt19937_64 master(opts.seed);
        for (int i = 0; i < count; ++i) {
            std::uint64_t inst_seed = master();
            auto inst = crp::random_instance(stacks, tiers, containers, inst_seed);
            out += "# seed=" + std::to_string(inst_seed) + "\n";
            out += crp::format_crp_instance(inst);
        }
    }
    write_output(out_path, out);
    return cli::kExitOk;
}

int cmd_bound_check(const std::vector<std::uint64_t>& ns, const std::vector<double>& levels,
                    const std::vector<double>& means) {
    std::cout << "N l mean alpha* B(alpha*) B* p_h\n";
    for (auto n : ns) {
        for (double l : levels) {
            for (double mean : means) {
                SampleHistory hist{n, mean * static_cast<double>(n)};
                double ph = bound_p_h(hist, l);
                auto alpha = bound_alpha_star(n, l, mean);
                std::cout << n << " " << l << " " << mean << " ";
                if (alpha) {
                    auto b = bound_b_of_alpha(*alpha, n, l, mean);
                    std::cout << *alpha << " " << (b ? std::to_string(*b) : "-");
                } else {
                    std::cout << "- -";
                }
                double bstar = (hist.n == 0 || l <= 0.0)
                                   ? 1.0
                                   : (1.0 + std::sqrt(std::max(
                                                 0.0, std::log(std::sqrt(2.0 * double(n)) * l)))) /
                                             (std::sqrt(2.0 * double(n)) * l) +
                                         mean / l;
                std::cout << " " << bstar << " " << ph << "\n";
            }
        }
    }
    return cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IDA* / Lazy IDA* / Rational Lazy IDA* over sliding tiles and container relocation"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--domain", opts.domain)->check(CLI::IsMember({"tiles", "crp"}));
        sub->add_option("--policy", opts.policy_spec);
        sub->add_option("--timing", opts.timing_spec);
        sub->add_option("--rows", opts.rows);
        sub->add_option("--cols", opts.cols);
        sub->add_flag("--weighted", opts.weighted);
        sub->add_flag("--goal-blank-last", opts.goal_blank_last);
        sub->add_option("--node-cap", opts.node_cap);
        sub->add_option("--time-cap-s", opts.time_cap_s);
        sub->add_option("--seed", opts.seed);
    };

    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string instance_path;
    int index = 0;
    bool show_moves = false;
    add_common(solve);
    solve->add_option("--instance", instance_path)->required();
    solve->add_option("--index", index);
    solve->add_flag("--show-moves", show_moves);

    auto* benchcmd = app.add_subcommand("bench", "run the benchmark table");
    std::vector<std::string> instance_paths;
    double const_ph = 0.3, cap = 0.5;
    int reps = 1;
    std::string format = "markdown", out_path;
    add_common(benchcmd);
    benchcmd->add_option("--instances", instance_paths)->required();
    benchcmd->add_option("--const-ph", const_ph);
    benchcmd->add_option("--cap", cap);
    benchcmd->add_option("--reps", reps);
    benchcmd->add_option("--format", format)->check(CLI::IsMember({"markdown", "csv"}));
    benchcmd->add_option("--out", out_path);

    auto* gen = app.add_subcommand("gen", "generate random instances");
    int steps_min = 45, steps_max = 80, count = 1;
    int stacks = 5, tiers = 6, containers = 20;
    std::string gen_out;
    add_common(gen);
    gen->add_option("--steps-min", steps_min);
    gen->add_option("--steps-max", steps_max);
    gen->add_option("--count", count);
    gen->add_option("--stacks", stacks);
    gen->add_option("--tiers", tiers);
    gen->add_option("--containers", containers);
    gen->add_option("--out", gen_out);

    auto* bound = app.add_subcommand("bound-check", "inspect the p_h concentration bound");
    std::vector<std::uint64_t> ns{50};
    std::vector<double> levels{1.0};
    std::vector<double> means{0.0};
    bound->add_option("--samples", ns);
    bound->add_option("--level", levels);
    bound->add_option("--mean", means);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the message; 0 for --help/--version
        return code == 0 ? lida::cli::kExitOk : lida::cli::kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(opts, instance_path, index, show_moves);
        if (benchcmd->parsed())
            return cmd_bench(opts, instance_paths, const_ph, cap, reps, format, out_path);
        if (gen->parsed())
            return cmd_gen(opts, steps_min, steps_max, count, stacks, tiers, containers, gen_out);
        if (bound->parsed()) return cmd_bound_check(ns, levels, means);
    } catch (const lida::tiles::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return lida::cli::kExitParseError;
    } catch (const lida::crp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return lida::cli::kExitParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lida::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lida::cli::kExitParseError;
    }
    return lida::cli::kExitUsage;
}
