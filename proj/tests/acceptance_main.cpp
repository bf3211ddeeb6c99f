// Acceptance gate: one check per release criterion, each printing a single
// [PASS]/[FAIL] line. Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lida/bench.hpp"
#include "lida/crp.hpp"
#include "lida/metareason.hpp"
#include "lida/search.hpp"
#include "lida/tiles.hpp"
#include "oracles.hpp"

using namespace lida;
using namespace lida::tiles;

namespace {

struct Config {
    const char* name;
    EvalMode mode;
    DecisionPolicy policy;
};

std::vector<Config> all_configs() {
    return {
        {"ida-h1", EvalMode::H1Only, DecisionPolicy::always()},
        {"ida-h2", EvalMode::H2Only, DecisionPolicy::always()},
        {"ida-max", EvalMode::EagerMax, DecisionPolicy::always()},
        {"lazy-always", EvalMode::Lazy, DecisionPolicy::always()},
        {"lazy-never", EvalMode::Lazy, DecisionPolicy::never()},
        {"rational-const", EvalMode::Lazy, DecisionPolicy::constant_ph(0.3)},
        {"rational-simplified", EvalMode::Lazy,
         DecisionPolicy::constant_ph(0.3, RegretRule::Simplified)},
        {"rational-adaptive", EvalMode::Lazy, DecisionPolicy::adaptive(0.5)},
    };
}

// --------------------------------------------------------------------------
// 1. Tiles optimality against the exhaustive 8-puzzle oracle.
// --------------------------------------------------------------------------
bool check_tiles_oracle(std::string& detail) {
    auto timing = TimingModel::fixed(1.0, 11.0, 1.0);
    for (auto model : {TileCostModel::Unit, TileCostModel::Weighted}) {
        oracles::EightPuzzleOracle oracle(model, GoalConvention::BlankFirst);
        TileGoal goal(3, 3, GoalConvention::BlankFirst);
        std::mt19937_64 rng(2024);
        int tested = 0;
        while (tested < 500) {
            TileBoard b;
            b.rows = b.cols = 3;
            b.cells = {0, 1, 2, 3, 4, 5, 6, 7, 8};
            std::shuffle(b.cells.begin(), b.cells.end(), rng);
            for (int i = 0; i < 9; ++i)
                if (b.cells[i] == 0) b.blank = i;
            if (!is_solvable(b, goal)) continue;
            ++tested;
            Cost opt = oracle.cost_of(b);
            TileDomain dom(b, model, GoalConvention::BlankFirst);
            for (const auto& cfg : all_configs()) {
                auto r = ida_star(dom, cfg.mode, cfg.policy, timing);
                if (!r.solved() || r.solution->cost != opt) {
                    detail = std::string(cfg.name) + " returned " +
                             (r.solved() ? std::to_string(r.solution->cost) : "no solution") +
                             ", oracle says " + std::to_string(opt) + " on " + format_instance(b);
                    return false;
                }
            }
        }
    }
    detail = "500 sampled states x 8 configurations x 2 cost models, all optimal";
    return true;
}

// --------------------------------------------------------------------------
// 2. CRP optimality on every layout with S<=3, T<=3, N<=6.
// --------------------------------------------------------------------------
void compositions(int slots, int tier, int remaining, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (slots == 0) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    for (int k = 0; k <= std::min(tier, remaining); ++k) {
        cur.push_back(k);
        compositions(slots - 1, tier, remaining - k, cur, out);
        cur.pop_back();
    }
}

bool check_crp_oracle(std::string& detail) {
    auto timing = TimingModel::fixed(1.0, 3.0, 2.0);
    long instances = 0;
    for (int s = 1; s <= 3; ++s) {
        for (int t = 1; t <= 3; ++t) {
            for (int n = 1; n <= std::min(6, s * t); ++n) {
                std::vector<std::vector<int>> comps;
                std::vector<int> cur;
                compositions(s, t, n, cur, comps);
                std::vector<int> perm(n);
                for (const auto& comp : comps) {
                    for (int i = 0; i < n; ++i) perm[i] = i + 1;
                    do {
                        crp::CrpInstance inst;
                        inst.n_stacks = s;
                        inst.tier_limit = t;
                        inst.n_containers = n;
                        int pos = 0;
                        for (int k : comp) {
                            inst.layout.emplace_back(perm.begin() + pos, perm.begin() + pos + k);
                            pos += k;
                        }
                        ++instances;

                        crp::CrpDomain dom(inst);
                        auto oracle = oracles::crp_oracle(dom);
                        for (const auto& st : oracle.visited) {
                            auto it = oracle.remaining.find(st.key());
                            Cost l1 = crp::lb1(st), l3 = crp::lb3(st);
                            if (l1 > l3 || (it != oracle.remaining.end() && l3 > it->second)) {
                                detail = "lower-bound violation on state " + st.key();
                                return false;
                            }
                        }
                        for (const auto& cfg : all_configs()) {
                            auto r = ida_star(dom, cfg.mode, cfg.policy, timing);
                            if (oracle.optimal) {
                                if (!r.solved() || r.solution->cost != *oracle.optimal) {
                                    detail = std::string(cfg.name) + " missed optimum " +
                                             std::to_string(*oracle.optimal) + " on\n" +
                                             crp::format_crp_instance(inst);
                                    return false;
                                }
                            } else if (r.outcome != SearchOutcome::Unsolvable) {
                                detail = std::string(cfg.name) +
                                         " failed to report unsolvable on\n" +
                                         crp::format_crp_instance(inst);
                                return false;
                            }
                        }
                    } while (std::next_permutation(perm.begin(), perm.end()));
                }
            }
        }
    }
    if (instances < 1000) {
        detail = "only " + std::to_string(instances) + " enumerated instances";
        return false;
    }
    detail = std::to_string(instances) + " enumerated instances, 8 configurations each";
    return true;
}

// --------------------------------------------------------------------------
// 3. Lazy always-evaluate parity with eager-max IDA*.
// --------------------------------------------------------------------------
bool check_lazy_parity(std::string& detail) {
    SearchConfig cap;
    cap.node_cap = 5'000'000;
    int solved = 0, anomalies = 0;
    for (std::uint64_t seed = 0; solved < 100 && seed < 400; ++seed) {
        int steps = 30 + static_cast<int>(seed % 21);
        TileDomain dom(random_walk_instance(4, 4, steps, seed), TileCostModel::Unit,
                       GoalConvention::BlankFirst);
        auto lazy = ida_star(dom, EvalMode::Lazy, DecisionPolicy::always(),
                             TimingModel::fixed(1, 11, 1), cap);
        auto eager = ida_star(dom, EvalMode::EagerMax, DecisionPolicy::always(),
                              TimingModel::fixed(1, 11, 1), cap);
        if (!lazy.solved() || !eager.solved()) continue;
        ++solved;
        if (lazy.solution->cost != eager.solution->cost) {
            detail = "cost mismatch at seed " + std::to_string(seed);
            return false;
        }
        if (lazy.stats.iterations < eager.stats.iterations) {
            detail = "lazy ran fewer iterations at seed " + std::to_string(seed);
            return false;
        }
        bool diverged = lazy.stats.generated != eager.stats.generated ||
                        lazy.stats.iterations > eager.stats.iterations;
        if (diverged && !lazy.stats.h1_set_threshold) {
            detail = "unflagged divergence at seed " + std::to_string(seed) + ": generated " +
                     std::to_string(lazy.stats.generated) + " vs " +
                     std::to_string(eager.stats.generated);
            return false;
        }
        if (diverged) ++anomalies;
    }
    if (solved < 100) {
        detail = "only " + std::to_string(solved) + " instances solved under the cap";
        return false;
    }
    detail = "100 instances, " + std::to_string(anomalies) + " flagged extra-iteration anomalies";
    return true;
}

// --------------------------------------------------------------------------
// 4 + 5. Direction of effect on 15-puzzle suites with calibrated timings.
// --------------------------------------------------------------------------
struct SuiteTotals {
    std::uint64_t lida_h2 = 0, lida_helpful = 0, lida_generated = 0;
    std::uint64_t rl_h2 = 0, rl_helpful = 0, rl_generated = 0;
    int instances = 0;
    bool lc_beats_md = true;
    std::string lc_detail;
};

SuiteTotals run_15puzzle_suite() {
    std::mt19937_64 cal_rng(1);
    TileDomain cal_dom(random_walk_instance(4, 4, 50, 0), TileCostModel::Unit,
                       GoalConvention::BlankFirst);
    auto timing = calibrate_timing(
        cal_dom, [&] { return random_walk_instance(4, 4, 60, cal_rng()); }, 1000);

    SearchConfig cap;
    cap.node_cap = 5'000'000;
    SuiteTotals tot;
    for (std::uint64_t seed = 1000; tot.instances < 20 && seed < 1200; ++seed) {
        int steps = 40 + static_cast<int>(seed % 21);
        auto b = random_walk_instance(4, 4, steps, seed);
        TileDomain unit(b, TileCostModel::Unit, GoalConvention::BlankFirst);
        TileDomain weighted(b, TileCostModel::Weighted, GoalConvention::BlankFirst);

        auto md_u = ida_star(unit, EvalMode::H1Only, DecisionPolicy::always(), timing, cap);
        auto lc_u = ida_star(unit, EvalMode::H2Only, DecisionPolicy::always(), timing, cap);
        auto md_w = ida_star(weighted, EvalMode::H1Only, DecisionPolicy::always(), timing, cap);
        auto lc_w = ida_star(weighted, EvalMode::H2Only, DecisionPolicy::always(), timing, cap);
        auto lida = ida_star(unit, EvalMode::Lazy, DecisionPolicy::always(), timing, cap);
        auto rl = ida_star(unit, EvalMode::Lazy, DecisionPolicy::constant_ph(0.3), timing, cap);
        if (!md_u.solved() || !lc_u.solved() || !md_w.solved() || !lc_w.solved() ||
            !lida.solved() || !rl.solved())
            continue;
        ++tot.instances;

        if (lc_u.stats.generated >= md_u.stats.generated ||
            lc_w.stats.generated >= md_w.stats.generated) {
            tot.lc_beats_md = false;
            tot.lc_detail = "seed " + std::to_string(seed) + ": LC generated " +
                            std::to_string(lc_u.stats.generated) + "/" +
                            std::to_string(lc_w.stats.generated) + " vs MD " +
                            std::to_string(md_u.stats.generated) + "/" +
                            std::to_string(md_w.stats.generated);
        }
        tot.lida_h2 += lida.stats.h2_evals;
        tot.lida_helpful += lida.stats.h2_helpful;
        tot.lida_generated += lida.stats.generated;
        tot.rl_h2 += rl.stats.h2_evals;
        tot.rl_helpful += rl.stats.h2_helpful;
        tot.rl_generated += rl.stats.generated;
    }
    return tot;
}

bool check_direction_of_effect(const SuiteTotals& tot, std::string& detail) {
    if (tot.instances < 20) {
        detail = "only " + std::to_string(tot.instances) + " instances solved under the cap";
        return false;
    }
    double lida_ratio =
        static_cast<double>(tot.lida_helpful) / static_cast<double>(tot.lida_h2);
    double rl_ratio = static_cast<double>(tot.rl_helpful) / static_cast<double>(tot.rl_h2);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "h2 %llu vs %llu, generated %llu vs %llu, helpful ratio %.3f vs %.3f",
                  static_cast<unsigned long long>(tot.rl_h2),
                  static_cast<unsigned long long>(tot.lida_h2),
                  static_cast<unsigned long long>(tot.rl_generated),
                  static_cast<unsigned long long>(tot.lida_generated), rl_ratio, lida_ratio);
    detail = buf;
    return tot.rl_h2 < tot.lida_h2 && tot.rl_generated >= tot.lida_generated &&
           rl_ratio > lida_ratio;
}

bool check_heuristic_ordering(const SuiteTotals& tot, std::string& detail) {
    if (tot.instances < 20) {
        detail = "suite too small";
        return false;
    }
    detail = tot.lc_beats_md
                 ? std::to_string(tot.instances) + " instances, LC < MD generated on each, "
                                                   "unit and weighted"
                 : tot.lc_detail;
    return tot.lc_beats_md;
}

// --------------------------------------------------------------------------
// 6. Bound formulas against the high-precision scalar oracle.
// --------------------------------------------------------------------------
bool check_bound_exactness(std::string& detail) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double tol = 1e-12;
    int exact_form = 0;
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 1 + static_cast<std::uint64_t>(u(rng) * 5000);
        double mean = u(rng) * 0.8;
        double l = mean + 1e-3 + u(rng) * (1.0 - mean - 1e-3);
        SampleHistory h{n, mean * static_cast<double>(n)};

        double b_star = bound_p_h(h, l);
        long double o_star = oracles::scalar_b_star(n, l, mean);
        if (b_star < 0.0 || b_star > 1.0 ||
            std::abs(b_star - static_cast<double>(o_star)) > tol) {
            detail = "bound_p_h mismatch at n=" + std::to_string(n);
            return false;
        }

        double a = bound_alpha_star(n, l, mean).value();
        if (std::abs(a - static_cast<double>(oracles::scalar_alpha_star(n, l, mean))) > tol) {
            detail = "bound_alpha_star mismatch at n=" + std::to_string(n);
            return false;
        }

        double alpha = u(rng);
        double b_of = bound_b_of_alpha(alpha, n, l, mean).value();
        if (std::abs(b_of - static_cast<double>(oracles::scalar_b_of_alpha(alpha, n, l, mean))) >
            tol) {
            detail = "bound_b_of_alpha mismatch at n=" + std::to_string(n);
            return false;
        }

        // closed form equals the curve at alpha* wherever no clamp fires
        double two_n = 2.0 * static_cast<double>(n);
        double s = std::sqrt(two_n) * l;
        bool log_clamped = s <= 1.0;
        bool alpha_clamped =
            !log_clamped && std::sqrt(std::log(s) / two_n) / (l - mean) > 1.0;
        bool value_clamped = bound_p_h(h, l) >= 1.0;
        if (!log_clamped && !alpha_clamped && !value_clamped) {
            double at_star = bound_b_of_alpha(a, n, l, mean).value();
            if (std::abs(b_star - at_star) > tol) {
                detail = "closed form != B(alpha*) at n=" + std::to_string(n);
                return false;
            }
            ++exact_form;
        }
    }
    // degenerate inputs clamp to the safe value 1
    SampleHistory none;
    if (bound_p_h(none, 0.5) != 1.0 || bound_p_h(SampleHistory{5, 4.0}, 0.0) != 1.0) {
        detail = "degenerate inputs must map to 1";
        return false;
    }
    detail = "1000-point grid within 1e-12; closed form exact on " +
             std::to_string(exact_form) + " unclamped points";
    return true;
}

// --------------------------------------------------------------------------
// 7. Decision rule agrees with the raw regret comparison.
// --------------------------------------------------------------------------
bool check_decision_algebra(std::string& detail) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> ub(0, 8);
    int checked = 0;
    while (checked < 10000) {
        RegretInputs in{u(rng), ub(rng), u(rng) * 10, u(rng) * 50, u(rng) * 10};
        if (in.ph * in.b >= 1.0) continue;
        ++checked;
        bool rule = should_evaluate_h2(DecisionPolicy::constant_ph(in.ph), in.ph, in.b,
                                       TimingModel::fixed(in.t1, in.t2, in.te));
        bool regret = regret_compute(in) < regret_bypass(in);
        if (rule != regret) {
            detail = "disagreement at ph=" + std::to_string(in.ph) + " b=" +
                     std::to_string(in.b);
            return false;
        }
    }
    detail = "10000 randomized inputs with ph*b < 1, exact agreement";
    return true;
}

// --------------------------------------------------------------------------
// 8. Clairvoyant estimate bounds measured lazy time.
// --------------------------------------------------------------------------
bool check_clairvoyant(std::string& detail) {
    std::mt19937_64 rng(3);
    TileDomain cal(random_walk_instance(3, 4, 30, 0), TileCostModel::Unit,
                   GoalConvention::BlankFirst);
    auto timing = calibrate_timing(
        cal, [&] { return random_walk_instance(3, 4, 40, rng()); }, 500);

    std::vector<bench::BenchInstance<TileDomain>> instances;
    for (std::uint64_t seed = 0; seed < 6; ++seed)
        instances.push_back({"i" + std::to_string(seed),
                             TileDomain(random_walk_instance(3, 4, 34, seed),
                                        TileCostModel::Unit, GoalConvention::BlankFirst),
                             seed});
    auto report =
        bench::run_suite(instances, bench::default_algorithms(), bench::BenchLimits{}, timing);
    int checked = 0;
    for (const auto& rec : report.detail) {
        if (rec.algorithm != "LIDA*") continue;
        SearchStats st;
        st.h2_evals = rec.h2_evals;
        st.h2_helpful = rec.h2_helpful;
        st.wall_time_s = rec.wall_time_s;
        if (bench::clairvoyant_estimate(st, timing) > rec.wall_time_s) {
            detail = "estimate above measurement on " + rec.instance_id;
            return false;
        }
        ++checked;
    }
    if (checked == 0) {
        detail = "no lazy runs in the report";
        return false;
    }
    // all-helpful runs: the estimate equals the measurement exactly
    SearchStats st;
    st.h2_evals = st.h2_helpful = 12345;
    st.wall_time_s = 0.75;
    if (bench::clairvoyant_estimate(st, timing) != 0.75) {
        detail = "all-helpful estimate must equal the measured time";
        return false;
    }
    detail = std::to_string(checked) + " lazy benchmark runs bounded; all-helpful case exact";
    return true;
}

// --------------------------------------------------------------------------
// 9. Tile decision rule fires only at b = 3 under the canonical timings.
// --------------------------------------------------------------------------
bool check_tile_rule_reduction(std::string& detail) {
    auto timing = TimingModel::fixed(1.0, 11.0, 1.0);
    auto policy = DecisionPolicy::constant_ph(0.3);
    struct Row {
        int b;
        bool expect;
    } table[] = {{1, false}, {2, false}, {3, true}};
    for (const auto& row : table) {
        if (should_evaluate_h2(policy, 0.3, row.b, timing) != row.expect) {
            detail = "unexpected decision at b=" + std::to_string(row.b);
            return false;
        }
    }
    detail = "t1=1 t2=11 te=1 ph=0.3: bypass at b=1,2; evaluate at b=3 (11 < 12)";
    return true;
}

int report(const char* name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %s — %s (%.1fs)\n", pass ? "PASS" : "FAIL", name, detail.c_str(), seconds);
    std::fflush(stdout);
    return pass ? 0 : 1;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    int failures = 0;
    std::string detail;

    auto timed = [&](const char* name, auto&& fn) {
        auto t0 = Clock::now();
        detail.clear();
        bool ok = fn(detail);
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        failures += report(name, ok, detail, s);
    };

    timed("tiles-optimality-oracle", check_tiles_oracle);
    timed("crp-optimality-oracle", check_crp_oracle);
    timed("lazy-parity", check_lazy_parity);

    auto t0 = Clock::now();
    auto totals = run_15puzzle_suite();
    double suite_s = std::chrono::duration<double>(Clock::now() - t0).count();
    detail.clear();
    bool dir = check_direction_of_effect(totals, detail);
    failures += report("direction-of-effect", dir, detail, suite_s);
    detail.clear();
    bool ord = check_heuristic_ordering(totals, detail);
    failures += report("heuristic-ordering", ord, detail, 0.0);

    timed("bound-exactness", check_bound_exactness);
    timed("decision-rule-algebra", check_decision_algebra);
    timed("clairvoyant-bound", check_clairvoyant);
    timed("tile-rule-reduction", check_tile_rule_reduction);

    if (failures > 0) std::printf("%d acceptance check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
