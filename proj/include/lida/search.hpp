#ifndef LIDA_SEARCH_HPP
#define LIDA_SEARCH_HPP

#include <cassert>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lida/metareason.hpp"
#include "lida/types.hpp"

namespace lida {

template <class D>
struct Successor {
    typename D::State state;
    Cost cost;
    typename D::Move move;
};

// Contract the iterative-deepening driver is written against. Successor
// lists are deterministically ordered and already parent-pruned; h1 is the
// cheap heuristic, h2 the informed one; both admissible.
template <class D>
concept SearchDomain = requires(const D d, const typename D::State& s,
                                const std::optional<typename D::Move>& incoming) {
    typename D::State;
    typename D::Move;
    { d.initial() } -> std::convertible_to<typename D::State>;
    { d.is_goal(s) } -> std::convertible_to<bool>;
    { d.successors(s, incoming) } -> std::convertible_to<std::vector<Successor<D>>>;
    { d.h1(s) } -> std::convertible_to<Cost>;
    { d.h2(s) } -> std::convertible_to<Cost>;
    { d.branching(s, incoming) } -> std::convertible_to<int>;
};

// Which heuristics a run consults.
//   H1Only / H2Only: plain IDA* with a single heuristic.
//   EagerMax:        IDA* evaluating both and comparing max(f1,f2) to T.
//   Lazy:            the lazy scheme; h2 gated by the decision policy.
enum class EvalMode { H1Only, H2Only, EagerMax, Lazy };

enum class SearchOutcome {
    Solved,
    Unsolvable,        // threshold reached infinity
    NodeCapExceeded,
    TimeCapExceeded,
    DepthCapExceeded,
};

inline bool is_resource_limit(SearchOutcome o) {
    return o == SearchOutcome::NodeCapExceeded || o == SearchOutcome::TimeCapExceeded ||
           o == SearchOutcome::DepthCapExceeded;
}

struct SearchConfig {
    std::uint64_t node_cap = 0;  // 0 = unlimited, counted on generated nodes
    double time_cap_s = 0.0;     // 0 = unlimited
    int depth_cap = 1 << 16;     // recursion bound
};

struct SearchStats {
    std::uint64_t generated = 0;  // root plus every constructed successor
    std::uint64_t expanded = 0;
    std::uint64_t h1_evals = 0;
    std::uint64_t h2_evals = 0;
    std::uint64_t h2_helpful = 0;  // h2 computed and g + h2 > threshold
    std::uint64_t iterations = 0;
    double wall_time_s = 0.0;
    std::vector<Cost> thresholds;  // per iteration, strictly increasing

    // True when some iteration's adopted next-threshold came from a node
    // pruned on f1 with h2 never consulted there. Only such iterations can
    // make a lazy run diverge from eager-max IDA* (the extra-iteration
    // anomaly); the flag is a conservative detector.
    bool h1_set_threshold = false;
};

template <class Move>
struct Solution {
    std::vector<Move> path;
    Cost cost = 0;
};

template <class Move>
struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Unsolvable;
    std::optional<Solution<Move>> solution;
    SearchStats stats;
    SampleHistory samples;
    TimingModel timing;  // final model (updated in online-ema mode)

    bool solved() const { return outcome == SearchOutcome::Solved; }
};

// Threshold for the first iteration: max of both root heuristic values.
template <SearchDomain D>
Cost initial_threshold(const D& domain) {
    auto root = domain.initial();
    return std::max(domain.h1(root), domain.h2(root));
}

template <SearchDomain D>
class IdaStar {
  public:
    using State = typename D::State;
    using Move = typename D::Move;
    using Result = SearchResult<Move>;

    IdaStar(const D& domain, EvalMode mode, DecisionPolicy policy = DecisionPolicy::always(),
            TimingModel timing = TimingModel::fixed(1.0, 1.0, 1.0), SearchConfig config = {})
        : domain_(domain), mode_(mode), policy_(policy), timing_(timing), config_(config) {}

    Result run() {
        start_ = Clock::now();
        result_ = Result{};
        result_.timing = timing_;
        found_ = false;
        aborted_ = false;
        path_.clear();

        State root = domain_.initial();
        Cost threshold = root_threshold(root);

        while (!found_ && !aborted_ && threshold < kInfiniteCost) {
            ++stats().iterations;
            stats().thresholds.push_back(threshold);
            auto r = dfs(root, 0, std::nullopt, threshold, 0);
            if (found_ || aborted_) break;
            assert(r.next > threshold);
            if (r.next < kInfiniteCost && r.h1_pruned) stats().h1_set_threshold = true;
            threshold = r.next;
        }

        if (found_) {
            result_.outcome = SearchOutcome::Solved;
            result_.solution = Solution<Move>{path_, goal_cost_};
        } else if (!aborted_) {
            result_.outcome = SearchOutcome::Unsolvable;
        }
        result_.timing = timing_;
        stats().wall_time_s = elapsed_s();
        return std::move(result_);
    }

  private:
    using Clock = std::chrono::steady_clock;

    struct DfsResult {
        Cost next;        // minimum f observed strictly above the threshold
        bool h1_pruned;   // that minimum came from an f1 prune with h2 skipped
    };

    SearchStats& stats() { return result_.stats; }

    double elapsed_s() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

    Cost eval_h1(const State& s) {
        ++stats().h1_evals;
        if (timing_.mode == TimingMode::OnlineEma) {
            auto t0 = Clock::now();
            Cost v = domain_.h1(s);
            observe_timing(timing_, TimingEvent::H1,
                           std::chrono::duration<double>(Clock::now() - t0).count());
            return v;
        }
        return domain_.h1(s);
    }

    Cost eval_h2(const State& s) {
        ++stats().h2_evals;
        if (timing_.mode == TimingMode::OnlineEma) {
            auto t0 = Clock::now();
            Cost v = domain_.h2(s);
            observe_timing(timing_, TimingEvent::H2,
                           std::chrono::duration<double>(Clock::now() - t0).count());
            return v;
        }
        return domain_.h2(s);
    }

    void record_dual(Cost h1v, Cost h2v) {
        if (auto x = sample_x(h1v, h2v)) record_sample(result_.samples, *x);
    }

    Cost root_threshold(const State& root) {
        stats().generated = 1;
        switch (mode_) {
            case EvalMode::H1Only:
                return eval_h1(root);
            case EvalMode::H2Only:
                return eval_h2(root);
            case EvalMode::EagerMax:
            case EvalMode::Lazy: {
                Cost a = eval_h1(root);
                Cost b = eval_h2(root);
                record_dual(a, b);
                return std::max(a, b);
            }
        }
        return 0;
    }

    double effective_ph(double l) const {
        switch (policy_.kind) {
            case DecisionPolicy::Kind::ConstantPh:
                return policy_.ph;
            case DecisionPolicy::Kind::AdaptiveBound:
                return std::min(bound_p_h(result_.samples, l), policy_.cap);
            default:
                return 1.0;  // Always/Never short-circuit inside should_evaluate_h2
        }
    }

    bool over_limits() {
        if (config_.node_cap != 0 && stats().generated > config_.node_cap) {
            abort(SearchOutcome::NodeCapExceeded);
            return true;
        }
        if (config_.time_cap_s > 0.0 && (stats().expanded & 0xFFF) == 0 &&
            elapsed_s() > config_.time_cap_s) {
            abort(SearchOutcome::TimeCapExceeded);
            return true;
        }
        return false;
    }

    void abort(SearchOutcome outcome) {
        aborted_ = true;
        result_.outcome = outcome;
    }

    DfsResult dfs(const State& n, Cost g, const std::optional<Move>& incoming, Cost threshold,
                  int depth) {
        if (g > threshold) return {g, false};
        if (domain_.is_goal(n)) {
            found_ = true;
            goal_cost_ = g;
            return {kInfiniteCost, false};
        }

        switch (mode_) {
            case EvalMode::H1Only: {
                Cost f = sat_add(g, eval_h1(n));
                if (f > threshold) return {f, false};
                break;
            }
            case EvalMode::H2Only: {
                Cost f = sat_add(g, eval_h2(n));
                if (f > threshold) return {f, false};
                break;
            }
            case EvalMode::EagerMax: {
                Cost h1v = eval_h1(n);
                Cost h2v = eval_h2(n);
                record_dual(h1v, h2v);
                if (sat_add(g, h2v) > threshold) ++stats().h2_helpful;
                Cost f = sat_add(g, std::max(h1v, h2v));
                if (f > threshold) return {f, false};
                break;
            }
            case EvalMode::Lazy: {
                Cost h1v = eval_h1(n);
                Cost f1 = sat_add(g, h1v);
                if (f1 > threshold) return {f1, true};
                int b = domain_.branching(n, incoming);
                double l = helpful_level(h1v, g, threshold);
                if (should_evaluate_h2(policy_, effective_ph(l), b, timing_)) {
                    Cost h2v = eval_h2(n);
                    record_dual(h1v, h2v);
                    Cost f2 = sat_add(g, h2v);
                    if (f2 > threshold) {
                        ++stats().h2_helpful;
                        return {f2, false};
                    }
                }
                break;
            }
        }

        if (depth >= config_.depth_cap) {
            abort(SearchOutcome::DepthCapExceeded);
            return {kInfiniteCost, false};
        }

        ++stats().expanded;
        std::vector<Successor<D>> succs;
        if (timing_.mode == TimingMode::OnlineEma) {
            auto t0 = Clock::now();
            succs = domain_.successors(n, incoming);
            // te models "evaluate h1 and expand": expansion time plus one h1.
            observe_timing(timing_, TimingEvent::Expand,
                           std::chrono::duration<double>(Clock::now() - t0).count() + timing_.t1);
        } else {
            succs = domain_.successors(n, incoming);
        }
        stats().generated += succs.size();
        if (over_limits()) return {kInfiniteCost, false};

        Cost next = kInfiniteCost;
        bool h1_pruned = false;
        for (const auto& succ : succs) {
            path_.push_back(succ.move);
            DfsResult r = dfs(succ.state, g + succ.cost, succ.move, threshold, depth + 1);
            if (found_) return r;
            if (aborted_) return {kInfiniteCost, false};
            path_.pop_back();
            if (r.next < next) {
                next = r.next;
                h1_pruned = r.h1_pruned;
            } else if (r.next == next) {
                h1_pruned = h1_pruned || r.h1_pruned;
            }
        }
        return {next, h1_pruned};
    }

    const D& domain_;
    EvalMode mode_;
    DecisionPolicy policy_;
    TimingModel timing_;
    SearchConfig config_;

    Result result_;
    std::vector<Move> path_;
    Cost goal_cost_ = 0;
    bool found_ = false;
    bool aborted_ = false;
    Clock::time_point start_;
};

// Convenience wrapper covering the common case.
template <SearchDomain D>
SearchResult<typename D::Move> ida_star(const D& domain, EvalMode mode,
                                        DecisionPolicy policy = DecisionPolicy::always(),
                                        TimingModel timing = TimingModel::fixed(1.0, 1.0, 1.0),
                                        SearchConfig config = {}) {
    return IdaStar<D>(domain, mode, policy, timing, config).run();
}

// Fixed timing constants measured by batch-evaluating both heuristics and
// successor generation on sampled states. StateSampler: () -> D::State.
template <SearchDomain D, class StateSampler>
TimingModel calibrate_timing(const D& domain, StateSampler&& sample, int n_states = 1000) {
    using Clock = std::chrono::steady_clock;
    std::vector<typename D::State> states;
    states.reserve(n_states);
    for (int i = 0; i < n_states; ++i) states.push_back(sample());

    volatile Cost sink = 0;
    auto t0 = Clock::now();
    for (const auto& s : states) sink = sink + domain.h1(s);
    auto t1 = Clock::now();
    for (const auto& s : states) sink = sink + domain.h2(s);
    auto t2 = Clock::now();
    std::size_t n_succ = 0;
    for (const auto& s : states) n_succ += domain.successors(s, std::nullopt).size();
    auto t3 = Clock::now();
    (void)sink;
    (void)n_succ;

    double inv = 1.0 / static_cast<double>(n_states);
    double mean_h1 = std::chrono::duration<double>(t1 - t0).count() * inv;
    double mean_h2 = std::chrono::duration<double>(t2 - t1).count() * inv;
    double mean_expand = std::chrono::duration<double>(t3 - t2).count() * inv;
    return TimingModel::fixed(mean_h1, mean_h2, mean_expand + mean_h1);
}

}  // namespace lida

#endif  // LIDA_SEARCH_HPP
