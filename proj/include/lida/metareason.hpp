#ifndef LIDA_METAREASON_HPP
#define LIDA_METAREASON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "lida/types.hpp"

namespace lida {

// ---------------------------------------------------------------------------
// Decision policies for the optional h2-evaluation condition.
// ---------------------------------------------------------------------------

enum class RegretRule {
    FullRegret,  // evaluate iff t2 < ph/(1 - ph*b) * (te + b*t1), plus the ph*b >= 1 short-circuit
    Simplified,  // evaluate iff ph*b >= 1
};

struct DecisionPolicy {
    enum class Kind {
        AlwaysEvaluate,
        NeverEvaluate,
        ConstantPh,
        AdaptiveBound,
    };

    Kind kind = Kind::AlwaysEvaluate;
    double ph = 0.3;                         // ConstantPh
    double cap = 0.5;                        // AdaptiveBound: effective ph = min(bound, cap)
    RegretRule rule = RegretRule::FullRegret;

    static DecisionPolicy always() { return {Kind::AlwaysEvaluate, 0.0, 0.0, RegretRule::FullRegret}; }
    static DecisionPolicy never() { return {Kind::NeverEvaluate, 0.0, 0.0, RegretRule::FullRegret}; }
    static DecisionPolicy constant_ph(double p, RegretRule r = RegretRule::FullRegret) {
        return {Kind::ConstantPh, p, 0.0, r};
    }
    static DecisionPolicy adaptive(double cap, RegretRule r = RegretRule::FullRegret) {
        return {Kind::AdaptiveBound, 0.0, cap, r};
    }
};

// ---------------------------------------------------------------------------
// Timing model: mean evaluation/expansion times feeding the regret rule.
// ---------------------------------------------------------------------------

enum class TimingMode { FixedConstants, OnlineEma };
enum class TimingEvent { H1, H2, Expand };

struct TimingModel {
    double t1 = 1.0;   // mean h1 evaluation time
    double t2 = 1.0;   // mean h2 evaluation time
    double te = 1.0;   // mean time to evaluate h1 and expand a node
    TimingMode mode = TimingMode::FixedConstants;
    double decay = 0.01;  // EMA weight of the newest observation

    static TimingModel fixed(double t1, double t2, double te) {
        return {t1, t2, te, TimingMode::FixedConstants, 0.0};
    }
    static TimingModel online_ema(double decay, double t1 = 1.0, double t2 = 1.0, double te = 1.0) {
        return {t1, t2, te, TimingMode::OnlineEma, decay};
    }
};

inline void observe_timing(TimingModel& timing, TimingEvent event, double duration) {
    if (timing.mode != TimingMode::OnlineEma) return;
    auto update = [&](double& estimate) {
        estimate = (1.0 - timing.decay) * estimate + timing.decay * duration;
    };
    switch (event) {
        case TimingEvent::H1: update(timing.t1); break;
        case TimingEvent::H2: update(timing.t2); break;
        case TimingEvent::Expand: update(timing.te); break;
    }
}

// ---------------------------------------------------------------------------
// Regret rule. Losses per decision/outcome:
//   compute h2, not helpful:  t2
//   bypass h2, helpful:       te + b*t1 + (b-1)*t2
// ---------------------------------------------------------------------------

struct RegretInputs {
    double ph = 0.0;  // probability that evaluating h2 prunes the node
    int b = 0;        // local branching factor after parent pruning
    double t1 = 0.0;
    double t2 = 0.0;
    double te = 0.0;
};

// Expected regret of computing h2.
inline double regret_compute(const RegretInputs& in) {
    return (1.0 - in.ph) * in.t2;
}

// Expected regret of bypassing h2.
inline double regret_bypass(const RegretInputs& in) {
    return in.ph * (in.te + in.b * in.t1 + (in.b - 1) * in.t2);
}

// Decide whether to evaluate h2 given an effective ph. For ph*b >= 1 the
// bypass regret dominates for any timings, so evaluation is forced; below
// that the simplified rule bypasses and the full rule compares timings.
inline bool should_evaluate_h2(const DecisionPolicy& policy, double ph, int b,
                               const TimingModel& timing) {
    switch (policy.kind) {
        case DecisionPolicy::Kind::AlwaysEvaluate: return true;
        case DecisionPolicy::Kind::NeverEvaluate: return false;
        default: break;
    }
    if (ph * b >= 1.0) return true;
    if (policy.rule == RegretRule::Simplified) return false;
    return timing.t2 < ph / (1.0 - ph * b) * (timing.te + b * timing.t1);
}

// ---------------------------------------------------------------------------
// Concentration-bound estimate of ph from dual-evaluation samples.
//   x = 1 - h1/max(h1,h2)           in [0,1]
//   l = 1 - h1/(T-g)                h2 helpful iff x > l
// ---------------------------------------------------------------------------

struct SampleHistory {
    std::uint64_t n = 0;
    double sum_x = 0.0;

    double mean() const { return n == 0 ? 0.0 : sum_x / static_cast<double>(n); }
};

inline void record_sample(SampleHistory& history, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("record_sample: x outside [0,1]");
    ++history.n;
    history.sum_x += x;
}

// No sample is defined when both heuristics are zero.
inline std::optional<double> sample_x(Cost h1, Cost h2) {
    Cost m = std::max(h1, h2);
    if (m == 0) return std::nullopt;
    return 1.0 - static_cast<double>(h1) / static_cast<double>(m);
}

// Precondition: the node survived the f1 prune, so h1 <= threshold - g.
inline double helpful_level(Cost h1, Cost g, Cost threshold) {
    Cost slack = threshold - g;
    if (slack <= 0) return 0.0;  // only reachable with h1 == 0
    return 1.0 - static_cast<double>(h1) / static_cast<double>(slack);
}

// Near-minimizer of B(alpha), clamped to [0,1]. Uninformative when the
// sample mean already reaches the level.
inline std::optional<double> bound_alpha_star(std::uint64_t n, double l, double mean_x) {
    if (l <= mean_x) return std::nullopt;
    double two_n = 2.0 * static_cast<double>(n);
    double log_term = std::log(std::sqrt(two_n) * l);
    double alpha = std::sqrt(std::max(0.0, log_term) / two_n) / (l - mean_x);
    return std::clamp(alpha, 0.0, 1.0);
}

// Hoeffding + Markov bound as a function of the interpolation weight alpha.
inline std::optional<double> bound_b_of_alpha(double alpha, std::uint64_t n, double l,
                                              double mean_x) {
    if (l <= 0.0) return std::nullopt;
    double two_n = 2.0 * static_cast<double>(n);
    double hoeffding = std::exp(-two_n * (alpha * (l - mean_x)) * (alpha * (l - mean_x)));
    double markov = ((1.0 - alpha) * mean_x + alpha * l) / l;
    return hoeffding + markov;
}

// Closed-form B* upper bound on ph, clamped into [0,1]. Every degenerate
// input maps to 1, forcing evaluation.
inline double bound_p_h(const SampleHistory& history, double l) {
    if (history.n == 0 || l <= 0.0) return 1.0;
    double mean = history.mean();
    double s = std::sqrt(2.0 * static_cast<double>(history.n)) * l;
    double b1 = (1.0 + std::sqrt(std::max(0.0, std::log(s)))) / s;
    double b2 = mean / l;
    return std::min(1.0, b1 + b2);
}

}  // namespace lida

#endif  // LIDA_METAREASON_HPP
