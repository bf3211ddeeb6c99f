#ifndef LIDA_CLI_HPP
#define LIDA_CLI_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "lida/metareason.hpp"

namespace lida::cli {

// Stable exit codes; usage errors surface through the argument parser.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnsolvable = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitParseError = 4;
inline constexpr int kExitUsage = 64;

// Grammar: always | never | const:<p>[:simplified] | adaptive:<cap>[:simplified]
inline DecisionPolicy parse_policy_spec(const std::string& spec) {
    auto fail = [&]() -> DecisionPolicy {
        throw std::invalid_argument("bad policy spec '" + spec +
                                    "' (always | never | const:<p>[:simplified] | "
                                    "adaptive:<cap>[:simplified])");
    };
    if (spec == "always") return DecisionPolicy::always();
    if (spec == "never") return DecisionPolicy::never();

    auto colon = spec.find(':');
    if (colon == std::string::npos) return fail();
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    RegretRule rule = RegretRule::FullRegret;
    auto colon2 = rest.find(':');
    if (colon2 != std::string::npos) {
        std::string tag = rest.substr(colon2 + 1);
        if (tag != "simplified") return fail();
        rule = RegretRule::Simplified;
        rest = rest.substr(0, colon2);
    }
    double value;
    try {
        std::size_t used = 0;
        value = std::stod(rest, &used);
        if (used != rest.size()) return fail();
    } catch (const std::exception&) {
        return fail();
    }
    if (value < 0.0 || value > 1.0)
        throw std::invalid_argument("policy parameter must be in [0,1]: " + spec);
    if (head == "const") return DecisionPolicy::constant_ph(value, rule);
    if (head == "adaptive") return DecisionPolicy::adaptive(value, rule);
    return fail();
}

struct TimingSpec {
    enum class Kind { Calibrate, Fixed, Ema };
    Kind kind = Kind::Calibrate;
    double t1 = 1.0, t2 = 1.0, te = 1.0;
    double decay = 0.01;
};

// Grammar: calibrate | fixed:<t1>,<t2>,<te> | ema:<decay>
inline TimingSpec parse_timing_spec(const std::string& spec) {
    auto fail = [&]() -> TimingSpec {
        throw std::invalid_argument("bad timing spec '" + spec +
                                    "' (calibrate | fixed:<t1>,<t2>,<te> | ema:<decay>)");
    };
    TimingSpec out;
    if (spec == "calibrate") return out;
    if (spec.rfind("ema:", 0) == 0) {
        out.kind = TimingSpec::Kind::Ema;
        try {
            out.decay = std::stod(spec.substr(4));
        } catch (const std::exception&) {
            return fail();
        }
        if (out.decay <= 0.0 || out.decay > 1.0)
            throw std::invalid_argument("ema decay must be in (0,1]: " + spec);
        return out;
    }
    if (spec.rfind("fixed:", 0) == 0) {
        out.kind = TimingSpec::Kind::Fixed;
        std::string rest = spec.substr(6);
        std::vector<double> vals;
        std::size_t pos = 0;
        try {
            while (pos < rest.size()) {
                std::size_t used = 0;
                vals.push_back(std::stod(rest.substr(pos), &used));
                pos += used;
                if (pos < rest.size()) {
                    if (rest[pos] != ',') return fail();
                    ++pos;
                }
            }
        } catch (const std::exception&) {
            return fail();
        }
        if (vals.size() != 3) return fail();
        if (vals[0] <= 0.0 || vals[1] <= 0.0 || vals[2] <= 0.0)
            throw std::invalid_argument("fixed timings must be positive: " + spec);
        out.t1 = vals[0];
        out.t2 = vals[1];
        out.te = vals[2];
        return out;
    }
    return fail();
}

}  // namespace lida::cli

#endif  // LIDA_CLI_HPP
