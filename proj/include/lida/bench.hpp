#ifndef LIDA_BENCH_HPP
#define LIDA_BENCH_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lida/search.hpp"

namespace lida::bench {

struct AlgorithmSpec {
    std::string label;
    EvalMode mode = EvalMode::Lazy;
    DecisionPolicy policy = DecisionPolicy::always();
};

// IDA* single-heuristic baselines, the lazy scheme, and both rational
// variants; matches the row order of the result tables.
inline std::vector<AlgorithmSpec> default_algorithms(double const_ph = 0.3, double cap = 0.5) {
    return {
        {"IDA*-h1", EvalMode::H1Only, DecisionPolicy::always()},
        {"IDA*-h2", EvalMode::H2Only, DecisionPolicy::always()},
        {"LIDA*", EvalMode::Lazy, DecisionPolicy::always()},
        {"RLIDA*-const:" + std::to_string(const_ph).substr(0, 4), EvalMode::Lazy,
         DecisionPolicy::constant_ph(const_ph)},
        {"RLIDA*-adaptive:" + std::to_string(cap).substr(0, 4), EvalMode::Lazy,
         DecisionPolicy::adaptive(cap)},
    };
}

struct BenchLimits {
    std::uint64_t node_cap = 0;
    double time_cap_s = 0.0;
    int repetitions = 1;
};

template <class D>
struct BenchInstance {
    std::string id;
    D domain;
    std::uint64_t seed = 0;
};

struct InstanceRecord {
    std::string instance_id;
    std::string algorithm;
    bool solved = false;
    Cost cost = -1;
    std::uint64_t iterations = 0;
    std::uint64_t generated = 0;
    std::uint64_t h1_evals = 0;
    std::uint64_t h2_evals = 0;
    std::uint64_t h2_helpful = 0;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const InstanceRecord&) const = default;
};

struct BenchRow {
    std::string algorithm;
    double time_s = 0.0;
    std::uint64_t generated = 0;
    std::uint64_t h2_total = 0;
    std::uint64_t h2_helpful = 0;
    bool has_h2 = true;  // single-heuristic rows leave the h2 columns blank
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<InstanceRecord> detail;       // every run, including capped ones
    std::vector<std::string> commensurable;   // instance ids solved by all algorithms
    std::vector<std::string> excluded;        // instance ids dropped from aggregates
};

// Post-hoc oracle estimate: the lazy run's time minus the cost of all
// unhelpful h2 evaluations, as if each had been bypassed for free.
inline double clairvoyant_estimate(const SearchStats& lida_stats, const TimingModel& timing) {
    double saved = static_cast<double>(lida_stats.h2_evals - lida_stats.h2_helpful) * timing.t2;
    return std::max(0.0, lida_stats.wall_time_s - saved);
}

// Runs every algorithm on every instance; aggregates only instances solved
// by all algorithms so the per-algorithm sums are comparable. A cost
// mismatch between algorithms on any instance is a correctness bug and
// throws.
template <SearchDomain D>
BenchReport run_suite(const std::vector<BenchInstance<D>>& instances,
                      const std::vector<AlgorithmSpec>& algorithms, const BenchLimits& limits,
                      const TimingModel& timing) {
    if (instances.empty()) throw std::invalid_argument("run_suite: no instances");
    if (algorithms.empty()) throw std::invalid_argument("run_suite: no algorithms");

    SearchConfig config;
    config.node_cap = limits.node_cap;
    config.time_cap_s = limits.time_cap_s;
    int reps = std::max(1, limits.repetitions);

    BenchReport report;
    std::map<std::string, bool> solved_by_all;
    std::map<std::string, Cost> instance_cost;
    // stats of the plain lazy run per instance, for the clairvoyant row
    std::map<std::string, SearchStats> lida_stats;
    std::string lida_label;

    for (const auto& inst : instances) solved_by_all[inst.id] = true;

    for (const auto& algo : algorithms) {
        bool is_plain_lazy = algo.mode == EvalMode::Lazy &&
                             algo.policy.kind == DecisionPolicy::Kind::AlwaysEvaluate;
        if (is_plain_lazy && lida_label.empty()) lida_label = algo.label;
        for (const auto& inst : instances) {
            SearchResult<typename D::Move> result;
            double best_time = 0.0;
            for (int rep = 0; rep < reps; ++rep) {
                auto r = ida_star(inst.domain, algo.mode, algo.policy, timing, config);
                if (rep == 0) {
                    result = std::move(r);
                    best_time = result.stats.wall_time_s;
                } else {
                    best_time = std::min(best_time, r.stats.wall_time_s);
                }
            }
            result.stats.wall_time_s = best_time;

            InstanceRecord rec;
            rec.instance_id = inst.id;
            rec.algorithm = algo.label;
            rec.solved = result.solved();
            rec.cost = rec.solved ? result.solution->cost : -1;
            rec.iterations = result.stats.iterations;
            rec.generated = result.stats.generated;
            rec.h1_evals = result.stats.h1_evals;
            rec.h2_evals = result.stats.h2_evals;
            rec.h2_helpful = result.stats.h2_helpful;
            rec.wall_time_s = best_time;
            rec.seed = inst.seed;
            report.detail.push_back(rec);

            if (!rec.solved) {
                solved_by_all[inst.id] = false;
                continue;
            }
            auto [it, inserted] = instance_cost.emplace(inst.id, rec.cost);
            if (!inserted && it->second != rec.cost)
                throw std::runtime_error("cost mismatch on instance '" + inst.id + "': " +
                                         std::to_string(it->second) + " vs " +
                                         std::to_string(rec.cost) + " (" + algo.label + ")");
            if (is_plain_lazy && algo.label == lida_label) lida_stats[inst.id] = result.stats;
        }
    }

    for (const auto& inst : instances) {
        if (solved_by_all[inst.id])
            report.commensurable.push_back(inst.id);
        else
            report.excluded.push_back(inst.id);
    }

    for (const auto& algo : algorithms) {
        BenchRow row;
        row.algorithm = algo.label;
        row.has_h2 = algo.mode == EvalMode::EagerMax || algo.mode == EvalMode::Lazy;
        for (const auto& rec : report.detail) {
            if (rec.algorithm != algo.label) continue;
            if (!solved_by_all[rec.instance_id]) continue;
            row.time_s += rec.wall_time_s;
            row.generated += rec.generated;
            row.h2_total += rec.h2_evals;
            row.h2_helpful += rec.h2_helpful;
        }
        report.rows.push_back(row);
    }

    if (!lida_label.empty()) {
        BenchRow row;
        row.algorithm = "Clairvoyant";
        row.has_h2 = true;
        for (const auto& id : report.commensurable) {
            const auto& st = lida_stats.at(id);
            row.time_s += clairvoyant_estimate(st, timing);
            row.generated += st.generated;
            row.h2_total += st.h2_helpful;
            row.h2_helpful += st.h2_helpful;
        }
        report.rows.push_back(row);
    }
    return report;
}

inline std::string emit_markdown(const std::vector<BenchRow>& rows) {
    std::string out = "| algorithm | time | generated | h2 total | h2 helpful |\n";
    out += "|---|---:|---:|---:|---:|\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3f", r.time_s);
        out += "| " + r.algorithm + " | " + buf + " | " + std::to_string(r.generated) + " | ";
        if (r.has_h2)
            out += std::to_string(r.h2_total) + " | " + std::to_string(r.h2_helpful) + " |\n";
        else
            out += " |  |\n";
    }
    return out;
}

inline const char* kCsvHeader =
    "instance-id,algorithm,cost,iterations,generated,h1-evals,h2-evals,h2-helpful,wall-time-s,seed";

inline std::string emit_csv(const std::vector<InstanceRecord>& records) {
    std::string out = std::string(kCsvHeader) + "\n";
    char buf[64];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.17g", r.wall_time_s);
        out += r.instance_id + "," + r.algorithm + "," + std::to_string(r.solved ? r.cost : -1) +
               "," + std::to_string(r.iterations) + "," + std::to_string(r.generated) + "," +
               std::to_string(r.h1_evals) + "," + std::to_string(r.h2_evals) + "," +
               std::to_string(r.h2_helpful) + "," + buf + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

inline std::vector<InstanceRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("parse_csv: bad header");
    std::vector<InstanceRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 10) throw std::runtime_error("parse_csv: expected 10 fields, got " +
                                                     std::to_string(f.size()));
        InstanceRecord r;
        r.instance_id = f[0];
        r.algorithm = f[1];
        r.cost = std::stoll(f[2]);
        r.solved = r.cost >= 0;
        r.iterations = std::stoull(f[3]);
        r.generated = std::stoull(f[4]);
        r.h1_evals = std::stoull(f[5]);
        r.h2_evals = std::stoull(f[6]);
        r.h2_helpful = std::stoull(f[7]);
        r.wall_time_s = std::stod(f[8]);
        r.seed = std::stoull(f[9]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lida::bench

#endif  // LIDA_BENCH_HPP
