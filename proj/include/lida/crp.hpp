#ifndef LIDA_CRP_HPP
#define LIDA_CRP_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lida/search.hpp"
#include "lida/types.hpp"

namespace lida::crp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Restricted container relocation: only the top of the stack holding the
// next retrieval target may move; retrievals are free, relocations cost 1.
struct CrpState {
    std::vector<std::vector<int>> stacks;  // bottom -> top
    int tier_limit = 0;
    int next_target = 1;   // smallest unretrieved container id
    int n_remaining = 0;

    bool operator==(const CrpState&) const = default;

    int target_stack() const {
        for (int i = 0; i < static_cast<int>(stacks.size()); ++i)
            for (int c : stacks[i])
                if (c == next_target) return i;
        return -1;
    }

    std::string key() const {
        std::string k;
        for (const auto& st : stacks) {
            for (int c : st) {
                k += std::to_string(c);
                k += ',';
            }
            k += '|';
        }
        return k;
    }
};

struct CrpMove {
    int container = 0;
    int from = 0;
    int to = 0;
    bool operator==(const CrpMove&) const = default;
};

struct CrpInstance {
    int n_stacks = 0;
    int tier_limit = 0;
    int n_containers = 0;
    std::vector<std::vector<int>> layout;  // bottom -> top

    CrpState initial_state() const {
        CrpState s;
        s.stacks = layout;
        s.tier_limit = tier_limit;
        s.next_target = 1;
        s.n_remaining = n_containers;
        return s;
    }
};

// Pop retrievable targets off stack tops; free of charge.
inline void crp_normalize(CrpState& s) {
    bool progressed = true;
    while (progressed && s.n_remaining > 0) {
        progressed = false;
        for (auto& st : s.stacks) {
            if (!st.empty() && st.back() == s.next_target) {
                st.pop_back();
                ++s.next_target;
                --s.n_remaining;
                progressed = true;
                break;
            }
        }
    }
}

// Containers sitting above at least one smaller-numbered container in their
// stack must relocate at least once each.
inline Cost lb1(const CrpState& s) {
    Cost count = 0;
    for (const auto& st : s.stacks) {
        int min_below = std::numeric_limits<int>::max();
        for (int c : st) {
            if (c > min_below) ++count;
            min_below = std::min(min_below, c);
        }
    }
    return count;
}

// LB1 plus one per blocking container in the target stack whose every
// feasible destination would put it on top of a smaller container, forcing
// a second relocation later.
inline Cost lb3(const CrpState& s) {
    Cost total = lb1(s);
    int ts = s.target_stack();
    if (ts < 0) return total;
    const auto& target = s.stacks[ts];
    int min_below = std::numeric_limits<int>::max();
    for (int c : target) {
        if (c > min_below) {
            bool forced_twice = true;
            for (int d = 0; d < static_cast<int>(s.stacks.size()); ++d) {
                if (d == ts) continue;
                const auto& dest = s.stacks[d];
                if (static_cast<int>(dest.size()) >= s.tier_limit) continue;  // full
                bool blocks = false;
                for (int other : dest)
                    if (other < c) {
                        blocks = true;
                        break;
                    }
                if (!blocks) {
                    forced_twice = false;
                    break;
                }
            }
            if (forced_twice) ++total;
        }
        min_below = std::min(min_below, c);
    }
    return total;
}

// Header "S T N" followed by S lines "k id1 ... idk" (bottom -> top).
inline CrpInstance parse_crp_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            ++line_no;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            return line;
        }
        throw ParseError("line " + std::to_string(line_no + 1) + ": unexpected end of input");
    };

    CrpInstance inst;
    {
        std::istringstream hdr(next_line());
        if (!(hdr >> inst.n_stacks >> inst.tier_limit >> inst.n_containers))
            throw ParseError("line " + std::to_string(line_no) + ": malformed header, expected 'S T N'");
        if (inst.n_stacks < 1 || inst.tier_limit < 1 || inst.n_containers < 0)
            throw ParseError("line " + std::to_string(line_no) + ": non-positive dimension in header");
        if (inst.n_containers > inst.n_stacks * inst.tier_limit)
            throw ParseError("line " + std::to_string(line_no) + ": N exceeds S*T capacity");
    }

    std::vector<bool> seen(inst.n_containers + 1, false);
    int total = 0;
    for (int sidx = 0; sidx < inst.n_stacks; ++sidx) {
        std::istringstream row(next_line());
        int k;
        if (!(row >> k) || k < 0)
            throw ParseError("line " + std::to_string(line_no) + ": malformed stack size");
        if (k > inst.tier_limit)
            throw ParseError("line " + std::to_string(line_no) + ": stack of " + std::to_string(k) +
                             " exceeds tier limit " + std::to_string(inst.tier_limit));
        std::vector<int> st;
        for (int i = 0; i < k; ++i) {
            int id;
            if (!(row >> id))
                throw ParseError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(k) + " container ids, found " + std::to_string(i));
            if (id < 1 || id > inst.n_containers)
                throw ParseError("line " + std::to_string(line_no) + ": container id " +
                                 std::to_string(id) + " out of range 1.." +
                                 std::to_string(inst.n_containers));
            if (seen[id])
                throw ParseError("line " + std::to_string(line_no) + ": container id " +
                                 std::to_string(id) + " repeated");
            seen[id] = true;
            st.push_back(id);
        }
        total += k;
        inst.layout.push_back(std::move(st));
    }
    if (total != inst.n_containers)
        throw ParseError("instance lists " + std::to_string(total) + " containers, header says " +
                         std::to_string(inst.n_containers));
    return inst;
}

// Instance files may concatenate several instances; '#' lines are comments.
inline std::vector<CrpInstance> parse_crp_file(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            lines.push_back(line);
        }
    }
    std::vector<CrpInstance> out;
    std::size_t i = 0;
    while (i < lines.size()) {
        int s, t, n;
        {
            std::istringstream hdr(lines[i]);
            if (!(hdr >> s >> t >> n) || s < 1)
                throw ParseError("malformed header: " + lines[i]);
        }
        if (i + static_cast<std::size_t>(s) >= lines.size())
            throw ParseError("truncated instance starting at header: " + lines[i]);
        std::string chunk;
        for (std::size_t j = i; j <= i + s; ++j) chunk += lines[j] + "\n";
        out.push_back(parse_crp_instance(chunk));
        i += s + 1;
    }
    return out;
}

inline std::string format_crp_instance(const CrpInstance& inst) {
    std::string out = std::to_string(inst.n_stacks) + " " + std::to_string(inst.tier_limit) + " " +
                      std::to_string(inst.n_containers) + "\n";
    for (const auto& st : inst.layout) {
        out += std::to_string(st.size());
        for (int c : st) out += " " + std::to_string(c);
        out += "\n";
    }
    return out;
}

// Random layout of 1..N over S stacks; requires a spare slot so generated
// instances never start saturated.
inline CrpInstance random_instance(int n_stacks, int tier_limit, int n_containers,
                                   std::uint64_t seed) {
    if (n_containers >= n_stacks * tier_limit)
        throw std::invalid_argument("random_instance: need N < S*T");
    std::mt19937_64 rng(seed);
    std::vector<int> ids(n_containers);
    for (int i = 0; i < n_containers; ++i) ids[i] = i + 1;
    std::shuffle(ids.begin(), ids.end(), rng);

    CrpInstance inst;
    inst.n_stacks = n_stacks;
    inst.tier_limit = tier_limit;
    inst.n_containers = n_containers;
    inst.layout.assign(n_stacks, {});
    std::uniform_int_distribution<int> pick(0, n_stacks - 1);
    for (int id : ids) {
        int s = pick(rng);
        while (static_cast<int>(inst.layout[s].size()) >= tier_limit) s = (s + 1) % n_stacks;
        inst.layout[s].push_back(id);
    }
    return inst;
}

// Search-domain adapter: h1 = LB1, h2 = LB3; cost = relocation count.
class CrpDomain {
  public:
    using State = CrpState;
    using Move = CrpMove;

    explicit CrpDomain(CrpInstance instance) : instance_(std::move(instance)) {
        initial_ = instance_.initial_state();
        crp_normalize(initial_);
    }

    const State& initial() const { return initial_; }
    bool is_goal(const State& s) const { return s.n_remaining == 0; }

    // The movable container is the top of the target stack; destinations in
    // ascending stack index. The restricted rule itself rules out immediate
    // undo: after a relocation the movable container is back on the target
    // stack, not the one just moved.
    std::vector<Successor<CrpDomain>> successors(const State& s,
                                                 const std::optional<Move>&) const {
        std::vector<Successor<CrpDomain>> out;
        if (s.n_remaining == 0) return out;
        int ts = s.target_stack();
        int c = s.stacks[ts].back();
        for (int d = 0; d < static_cast<int>(s.stacks.size()); ++d) {
            if (d == ts) continue;
            if (static_cast<int>(s.stacks[d].size()) >= s.tier_limit) continue;
            State next = s;
            next.stacks[ts].pop_back();
            next.stacks[d].push_back(c);
            crp_normalize(next);
            out.push_back({std::move(next), 1, CrpMove{c, ts, d}});
        }
        return out;
    }

    Cost h1(const State& s) const { return lb1(s); }
    Cost h2(const State& s) const { return lb3(s); }

    int branching(const State& s, const std::optional<Move>&) const {
        if (s.n_remaining == 0) return 0;
        int ts = s.target_stack();
        int b = 0;
        for (int d = 0; d < static_cast<int>(s.stacks.size()); ++d)
            if (d != ts && static_cast<int>(s.stacks[d].size()) < s.tier_limit) ++b;
        return b;
    }

    const CrpInstance& instance() const { return instance_; }

  private:
    CrpInstance instance_;
    State initial_;
};

}  // namespace lida::crp

#endif  // LIDA_CRP_HPP
