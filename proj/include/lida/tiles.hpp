#ifndef LIDA_TILES_HPP
#define LIDA_TILES_HPP

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

namespace lida::tiles {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Where the blank sits in the solved board. Korf's instance files use
// blank-first (cells 0,1,...,n-1); classic textbook layouts use blank-last.
enum class GoalConvention { BlankFirst, BlankLast };

enum class TileCostModel { Unit, Weighted };

// Direction the blank moves. Successor order is Up, Left, Right, Down.
enum class TileMove : std::uint8_t { Up, Left, Right, Down };

inline TileMove reverse(TileMove m) {
    switch (m) {
        case TileMove::Up: return TileMove::Down;
        case TileMove::Down: return TileMove::Up;
        case TileMove::Left: return TileMove::Right;
        case TileMove::Right: return TileMove::Left;
    }
    return m;
}

inline const char* move_name(TileMove m) {
    switch (m) {
        case TileMove::Up: return "U";
        case TileMove::Down: return "D";
        case TileMove::Left: return "L";
        case TileMove::Right: return "R";
    }
    return "?";
}

struct TileBoard {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> cells;  // permutation of 0..rows*cols-1, 0 = blank
    int blank = 0;                    // index of the 0 cell

    int size() const { return rows * cols; }
    bool operator==(const TileBoard&) const = default;
};

// Goal cell of each tile under a convention, precomputed for reuse.
struct TileGoal {
    int rows = 0;
    int cols = 0;
    GoalConvention convention = GoalConvention::BlankFirst;
    std::vector<int> pos_of_tile;  // tile id -> goal index (0 = blank)

    TileGoal() = default;
    TileGoal(int r, int c, GoalConvention conv) : rows(r), cols(c), convention(conv) {
        int n = r * c;
        pos_of_tile.resize(n);
        if (conv == GoalConvention::BlankFirst) {
            for (int t = 0; t < n; ++t) pos_of_tile[t] = t;
        } else {
            pos_of_tile[0] = n - 1;
            for (int t = 1; t < n; ++t) pos_of_tile[t] = t - 1;
        }
    }
};

inline TileBoard goal_board(int rows, int cols, GoalConvention conv) {
    TileGoal goal(rows, cols, conv);
    TileBoard b;
    b.rows = rows;
    b.cols = cols;
    b.cells.resize(rows * cols);
    for (int t = 0; t < rows * cols; ++t) b.cells[goal.pos_of_tile[t]] = static_cast<std::uint8_t>(t);
    b.blank = goal.pos_of_tile[0];
    return b;
}

inline std::optional<int> blank_destination(const TileBoard& b, TileMove m) {
    int r = b.blank / b.cols, c = b.blank % b.cols;
    switch (m) {
        case TileMove::Up: return r > 0 ? std::optional<int>(b.blank - b.cols) : std::nullopt;
        case TileMove::Left: return c > 0 ? std::optional<int>(b.blank - 1) : std::nullopt;
        case TileMove::Right: return c + 1 < b.cols ? std::optional<int>(b.blank + 1) : std::nullopt;
        case TileMove::Down: return r + 1 < b.rows ? std::optional<int>(b.blank + b.cols) : std::nullopt;
    }
    return std::nullopt;
}

// Applies a blank move; returns the moved tile's number, or nullopt if the
// move runs off the board.
inline std::optional<int> apply_move(TileBoard& b, TileMove m) {
    auto dest = blank_destination(b, m);
    if (!dest) return std::nullopt;
    int tile = b.cells[*dest];
    std::swap(b.cells[b.blank], b.cells[*dest]);
    b.blank = *dest;
    return tile;
}

inline Cost tile_move_cost(int tile, TileCostModel model) {
    return model == TileCostModel::Unit ? 1 : static_cast<Cost>(tile);
}

inline Cost manhattan(const TileBoard& b, const TileGoal& goal,
                      TileCostModel model = TileCostModel::Unit) {
    Cost total = 0;
    for (int i = 0; i < b.size(); ++i) {
        int t = b.cells[i];
        if (t == 0) continue;
        int g = goal.pos_of_tile[t];
        int d = std::abs(i / b.cols - g / b.cols) + std::abs(i % b.cols - g % b.cols);
        total += static_cast<Cost>(d) * tile_move_cost(t, model);
    }
    return total;
}

namespace detail {

// Minimum-weight set of tiles such that every reversed pair in the line has
// a charged member; each charged tile pays 2 steps out of the line and back.
// Lines hold at most max(rows, cols) candidates, so exhaustive subsets are
// cheap and deterministic.
inline Cost line_conflict_penalty(const std::vector<int>& tiles,
                                  const std::vector<int>& goal_coord, TileCostModel model) {
    int k = static_cast<int>(tiles.size());
    if (k < 2) return 0;
    std::vector<std::pair<int, int>> conflicts;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (goal_coord[i] > goal_coord[j]) conflicts.emplace_back(i, j);
    if (conflicts.empty()) return 0;

    Cost best = kInfiniteCost;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        bool covers = true;
        for (auto [i, j] : conflicts) {
            if (!((mask >> i) & 1u) && !((mask >> j) & 1u)) {
                covers = false;
                break;
            }
        }
        if (!covers) continue;
        Cost w = 0;
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1u) w += 2 * tile_move_cost(tiles[i], model);
        best = std::min(best, w);
    }
    return best;
}

}  // namespace detail

// Manhattan distance plus linear-conflict penalties per row and column.
inline Cost linear_conflict(const TileBoard& b, const TileGoal& goal,
                            TileCostModel model = TileCostModel::Unit) {
    Cost total = manhattan(b, goal, model);
    std::vector<int> tiles, coord;
    for (int r = 0; r < b.rows; ++r) {
        tiles.clear();
        coord.clear();
        for (int c = 0; c < b.cols; ++c) {
            int t = b.cells[r * b.cols + c];
            if (t == 0) continue;
            int g = goal.pos_of_tile[t];
            if (g / b.cols == r) {
                tiles.push_back(t);
                coord.push_back(g % b.cols);
            }
        }
        total += detail::line_conflict_penalty(tiles, coord, model);
    }
    for (int c = 0; c < b.cols; ++c) {
        tiles.clear();
        coord.clear();
        for (int r = 0; r < b.rows; ++r) {
            int t = b.cells[r * b.cols + c];
            if (t == 0) continue;
            int g = goal.pos_of_tile[t];
            if (g % b.cols == c) {
                tiles.push_back(t);
                coord.push_back(g / b.cols);
            }
        }
        total += detail::line_conflict_penalty(tiles, coord, model);
    }
    return total;
}

// Reachability from the goal: permutation parity must match the parity of
// the blank's grid distance to its goal cell (every move is a transposition
// and shifts the blank by one).
inline bool is_solvable(const TileBoard& b, const TileGoal& goal) {
    int n = b.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = goal.pos_of_tile[b.cells[i]];
    std::vector<bool> seen(n, false);
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    int gb = goal.pos_of_tile[0];
    int blank_dist = std::abs(b.blank / b.cols - gb / b.cols) +
                     std::abs(b.blank % b.cols - gb % b.cols);
    return (transpositions % 2) == (blank_dist % 2);
}

// One instance: whitespace-separated cell values in reading order.
inline TileBoard parse_korf_instance(const std::string& text, int rows, int cols) {
    int n = rows * cols;
    std::istringstream in(text);
    TileBoard b;
    b.rows = rows;
    b.cols = cols;
    std::vector<bool> seen(n, false);
    long long v;
    while (in >> v) {
        if (static_cast<int>(b.cells.size()) == n)
            throw ParseError("expected " + std::to_string(n) + " values, found more");
        if (v < 0 || v >= n)
            throw ParseError("value " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
        if (seen[v]) throw ParseError("duplicate value " + std::to_string(v));
        seen[v] = true;
        if (v == 0) b.blank = static_cast<int>(b.cells.size());
        b.cells.push_back(static_cast<std::uint8_t>(v));
    }
    if (!in.eof() && in.fail()) throw ParseError("non-integer token in instance");
    if (static_cast<int>(b.cells.size()) != n)
        throw ParseError("expected " + std::to_string(n) + " values, found " +
                         std::to_string(b.cells.size()));
    return b;
}

// Instance files: one instance per line; '#' starts a comment line.
inline std::vector<TileBoard> parse_instance_file(const std::string& text, int rows, int cols) {
    std::vector<TileBoard> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            out.push_back(parse_korf_instance(line, rows, cols));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline std::string format_instance(const TileBoard& b) {
    std::string out;
    for (int i = 0; i < b.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(static_cast<int>(b.cells[i]));
    }
    return out;
}

// Random walk from the goal, never undoing the previous move.
inline TileBoard random_walk_instance(int rows, int cols, int steps, std::uint64_t seed,
                                      GoalConvention conv = GoalConvention::BlankFirst) {
    TileGoal goal(rows, cols, conv);
    TileBoard b = goal_board(rows, cols, conv);
    std::mt19937_64 rng(seed);
    std::optional<TileMove> prev;
    for (int s = 0; s < steps; ++s) {
        std::vector<TileMove> legal;
        for (TileMove m : {TileMove::Up, TileMove::Left, TileMove::Right, TileMove::Down}) {
            if (prev && m == reverse(*prev)) continue;
            if (blank_destination(b, m)) legal.push_back(m);
        }
        TileMove m = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
        apply_move(b, m);
        prev = m;
    }
    return b;
}

// Search-domain adapter: h1 = Manhattan distance, h2 = linear conflict.
class TileDomain {
  public:
    using State = TileBoard;
    using Move = TileMove;

    TileDomain(TileBoard initial, TileCostModel cost_model = TileCostModel::Unit,
               GoalConvention conv = GoalConvention::BlankFirst)
        : initial_(std::move(initial)),
          cost_model_(cost_model),
          goal_(initial_.rows, initial_.cols, conv),
          goal_board_(goal_board(initial_.rows, initial_.cols, conv)) {}

    const State& initial() const { return initial_; }
    bool is_goal(const State& s) const { return s.cells == goal_board_.cells; }

    std::vector<Successor<TileDomain>> successors(const State& s,
                                                  const std::optional<Move>& incoming) const {
        std::vector<Successor<TileDomain>> out;
        out.reserve(4);
        for (TileMove m : {TileMove::Up, TileMove::Left, TileMove::Right, TileMove::Down}) {
            if (incoming && m == reverse(*incoming)) continue;
            if (!blank_destination(s, m)) continue;
            State next = s;
            int tile = *apply_move(next, m);
            out.push_back({std::move(next), tile_move_cost(tile, cost_model_), m});
        }
        return out;
    }

    Cost h1(const State& s) const { return manhattan(s, goal_, cost_model_); }
    Cost h2(const State& s) const { return linear_conflict(s, goal_, cost_model_); }

    int branching(const State& s, const std::optional<Move>& incoming) const {
        int b = 0;
        for (TileMove m : {TileMove::Up, TileMove::Left, TileMove::Right, TileMove::Down}) {
            if (incoming && m == reverse(*incoming)) continue;
            if (blank_destination(s, m)) ++b;
        }
        return b;
    }

    const TileGoal& goal() const { return goal_; }
    TileCostModel cost_model() const { return cost_model_; }

  private:
    TileBoard initial_;
    TileCostModel cost_model_;
    TileGoal goal_;
    TileBoard goal_board_;
};

}  // namespace lida::tiles

#endif  // LIDA_TILES_HPP
