#ifndef LIDA_TYPES_HPP
#define LIDA_TYPES_HPP

#include <cstdint>
#include <limits>

namespace lida {

// Edge costs and f-values. Both built-in domains use strictly positive
// integer edge costs, so thresholds and heuristic values are integers too.
using Cost = std::int64_t;

// Sentinel strictly greater than any representable f-value. Kept well below
// the integer max so ordinary additions cannot wrap.
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 4;

// Saturating addition against the infinity sentinel.
inline constexpr Cost sat_add(Cost a, Cost b) {
    if (a >= kInfiniteCost || b >= kInfiniteCost) return kInfiniteCost;
    Cost s = a + b;
    return s >= kInfiniteCost ? kInfiniteCost : s;
}

}  // namespace lida

#endif  // LIDA_TYPES_HPP
