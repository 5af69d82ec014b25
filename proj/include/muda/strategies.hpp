#pragma once

#include <cstdint>
#include <memory>

#include "muda/explorer.hpp"

namespace muda {

enum class StrategyKind { kDegree, kDistance, kDepth, kNewAgent, kRandom };

// Degree: |r'_i|, the straightforward priority. Distance / depth: negated /
// plain hop distance from the seller, frozen on the profile graph when the
// run starts. New-agent: number of reported neighbours not yet explored,
// re-evaluated every iteration. Random: a per-agent draw fixed at run start
// from the given seed, constant in both valuation and neighbour set.
std::unique_ptr<PriorityStrategy> make_strategy(StrategyKind kind, std::uint64_t seed = 0);

StrategyKind strategy_from_name(std::string_view name);  // throws std::invalid_argument
std::string_view strategy_name(StrategyKind kind);

}  // namespace muda
