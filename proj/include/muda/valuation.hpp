#pragma once

#include <span>
#include <vector>

#include "muda/rng.hpp"
#include "muda/types.hpp"

namespace muda {

enum class ValuationModel { kUniformIid, kTopAnchored, kDegroot };

struct ValuationParams {
  double ceiling = 200000.0;  // value range upper bound C
  double self_weight = 0.5;   // DeGroot alpha in (0,1)
  int degroot_rounds = 10;    // synchronous averaging rounds T
};

// One synchronous DeGroot round over the top-slot values:
// x_i <- alpha * x_i + (1 - alpha) * mean(x_j, j in adjacency[i]).
// Agents without neighbours keep their value.
std::vector<double> degroot_round(std::span<const double> values,
                                  std::span<const std::vector<AgentId>> adjacency, double alpha);

// Per-buyer valuation vectors, sorted descending (zero-length adjacency is
// fine for the non-DeGroot models).
//   uniform-iid: every slot ~ U(0, C).
//   top-anchored: top slot ~ U(0, C), remaining slots ~ U(1, top).
//   degroot: top slots ~ U(0, C) smoothed by T DeGroot rounds over the graph,
//            remaining slots as top-anchored.
std::vector<std::vector<double>> generate_valuations(ValuationModel model,
                                                     std::span<const std::vector<AgentId>> adjacency,
                                                     int buyer_count, int slots,
                                                     const ValuationParams& params, Rng& rng);

ValuationModel valuation_model_from_name(std::string_view name);
std::string_view valuation_model_name(ValuationModel model);

}  // namespace muda
