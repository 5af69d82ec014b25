#include "muda/valuation.hpp"

#include <algorithm>
#include <string>

namespace muda {

std::vector<double> degroot_round(std::span<const double> values,
                                  std::span<const std::vector<AgentId>> adjacency, double alpha) {
  std::vector<double> next(values.begin(), values.end());
  for (size_t i = 0; i < values.size(); ++i) {
    const std::vector<AgentId>& nbrs = adjacency[i];
    if (nbrs.empty()) continue;
    double sum = 0.0;
    for (AgentId j : nbrs) sum += values[static_cast<size_t>(j)];
    next[i] = alpha * values[i] + (1.0 - alpha) * (sum / static_cast<double>(nbrs.size()));
  }
  return next;
}

std::vector<std::vector<double>> generate_valuations(ValuationModel model,
                                                     std::span<const std::vector<AgentId>> adjacency,
                                                     int buyer_count, int slots,
                                                     const ValuationParams& params, Rng& rng) {
  if (slots < 1) throw std::invalid_argument("slot count must be >= 1");
  if (model == ValuationModel::kDegroot && static_cast<int>(adjacency.size()) != buyer_count)
    throw std::invalid_argument("degroot model needs the social graph");

  std::vector<std::vector<double>> out(static_cast<size_t>(buyer_count));

  if (model == ValuationModel::kUniformIid) {
    for (auto& vec : out) {
      vec.resize(static_cast<size_t>(slots));
      for (double& v : vec) v = rng.uniform_real(0.0, params.ceiling);
      std::sort(vec.begin(), vec.end(), std::greater<double>());
    }
    return out;
  }

  // Top slots first, then the anchored tail; keeping the draw order identical
  // between the two models makes degroot on an edgeless graph reproduce
  // top-anchored exactly.
  std::vector<double> tops(static_cast<size_t>(buyer_count));
  for (double& t : tops) t = rng.uniform_real(0.0, params.ceiling);

  if (model == ValuationModel::kDegroot) {
    for (int round = 0; round < params.degroot_rounds; ++round)
      tops = degroot_round(tops, adjacency, params.self_weight);
  }

  for (int i = 0; i < buyer_count; ++i) {
    std::vector<double>& vec = out[static_cast<size_t>(i)];
    vec.resize(static_cast<size_t>(slots));
    const double top = tops[static_cast<size_t>(i)];
    vec[0] = top;
    for (int j = 1; j < slots; ++j) {
      const double lo = std::min(1.0, top);
      const double hi = std::max(1.0, top);
      vec[static_cast<size_t>(j)] = rng.uniform_real(lo, hi);
    }
    std::sort(vec.begin(), vec.end(), std::greater<double>());
  }
  return out;
}

ValuationModel valuation_model_from_name(std::string_view name) {
  if (name == "1" || name == "uniform") return ValuationModel::kUniformIid;
  if (name == "2" || name == "top-anchored") return ValuationModel::kTopAnchored;
  if (name == "3" || name == "degroot") return ValuationModel::kDegroot;
  throw std::invalid_argument("unknown valuation model: " + std::string(name));
}

std::string_view valuation_model_name(ValuationModel model) {
  switch (model) {
    case ValuationModel::kUniformIid: return "uniform";
    case ValuationModel::kTopAnchored: return "top-anchored";
    case ValuationModel::kDegroot: return "degroot";
  }
  return "unknown";
}

}  // namespace muda
