#include "muda/mechanism.hpp"

#include <algorithm>

#include "muda/network.hpp"

namespace muda {

namespace {

double top_m_sum(std::vector<double> values, int m) {
  std::sort(values.begin(), values.end(), std::greater<double>());
  double sum = 0.0;
  const int k = std::min<int>(m, static_cast<int>(values.size()));
  for (int i = 0; i < k; ++i) sum += values[static_cast<size_t>(i)];
  return sum;
}

}  // namespace

Metrics compute_metrics(const AuctionInstance& instance, const Outcome& outcome) {
  const int n = instance.buyer_count();
  if (static_cast<int>(outcome.allocation.size()) != n ||
      static_cast<int>(outcome.payment.size()) != n)
    throw std::invalid_argument("outcome dimensions do not match the instance");

  Metrics metrics;
  metrics.utilities.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v = instance.profiles[static_cast<size_t>(i)].valuation;
    const double allocated = outcome.allocation[static_cast<size_t>(i)] ? 1.0 : 0.0;
    metrics.utilities[static_cast<size_t>(i)] = v * allocated - outcome.payment[static_cast<size_t>(i)];
    metrics.social_welfare += v * allocated;
    metrics.revenue += outcome.payment[static_cast<size_t>(i)];
  }
  metrics.sw_opt = optimal_welfare(instance);
  return metrics;
}

double optimal_welfare(const AuctionInstance& instance) {
  std::vector<double> values;
  values.reserve(instance.profiles.size());
  for (const Profile& p : instance.profiles) values.push_back(p.valuation);
  return top_m_sum(std::move(values), instance.item_count);
}

double weakly_optimal_welfare(const AuctionInstance& instance, const ReportVector& reports,
                              AgentId w_star) {
  ProfileGraph g(instance, reports);
  if (w_star < 0 || w_star >= g.buyer_count() || !g.reachable(w_star))
    throw std::invalid_argument("w* must be a reachable buyer");
  std::vector<double> values;
  for (AgentId i : g.reachable_buyers()) {
    if (i == w_star || !is_critical(g, w_star, i))
      values.push_back(instance.profiles[static_cast<size_t>(i)].valuation);
  }
  return top_m_sum(std::move(values), instance.item_count);
}

}  // namespace muda
