#include "muda/baselines.hpp"

#include <algorithm>

#include "muda/network.hpp"

namespace muda {

Outcome run_dnamu(const AuctionInstance& instance, const ReportVector& reports, DnamuWinRule rule) {
  if (instance.item_count < 1) throw std::invalid_argument("m must be >= 1");
  ProfileGraph g(instance, reports);
  CriticalTree tree = critical_tree(g);
  std::vector<int> dist = seller_distances(g);

  std::vector<AgentId> order = g.reachable_buyers();
  std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
    if (dist[static_cast<size_t>(a)] != dist[static_cast<size_t>(b)])
      return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)];
    return a < b;
  });

  Outcome outcome(instance.buyer_count());
  std::vector<char> in_winners(static_cast<size_t>(instance.buyer_count()), 0);
  int remaining = instance.item_count;

  for (AgentId i : order) {
    if (remaining == 0) break;

    std::vector<char> in_subtree(static_cast<size_t>(instance.buyer_count()), 0);
    for (AgentId j : tree.subtree(i)) in_subtree[static_cast<size_t>(j)] = 1;

    // Threshold: m'-th highest reported valuation in N_{-i} \ W.
    std::vector<double> values;
    for (AgentId j : g.reachable_buyers()) {
      if (in_subtree[static_cast<size_t>(j)] || in_winners[static_cast<size_t>(j)]) continue;
      values.push_back(g.reported_valuation(j));
    }
    double threshold = 0.0;
    if (static_cast<int>(values.size()) >= remaining) {
      std::nth_element(values.begin(), values.begin() + (remaining - 1), values.end(),
                       std::greater<double>());
      threshold = values[static_cast<size_t>(remaining - 1)];
    }

    const double bid = g.reported_valuation(i);
    const bool wins = rule == DnamuWinRule::kStrict ? bid > threshold : bid >= threshold;
    if (wins) {
      outcome.allocation[static_cast<size_t>(i)] = 1;
      outcome.payment[static_cast<size_t>(i)] = threshold;
      in_winners[static_cast<size_t>(i)] = 1;
      --remaining;
    }
  }
  return outcome;
}

}  // namespace muda
