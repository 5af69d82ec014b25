#include "muda/mudar.hpp"

#include <algorithm>

namespace muda {

namespace {

class MudarHooks : public ExplorationHooks {
 public:
  // P := W plus the buyers holding the top-m reported valuations in A.
  std::vector<AgentId> potential_winners(const ExplorationState& state) const override {
    std::vector<AgentId> p = state.top_explored(state.item_count());
    for (AgentId w : state.winners()) {
      if (std::find(p.begin(), p.end(), w) == p.end()) p.push_back(w);
    }
    return p;
  }

  // (m+1)-th highest reported valuation in A at selection time; 0 when |A| <= m.
  double tentative_payment(const ExplorationState& state, AgentId) const override {
    return state.kth_value_explored(state.item_count() + 1);
  }
};

}  // namespace

MudarResult run_mudar(const AuctionInstance& instance, const ReportVector& reports,
                      const PriorityStrategy& strategy) {
  if (instance.item_count < 1) throw std::invalid_argument("m must be >= 1");
  MudarHooks hooks;
  ExplorationResult explored = run_exploration(instance, reports, hooks, strategy);
  const ExplorationState& state = explored.state;
  const ProfileGraph& graph = state.graph();

  // W_A: globally top-m reported valuations among reachable buyers. Every one
  // of them is provably a winner by termination; assert rather than assume.
  std::vector<AgentId> ranked_reachable = state.ranked();
  const int take = std::min<int>(instance.item_count, static_cast<int>(ranked_reachable.size()));

  MudarResult result;
  result.outcome = Outcome(instance.buyer_count());
  std::vector<char> in_allocated(static_cast<size_t>(instance.buyer_count()), 0);
  for (int k = 0; k < take; ++k) {
    const AgentId w = ranked_reachable[static_cast<size_t>(k)];
    if (!state.winner(w)) throw std::logic_error("mudar: top-m buyer missed the winner set");
    in_allocated[static_cast<size_t>(w)] = 1;
  }

  const auto& winners = state.winners();
  const auto& payments = state.winner_payments();
  for (size_t k = 0; k < winners.size(); ++k) {
    const AgentId w = winners[k];
    if (in_allocated[static_cast<size_t>(w)]) {
      result.outcome.allocation[static_cast<size_t>(w)] = 1;
      result.outcome.payment[static_cast<size_t>(w)] = payments[k];
      result.partition.allocated.push_back(w);
    } else {
      // Reward: p_w = p̂_w - v'_w <= 0, the utility w would have had with an item.
      result.outcome.payment[static_cast<size_t>(w)] = payments[k] - graph.reported_valuation(w);
      result.partition.rewarded.push_back(w);
    }
  }
  std::sort(result.partition.allocated.begin(), result.partition.allocated.end());
  std::sort(result.partition.rewarded.begin(), result.partition.rewarded.end());
  result.trace = std::move(explored.trace);
  return result;
}

}  // namespace muda
