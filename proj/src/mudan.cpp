#include "muda/mudan.hpp"

namespace muda {

namespace {

class MudanHooks : public ExplorationHooks {
 public:
  // P := A while |A \ W| <= m', otherwise W plus the top-m' reported
  // valuations in A \ W (ties by ascending id via the ranked order).
  std::vector<AgentId> potential_winners(const ExplorationState& state) const override {
    const int remaining = state.remaining_items();
    const int nonwinners = state.explored_count() - static_cast<int>(state.winners().size());
    if (nonwinners <= remaining) return state.explored_order();
    std::vector<AgentId> p = state.winners();
    std::vector<AgentId> top = state.top_nonwinners(remaining);
    p.insert(p.end(), top.begin(), top.end());
    return p;
  }

  // Current (m'+1)-th highest reported valuation in A \ W; 0 when fewer exist.
  double tentative_payment(const ExplorationState& state, AgentId) const override {
    return state.kth_value_nonwinners(state.remaining_items() + 1);
  }

  bool wants_more_winners(const ExplorationState& state) const override {
    return state.remaining_items() > 0;
  }
};

}  // namespace

MudanResult run_mudan(const AuctionInstance& instance, const ReportVector& reports,
                      const PriorityStrategy& strategy) {
  if (instance.item_count < 1) throw std::invalid_argument("m must be >= 1");
  MudanHooks hooks;
  ExplorationResult explored = run_exploration(instance, reports, hooks, strategy);

  MudanResult result;
  result.outcome = Outcome(instance.buyer_count());
  const auto& winners = explored.state.winners();
  const auto& payments = explored.state.winner_payments();
  for (size_t k = 0; k < winners.size(); ++k) {
    result.outcome.allocation[static_cast<size_t>(winners[k])] = 1;
    result.outcome.payment[static_cast<size_t>(winners[k])] = payments[k];
  }
  result.last_winner = winners.empty() ? kSeller : winners.back();
  result.trace = std::move(explored.trace);
  return result;
}

}  // namespace muda
