#include "muda/explorer.hpp"

#include <algorithm>

namespace muda {

namespace {

// Ranked order: reported valuation descending, id ascending.
struct RankedLess {
  const ProfileGraph* graph;
  bool operator()(AgentId a, AgentId b) const {
    const double va = graph->reported_valuation(a);
    const double vb = graph->reported_valuation(b);
    if (va != vb) return va > vb;
    return a < b;
  }
};

}  // namespace

double ExplorationState::kth_value_explored(int k) const {
  if (k < 1 || k > static_cast<int>(ranked_.size())) return 0.0;
  return graph_->reported_valuation(ranked_[static_cast<size_t>(k - 1)]);
}

double ExplorationState::kth_value_nonwinners(int k) const {
  if (k < 1) return 0.0;
  int seen = 0;
  for (AgentId i : ranked_) {
    if (winner_[static_cast<size_t>(i)]) continue;
    if (++seen == k) return graph_->reported_valuation(i);
  }
  return 0.0;
}

std::vector<AgentId> ExplorationState::top_explored(int k) const {
  std::vector<AgentId> out;
  for (AgentId i : ranked_) {
    if (static_cast<int>(out.size()) == k) break;
    out.push_back(i);
  }
  return out;
}

std::vector<AgentId> ExplorationState::top_nonwinners(int k) const {
  std::vector<AgentId> out;
  for (AgentId i : ranked_) {
    if (static_cast<int>(out.size()) == k) break;
    if (!winner_[static_cast<size_t>(i)]) out.push_back(i);
  }
  return out;
}

class ExplorationEngine {
 public:
  ExplorationEngine(std::shared_ptr<const ProfileGraph> graph, int item_count,
                    const ExplorationHooks& hooks, const PriorityStrategy& strategy)
      : hooks_(hooks) {
    state_.graph_ = std::move(graph);
    state_.item_count_ = item_count;
    const size_t n = static_cast<size_t>(state_.graph_->buyer_count());
    state_.explored_.assign(n, 0);
    state_.expanded_.assign(n, 0);
    state_.potential_.assign(n, 0);
    state_.winner_.assign(n, 0);
    ever_exhausted_.assign(n, 0);
    scorer_ = strategy.begin_run(*state_.graph_);
  }

  ExplorationResult run() {
    for (AgentId j : state_.graph_->seller_neighbors()) add_agent(j);
    install_potential();

    while (true) {
      if (!hooks_.wants_more_winners(state_)) break;

      // Expansion closure: every unmarked winner or exhausted agent reveals
      // its reported neighbours; P is refreshed whenever A grows so new
      // agents get classified before any further expansion.
      bool progressed = true;
      while (progressed) {
        progressed = false;
        for (AgentId i : sorted_explored()) {
          if (state_.expanded_[static_cast<size_t>(i)]) continue;
          if (!state_.winner_[static_cast<size_t>(i)] && state_.potential_[static_cast<size_t>(i)])
            continue;
          expand(i);
          progressed = true;
        }
        if (progressed) install_potential();
      }

      std::vector<AgentId> candidates;
      for (AgentId i : sorted_explored()) {
        if (state_.potential_[static_cast<size_t>(i)] && !state_.winner_[static_cast<size_t>(i)])
          candidates.push_back(i);
      }
      if (candidates.empty()) break;

      current_.scores.clear();
      AgentId best = candidates.front();
      double best_score = scorer_->score(best, state_);
      current_.scores.emplace_back(best, best_score);
      for (size_t k = 1; k < candidates.size(); ++k) {
        const AgentId i = candidates[k];
        const double s = scorer_->score(i, state_);
        current_.scores.emplace_back(i, s);
        if (s > best_score) {
          best = i;
          best_score = s;
        }
      }

      const double payment = hooks_.tentative_payment(state_, best);
      current_.potential = snapshot_potential();
      current_.winner = best;
      current_.tentative_payment = payment;
      state_.winner_[static_cast<size_t>(best)] = 1;
      state_.winners_.push_back(best);
      state_.winner_payments_.push_back(payment);
      trace_.iterations.push_back(std::move(current_));
      current_ = IterationRecord{};

      install_potential();
    }

    // A final closure may have revealed agents without selecting anyone.
    if (!current_.added.empty()) {
      current_.potential = snapshot_potential();
      trace_.iterations.push_back(std::move(current_));
    }
    return ExplorationResult{std::move(state_), std::move(trace_)};
  }

 private:
  void add_agent(AgentId i) {
    if (state_.explored_[static_cast<size_t>(i)]) return;
    state_.explored_[static_cast<size_t>(i)] = 1;
    state_.explored_order_.push_back(i);
    RankedLess less{state_.graph_.get()};
    auto pos = std::upper_bound(state_.ranked_.begin(), state_.ranked_.end(), i, less);
    state_.ranked_.insert(pos, i);
    current_.added.push_back(i);
  }

  void expand(AgentId i) {
    state_.expanded_[static_cast<size_t>(i)] = 1;
    for (AgentId j : state_.graph_->neighbors(i)) add_agent(j);
  }

  std::vector<AgentId> sorted_explored() const {
    std::vector<AgentId> ids = state_.explored_order_;
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  std::vector<AgentId> snapshot_potential() const {
    std::vector<AgentId> out;
    for (AgentId i : sorted_explored()) {
      if (state_.potential_[static_cast<size_t>(i)]) out.push_back(i);
    }
    return out;
  }

  void install_potential() {
    std::vector<AgentId> p = hooks_.potential_winners(state_);
    std::fill(state_.potential_.begin(), state_.potential_.end(), 0);
    for (AgentId i : p) {
      if (i < 0 || i >= state_.graph_->buyer_count() || !state_.explored_[static_cast<size_t>(i)])
        throw ContractViolation("update_P returned an agent outside A");
      if (ever_exhausted_[static_cast<size_t>(i)])
        throw ContractViolation("update_P re-admitted an exhausted agent");
      state_.potential_[static_cast<size_t>(i)] = 1;
    }
    for (AgentId w : state_.winners_) {
      if (!state_.potential_[static_cast<size_t>(w)])
        throw ContractViolation("update_P dropped a winner from P");
    }
    for (AgentId i : state_.explored_order_) {
      if (!state_.potential_[static_cast<size_t>(i)]) ever_exhausted_[static_cast<size_t>(i)] = 1;
    }
  }

  const ExplorationHooks& hooks_;
  std::unique_ptr<PriorityScorer> scorer_;
  ExplorationState state_;
  ExplorationTrace trace_;
  IterationRecord current_;
  std::vector<std::uint8_t> ever_exhausted_;
};

ExplorationResult run_exploration(std::shared_ptr<const ProfileGraph> graph, int item_count,
                                  const ExplorationHooks& hooks, const PriorityStrategy& strategy) {
  ExplorationEngine engine(std::move(graph), item_count, hooks, strategy);
  return engine.run();
}

ExplorationResult run_exploration(const AuctionInstance& instance, const ReportVector& reports,
                                  const ExplorationHooks& hooks, const PriorityStrategy& strategy) {
  auto graph = std::make_shared<ProfileGraph>(instance, reports);
  return run_exploration(std::move(graph), instance.item_count, hooks, strategy);
}

}  // namespace muda
