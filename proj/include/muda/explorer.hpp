#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "muda/network.hpp"
#include "muda/types.hpp"

namespace muda {

// State of the generic graph exploration. Hooks read it; only the engine
// mutates it. `ranked` keeps every explored buyer ordered by
// (reported valuation desc, id asc), maintained by insertion on arrival.
class ExplorationState {
 public:
  const ProfileGraph& graph() const { return *graph_; }
  const std::shared_ptr<const ProfileGraph>& graph_ptr() const { return graph_; }
  int item_count() const { return item_count_; }

  const std::vector<AgentId>& explored_order() const { return explored_order_; }
  const std::vector<AgentId>& ranked() const { return ranked_; }
  bool explored(AgentId i) const { return explored_[static_cast<size_t>(i)] != 0; }
  bool expanded(AgentId i) const { return expanded_[static_cast<size_t>(i)] != 0; }
  bool potential(AgentId i) const { return potential_[static_cast<size_t>(i)] != 0; }
  bool winner(AgentId i) const { return winner_[static_cast<size_t>(i)] != 0; }

  const std::vector<AgentId>& winners() const { return winners_; }
  const std::vector<double>& winner_payments() const { return winner_payments_; }
  int explored_count() const { return static_cast<int>(explored_order_.size()); }
  int remaining_items() const { return item_count_ - static_cast<int>(winners_.size()); }

  // k-th highest reported valuation among explored buyers (1-based), or 0 if
  // fewer than k exist.
  double kth_value_explored(int k) const;
  // Same, restricted to explored non-winners (A \ W).
  double kth_value_nonwinners(int k) const;
  // Top-k prefix of the ranked explored buyers / of A \ W.
  std::vector<AgentId> top_explored(int k) const;
  std::vector<AgentId> top_nonwinners(int k) const;

 private:
  friend class ExplorationEngine;

  std::shared_ptr<const ProfileGraph> graph_;
  int item_count_ = 0;
  std::vector<AgentId> explored_order_;
  std::vector<AgentId> ranked_;
  std::vector<std::uint8_t> explored_, expanded_, potential_, winner_;
  std::vector<AgentId> winners_;
  std::vector<double> winner_payments_;
};

struct IterationRecord {
  std::vector<AgentId> added;      // increment to A during this iteration
  std::vector<AgentId> potential;  // P at selection time, ascending id
  std::vector<std::pair<AgentId, double>> scores;  // priority over P \ W
  std::optional<AgentId> winner;
  double tentative_payment = 0.0;
};

struct ExplorationTrace {
  std::vector<IterationRecord> iterations;
};

// Per-run priority scorer. score() must be independent of the scored agent's
// reported valuation and non-decreasing in its reported neighbour set.
class PriorityScorer {
 public:
  virtual ~PriorityScorer() = default;
  virtual double score(AgentId agent, const ExplorationState& state) const = 0;
};

class PriorityStrategy {
 public:
  virtual ~PriorityStrategy() = default;
  virtual std::unique_ptr<PriorityScorer> begin_run(const ProfileGraph& graph) const = 0;
  virtual std::string_view name() const = 0;
};

// Mechanism-specific pieces of Alg.-1 style exploration.
class ExplorationHooks {
 public:
  virtual ~ExplorationHooks() = default;

  // Returns the new potential winner set P (any order; engine sorts). Must
  // satisfy W <= P <= A and never re-admit an agent that previously left P.
  virtual std::vector<AgentId> potential_winners(const ExplorationState& state) const = 0;

  // Tentative payment recorded when `winner` is selected (W does not yet
  // contain the winner at call time).
  virtual double tentative_payment(const ExplorationState& state, AgentId winner) const = 0;

  // Whether another winner could still be selected. When false, the engine
  // stops before expanding the last winner (MUDAN stops at m' = 0); when the
  // mechanism explores exhaustively (MUDAR), leave the default.
  virtual bool wants_more_winners(const ExplorationState&) const { return true; }
};

struct ExplorationResult {
  ExplorationState state;
  ExplorationTrace trace;
};

// Runs the generic exploration: seed A with r_s, then per iteration expand
// every unmarked agent in W u (A \ P) to closure (recomputing P whenever A
// grows, so freshly discovered agents are never classified against a stale P),
// stop when P \ W is empty, otherwise select the highest-priority candidate
// (ties by ascending id) and record its tentative payment.
ExplorationResult run_exploration(const AuctionInstance& instance, const ReportVector& reports,
                                  const ExplorationHooks& hooks, const PriorityStrategy& strategy);

ExplorationResult run_exploration(std::shared_ptr<const ProfileGraph> graph, int item_count,
                                  const ExplorationHooks& hooks, const PriorityStrategy& strategy);

}  // namespace muda
