#pragma once

#include <memory>

#include "muda/explorer.hpp"
#include "muda/mechanism.hpp"
#include "muda/strategies.hpp"

namespace muda {

// MUDAR: multi-unit diffusion auction with reward. Exploration runs until the
// whole reachable graph is classified; allocation is decided afterwards.
// Winners holding the globally top-m reported valuations buy at their
// tentative payment; the remaining winners receive a reward equal to the
// utility they would have had with an item.
struct MudarPartition {
  std::vector<AgentId> allocated;  // W_A, ascending id
  std::vector<AgentId> rewarded;   // W_R, ascending id
};

struct MudarResult {
  Outcome outcome;
  MudarPartition partition;
  ExplorationTrace trace;
};

MudarResult run_mudar(const AuctionInstance& instance, const ReportVector& reports,
                      const PriorityStrategy& strategy);

class MudarMechanism : public Mechanism {
 public:
  explicit MudarMechanism(StrategyKind kind = StrategyKind::kDegree, std::uint64_t seed = 0)
      : strategy_(make_strategy(kind, seed)) {}

  MechanismResult run(const AuctionInstance& instance, const ReportVector& reports) const override {
    MudarResult r = run_mudar(instance, reports, *strategy_);
    return MechanismResult{std::move(r.outcome), std::nullopt};
  }
  std::string_view name() const override { return "mudar"; }

 private:
  std::unique_ptr<PriorityStrategy> strategy_;
};

}  // namespace muda
