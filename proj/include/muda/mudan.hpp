#pragma once

#include <memory>

#include "muda/explorer.hpp"
#include "muda/mechanism.hpp"
#include "muda/strategies.hpp"

namespace muda {

// MUDAN: multi-unit diffusion auction with no reward. Items are committed to
// winners during the exploration; every payment is non-negative. Runs exactly
// min(m, reachable) winner iterations.
struct MudanResult {
  Outcome outcome;
  ExplorationTrace trace;
  AgentId last_winner = kSeller;  // w*
};

MudanResult run_mudan(const AuctionInstance& instance, const ReportVector& reports,
                      const PriorityStrategy& strategy);

class MudanMechanism : public Mechanism {
 public:
  explicit MudanMechanism(StrategyKind kind = StrategyKind::kDegree, std::uint64_t seed = 0)
      : strategy_(make_strategy(kind, seed)) {}

  MechanismResult run(const AuctionInstance& instance, const ReportVector& reports) const override {
    MudanResult r = run_mudan(instance, reports, *strategy_);
    return MechanismResult{std::move(r.outcome), r.last_winner};
  }
  std::string_view name() const override { return "mudan"; }

 private:
  std::unique_ptr<PriorityStrategy> strategy_;
};

}  // namespace muda
