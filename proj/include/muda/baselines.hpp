#pragma once

#include "muda/mechanism.hpp"

namespace muda {

// Win test for DNA-MU. The pseudocode uses a strict comparison while the
// surrounding prose reads as weak; strict is the default and the fixture
// tests pass under either.
enum class DnamuWinRule { kStrict, kWeak };

// DNA-MU: walks reachable buyers in ascending seller-distance order (ties by
// ascending id). A buyer i wins when her reported valuation beats the m'-th
// highest reported valuation among reachable buyers outside her critical-tree
// subtree and outside W (threshold 0 when fewer than m' such values exist);
// she then pays that threshold.
Outcome run_dnamu(const AuctionInstance& instance, const ReportVector& reports,
                  DnamuWinRule rule = DnamuWinRule::kStrict);

class DnamuMechanism : public Mechanism {
 public:
  explicit DnamuMechanism(DnamuWinRule rule = DnamuWinRule::kStrict) : rule_(rule) {}

  MechanismResult run(const AuctionInstance& instance, const ReportVector& reports) const override {
    return MechanismResult{run_dnamu(instance, reports, rule_), std::nullopt};
  }
  std::string_view name() const override { return "dna-mu"; }

 private:
  DnamuWinRule rule_;
};

}  // namespace muda
