#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "muda/types.hpp"

namespace muda {

// Allocation bits and signed payments per buyer. Negative payment = reward.
struct Outcome {
  std::vector<std::uint8_t> allocation;
  std::vector<double> payment;

  explicit Outcome(int n = 0)
      : allocation(static_cast<size_t>(n), 0), payment(static_cast<size_t>(n), 0.0) {}

  int allocated_count() const {
    int c = 0;
    for (std::uint8_t b : allocation) c += b;
    return c;
  }
};

// All Def.-2 quantities. Utilities are computed from TRUE valuations.
struct Metrics {
  std::vector<double> utilities;  // u_i = v_i * pi_i - p_i
  double social_welfare = 0.0;    // sum v_i * pi_i
  double revenue = 0.0;           // sum p_i
  double sw_opt = 0.0;            // sum of the top-m true valuations
};

Metrics compute_metrics(const AuctionInstance& instance, const Outcome& outcome);

// Sum of the top-m true valuations over all buyers.
double optimal_welfare(const AuctionInstance& instance);

// SW_wopt: sum of the top-m true valuations over B*, the buyers for whom
// w_star is not critical in the profile graph of `reports` (w_star itself is
// a member of B*: it is explored). Throws if w_star is unreachable.
double weakly_optimal_welfare(const AuctionInstance& instance, const ReportVector& reports,
                              AgentId w_star);

struct MechanismResult {
  Outcome outcome;
  std::optional<AgentId> last_winner;  // w*, for mechanisms that define one
};

// Uniform mechanism interface consumed by the deviation oracle and the CLI.
class Mechanism {
 public:
  virtual ~Mechanism() = default;
  virtual MechanismResult run(const AuctionInstance& instance, const ReportVector& reports) const = 0;
  virtual std::string_view name() const = 0;
};

}  // namespace muda
