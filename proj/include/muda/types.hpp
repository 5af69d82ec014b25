#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace muda {

// Buyers are dense ids 0..n-1. The seller is a sentinel, never an AgentId.
using AgentId = int;
inline constexpr AgentId kSeller = -1;

// Absolute tolerance for money comparisons on floating-point runs.
inline constexpr double kMoneyTol = 1e-9;

// Thrown when a pluggable hook breaks the exploration contract
// (P not a subset of A, re-admission of an exhausted agent, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Profile {
  double valuation = 0.0;
  std::vector<AgentId> neighbors;  // sorted ascending, no self-loop
};

// Single-demand multi-unit auction instance: m homogeneous items, n buyers,
// true profiles. Every buyer must be reachable from the seller via true
// neighbour sets; validate() enforces this.
struct AuctionInstance {
  int item_count = 1;                     // m
  std::vector<AgentId> seller_neighbors;  // r_s, sorted ascending
  std::vector<Profile> profiles;          // indexed by AgentId

  int buyer_count() const { return static_cast<int>(profiles.size()); }
  void validate() const;
};

struct Report {
  double valuation = 0.0;
  std::vector<AgentId> neighbors;  // sorted ascending
  bool silent = false;             // silent => valuation 0, neighbors empty
};

struct ReportVector {
  std::vector<Report> entries;  // one per buyer

  static ReportVector truthful(const AuctionInstance& instance);
};

// Rejects reports that are not a feasible strategy: entry count mismatch,
// out-of-range neighbour ids, reported neighbours not a subset of the true
// neighbour set, or silent entries carrying data. Throws std::invalid_argument.
void validate_reports(const AuctionInstance& instance, const ReportVector& reports);

namespace detail {

inline void sort_unique(std::vector<AgentId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

inline bool is_subset_sorted(const std::vector<AgentId>& sub, const std::vector<AgentId>& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace detail

}  // namespace muda
