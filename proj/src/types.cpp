#include "muda/types.hpp"

#include <queue>

namespace muda {

void AuctionInstance::validate() const {
  const int n = buyer_count();
  if (n < 1) throw std::invalid_argument("instance needs at least one buyer");
  if (item_count < 1) throw std::invalid_argument("item count must be >= 1");

  auto check_ids = [n](const std::vector<AgentId>& ids, AgentId owner) {
    AgentId prev = -1;
    for (AgentId j : ids) {
      if (j < 0 || j >= n) throw std::invalid_argument("neighbor id out of range");
      if (j == owner) throw std::invalid_argument("self-loop in neighbor set");
      if (j <= prev) throw std::invalid_argument("neighbor set must be sorted and unique");
      prev = j;
    }
  };
  check_ids(seller_neighbors, kSeller);
  for (int i = 0; i < n; ++i) {
    if (profiles[static_cast<size_t>(i)].valuation < 0.0)
      throw std::invalid_argument("valuation must be non-negative");
    check_ids(profiles[static_cast<size_t>(i)].neighbors, i);
  }

  // All buyers reachable from the seller via true neighbour sets.
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::queue<AgentId> frontier;
  for (AgentId j : seller_neighbors) {
    if (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = 1;
      frontier.push(j);
    }
  }
  int count = 0;
  while (!frontier.empty()) {
    AgentId i = frontier.front();
    frontier.pop();
    ++count;
    for (AgentId j : profiles[static_cast<size_t>(i)].neighbors) {
      if (!seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        frontier.push(j);
      }
    }
  }
  if (count != n) throw std::invalid_argument("all buyers must be reachable from the seller");
}

ReportVector ReportVector::truthful(const AuctionInstance& instance) {
  ReportVector reports;
  reports.entries.reserve(instance.profiles.size());
  for (const Profile& p : instance.profiles) {
    reports.entries.push_back(Report{p.valuation, p.neighbors, false});
  }
  return reports;
}

void validate_reports(const AuctionInstance& instance, const ReportVector& reports) {
  const int n = instance.buyer_count();
  if (static_cast<int>(reports.entries.size()) != n)
    throw std::invalid_argument("report vector needs one entry per buyer");
  for (int i = 0; i < n; ++i) {
    const Report& r = reports.entries[static_cast<size_t>(i)];
    if (r.silent) {
      if (r.valuation != 0.0 || !r.neighbors.empty())
        throw std::invalid_argument("silent report must be (0, {})");
      continue;
    }
    if (r.valuation < 0.0) throw std::invalid_argument("reported valuation must be non-negative");
    for (AgentId j : r.neighbors) {
      if (j < 0 || j >= n) throw std::invalid_argument("reported neighbor id out of range");
    }
    if (!detail::is_subset_sorted(r.neighbors, instance.profiles[static_cast<size_t>(i)].neighbors))
      throw std::invalid_argument("reported neighbors must be a subset of the true neighbor set");
  }
}

}  // namespace muda
