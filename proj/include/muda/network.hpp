#pragma once

#include <vector>

#include "muda/types.hpp"

namespace muda {

// Profile graph G_theta': directed graph induced by the seller's neighbour set
// and the reported neighbour sets of reachable buyers. Buyers that cannot be
// reached from the seller are treated as silent (valuation 0, no out-edges)
// regardless of what their report entry says.
class ProfileGraph {
 public:
  ProfileGraph(const AuctionInstance& instance, const ReportVector& reports);

  int buyer_count() const { return static_cast<int>(adjacency_.size()); }
  bool reachable(AgentId i) const { return reachable_[static_cast<size_t>(i)] != 0; }
  int reachable_count() const { return reachable_count_; }

  const std::vector<AgentId>& seller_neighbors() const { return seller_neighbors_; }
  // Effective out-neighbours: the reported set for reachable buyers, empty for silent ones.
  const std::vector<AgentId>& neighbors(AgentId i) const { return adjacency_[static_cast<size_t>(i)]; }
  // Effective reported valuation: 0 for silent buyers.
  double reported_valuation(AgentId i) const { return valuation_[static_cast<size_t>(i)]; }

  const std::vector<AgentId>& reachable_buyers() const { return reachable_order_; }
  // Buyers whose report was replaced by the silent profile (i.e. unreachable ones).
  std::vector<AgentId> silenced() const;

 private:
  std::vector<AgentId> seller_neighbors_;
  std::vector<std::vector<AgentId>> adjacency_;
  std::vector<double> valuation_;
  std::vector<char> reachable_;
  std::vector<AgentId> reachable_order_;  // ascending id
  int reachable_count_ = 0;
};

// True iff every path from the seller to i passes through w. Self-criticality
// is true by the path definition. Throws std::invalid_argument when i is not
// reachable (query on a silent buyer).
bool is_critical(const ProfileGraph& g, AgentId w, AgentId i);

// Diffusion critical tree: rooted at the seller, spanning exactly the
// reachable buyers; parent(j) is the nearest agent critical to j (the
// immediate dominator). parent is kSeller for buyers whose nearest critical
// node is the seller itself; -2 marks unreachable buyers.
struct CriticalTree {
  static constexpr AgentId kAbsent = -2;

  std::vector<AgentId> parent;  // kSeller for seller-dominated, kAbsent if unreachable
  std::vector<int> depth;       // hops from the seller in the tree, -1 if unreachable

  bool contains(AgentId i) const { return parent[static_cast<size_t>(i)] != kAbsent; }
  // w critical to i <=> w lies on the tree path from the root to i (w == i included).
  bool on_root_path(AgentId w, AgentId i) const;
  std::vector<AgentId> subtree(AgentId i) const;  // descendants of i, including i
};

CriticalTree critical_tree(const ProfileGraph& g);

// Shortest-path hop counts from the seller over the profile graph; -1 for
// unreachable buyers.
std::vector<int> seller_distances(const ProfileGraph& g);

}  // namespace muda
