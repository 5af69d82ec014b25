#include "muda/network.hpp"

#include <queue>

namespace muda {

ProfileGraph::ProfileGraph(const AuctionInstance& instance, const ReportVector& reports) {
  const int n = instance.buyer_count();
  if (static_cast<int>(reports.entries.size()) != n)
    throw std::invalid_argument("malformed report vector: entry count mismatch");
  for (const Report& r : reports.entries) {
    for (AgentId j : r.neighbors) {
      if (j < 0 || j >= n) throw std::invalid_argument("malformed report: agent id out of range");
    }
  }

  seller_neighbors_ = instance.seller_neighbors;
  adjacency_.assign(static_cast<size_t>(n), {});
  valuation_.assign(static_cast<size_t>(n), 0.0);
  reachable_.assign(static_cast<size_t>(n), 0);

  // Fixed-point expansion from the seller: only edges out of the seller and
  // out of already-reachable buyers count. Worklist in ascending-id order for
  // determinism; the resulting set is order-independent.
  std::queue<AgentId> frontier;
  for (AgentId j : seller_neighbors_) {
    if (!reachable_[static_cast<size_t>(j)]) {
      reachable_[static_cast<size_t>(j)] = 1;
      frontier.push(j);
    }
  }
  while (!frontier.empty()) {
    AgentId i = frontier.front();
    frontier.pop();
    const Report& r = reports.entries[static_cast<size_t>(i)];
    if (r.silent) continue;
    for (AgentId j : r.neighbors) {
      if (!reachable_[static_cast<size_t>(j)]) {
        reachable_[static_cast<size_t>(j)] = 1;
        frontier.push(j);
      }
    }
  }

  for (AgentId i = 0; i < n; ++i) {
    if (!reachable_[static_cast<size_t>(i)]) continue;
    reachable_order_.push_back(i);
    ++reachable_count_;
    const Report& r = reports.entries[static_cast<size_t>(i)];
    if (r.silent) continue;
    valuation_[static_cast<size_t>(i)] = r.valuation;
    adjacency_[static_cast<size_t>(i)] = r.neighbors;
  }
}

std::vector<AgentId> ProfileGraph::silenced() const {
  std::vector<AgentId> out;
  for (AgentId i = 0; i < buyer_count(); ++i) {
    if (!reachable_[static_cast<size_t>(i)]) out.push_back(i);
  }
  return out;
}

bool is_critical(const ProfileGraph& g, AgentId w, AgentId i) {
  if (i < 0 || i >= g.buyer_count() || !g.reachable(i))
    throw std::invalid_argument("criticality query on a silent buyer");
  if (w == i) return true;
  // Remove w and recheck reachability of i from the seller.
  std::vector<char> seen(static_cast<size_t>(g.buyer_count()), 0);
  std::queue<AgentId> frontier;
  for (AgentId j : g.seller_neighbors()) {
    if (j == w || seen[static_cast<size_t>(j)]) continue;
    if (j == i) return false;
    seen[static_cast<size_t>(j)] = 1;
    frontier.push(j);
  }
  while (!frontier.empty()) {
    AgentId u = frontier.front();
    frontier.pop();
    for (AgentId j : g.neighbors(u)) {
      if (j == w || seen[static_cast<size_t>(j)]) continue;
      if (j == i) return false;
      seen[static_cast<size_t>(j)] = 1;
      frontier.push(j);
    }
  }
  return true;
}

bool CriticalTree::on_root_path(AgentId w, AgentId i) const {
  if (!contains(i)) return false;
  for (AgentId cur = i; cur != kSeller; cur = parent[static_cast<size_t>(cur)]) {
    if (cur == w) return true;
  }
  return false;
}

std::vector<AgentId> CriticalTree::subtree(AgentId i) const {
  std::vector<AgentId> out;
  if (!contains(i)) return out;
  const int n = static_cast<int>(parent.size());
  for (AgentId j = 0; j < n; ++j) {
    if (!contains(j)) continue;
    for (AgentId cur = j; cur != kSeller; cur = parent[static_cast<size_t>(cur)]) {
      if (cur == i) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

namespace {

// Node indexing for the dominator computation: 0 is the seller, buyer i is i+1.
constexpr int kRoot = 0;

int intersect(const std::vector<int>& idom, const std::vector<int>& order_of, int a, int b) {
  while (a != b) {
    while (order_of[static_cast<size_t>(a)] > order_of[static_cast<size_t>(b)])
      a = idom[static_cast<size_t>(a)];
    while (order_of[static_cast<size_t>(b)] > order_of[static_cast<size_t>(a)])
      b = idom[static_cast<size_t>(b)];
  }
  return a;
}

}  // namespace

CriticalTree critical_tree(const ProfileGraph& g) {
  const int n = g.buyer_count();
  const int nodes = n + 1;

  std::vector<std::vector<int>> preds(static_cast<size_t>(nodes));
  for (AgentId j : g.seller_neighbors()) preds[static_cast<size_t>(j + 1)].push_back(kRoot);
  for (AgentId i : g.reachable_buyers()) {
    for (AgentId j : g.neighbors(i)) preds[static_cast<size_t>(j + 1)].push_back(i + 1);
  }

  // Reverse postorder of the reachable subgraph (iterative DFS from the root).
  std::vector<int> postorder;
  postorder.reserve(static_cast<size_t>(nodes));
  std::vector<char> visited(static_cast<size_t>(nodes), 0);
  std::vector<std::pair<int, size_t>> stack;
  visited[kRoot] = 1;
  stack.emplace_back(kRoot, 0);
  auto successors = [&](int node) -> const std::vector<AgentId>& {
    return node == kRoot ? g.seller_neighbors() : g.neighbors(node - 1);
  };
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const std::vector<AgentId>& succ = successors(node);
    if (next < succ.size()) {
      int child = succ[next] + 1;
      ++next;
      if (!visited[static_cast<size_t>(child)]) {
        visited[static_cast<size_t>(child)] = 1;
        stack.emplace_back(child, 0);
      }
    } else {
      postorder.push_back(node);
      stack.pop_back();
    }
  }

  std::vector<int> rpo(postorder.rbegin(), postorder.rend());
  std::vector<int> order_of(static_cast<size_t>(nodes), -1);
  for (size_t k = 0; k < rpo.size(); ++k) order_of[static_cast<size_t>(rpo[k])] = static_cast<int>(k);

  // Cooper-Harvey-Kennedy iteration.
  std::vector<int> idom(static_cast<size_t>(nodes), -1);
  idom[kRoot] = kRoot;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int node : rpo) {
      if (node == kRoot) continue;
      int new_idom = -1;
      for (int p : preds[static_cast<size_t>(node)]) {
        if (idom[static_cast<size_t>(p)] == -1) continue;
        new_idom = (new_idom == -1) ? p : intersect(idom, order_of, new_idom, p);
      }
      if (new_idom != -1 && idom[static_cast<size_t>(node)] != new_idom) {
        idom[static_cast<size_t>(node)] = new_idom;
        changed = true;
      }
    }
  }

  CriticalTree tree;
  tree.parent.assign(static_cast<size_t>(n), CriticalTree::kAbsent);
  tree.depth.assign(static_cast<size_t>(n), -1);
  for (AgentId i : g.reachable_buyers()) {
    int d = idom[static_cast<size_t>(i + 1)];
    tree.parent[static_cast<size_t>(i)] = (d == kRoot) ? kSeller : d - 1;
  }
  for (AgentId i : g.reachable_buyers()) {
    int depth = 0;
    for (AgentId cur = i; cur != kSeller; cur = tree.parent[static_cast<size_t>(cur)]) ++depth;
    tree.depth[static_cast<size_t>(i)] = depth;
  }
  return tree;
}

std::vector<int> seller_distances(const ProfileGraph& g) {
  std::vector<int> dist(static_cast<size_t>(g.buyer_count()), -1);
  std::queue<AgentId> frontier;
  for (AgentId j : g.seller_neighbors()) {
    if (dist[static_cast<size_t>(j)] == -1) {
      dist[static_cast<size_t>(j)] = 1;
      frontier.push(j);
    }
  }
  while (!frontier.empty()) {
    AgentId i = frontier.front();
    frontier.pop();
    for (AgentId j : g.neighbors(i)) {
      if (dist[static_cast<size_t>(j)] == -1) {
        dist[static_cast<size_t>(j)] = dist[static_cast<size_t>(i)] + 1;
        frontier.push(j);
      }
    }
  }
  return dist;
}

}  // namespace muda
