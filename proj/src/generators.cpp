#include "muda/generators.hpp"

#include <algorithm>

namespace muda {

namespace {

Digraph empty_graph(int nodes) {
  if (nodes < 1) throw std::invalid_argument("graph needs at least one node");
  Digraph g;
  g.out.resize(static_cast<size_t>(nodes));
  g.labels.resize(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) g.labels[static_cast<size_t>(i)] = i;
  return g;
}

void add_edge(Digraph& g, int u, int v, bool symmetric) {
  g.out[static_cast<size_t>(u)].push_back(v);
  if (symmetric) g.out[static_cast<size_t>(v)].push_back(u);
}

void finish(Digraph& g) {
  for (auto& nbrs : g.out) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
}

}  // namespace

Digraph random_tree(int nodes, Rng& rng, bool symmetric) {
  Digraph g = empty_graph(nodes);
  for (int i = 1; i < nodes; ++i) {
    const int parent = static_cast<int>(rng.uniform_int(0, i - 1));
    add_edge(g, parent, i, symmetric);
  }
  finish(g);
  return g;
}

Digraph preferential_attachment(int nodes, int edges_per_node, Rng& rng, bool symmetric) {
  if (edges_per_node < 1) throw std::invalid_argument("edges_per_node must be >= 1");
  Digraph g = empty_graph(nodes);
  std::vector<long long> weight(static_cast<size_t>(nodes), 1);  // degree + 1
  long long total_weight = 1;
  for (int i = 1; i < nodes; ++i) {
    const int k = std::min(edges_per_node, i);
    std::vector<int> parents;
    while (static_cast<int>(parents.size()) < k) {
      long long pick = rng.uniform_int(0, total_weight - 1);
      int parent = 0;
      for (int u = 0; u < i; ++u) {
        pick -= weight[static_cast<size_t>(u)];
        if (pick < 0) {
          parent = u;
          break;
        }
      }
      if (std::find(parents.begin(), parents.end(), parent) == parents.end())
        parents.push_back(parent);
    }
    for (int parent : parents) {
      add_edge(g, parent, i, symmetric);
      weight[static_cast<size_t>(parent)] += 1;
      weight[static_cast<size_t>(i)] += 1;
      total_weight += 2;
    }
    total_weight += 1;  // the new node's base weight
  }
  finish(g);
  return g;
}

Digraph erdos_renyi_attached(int nodes, double extra_edge_prob, Rng& rng, bool symmetric) {
  Digraph g = random_tree(nodes, rng, symmetric);
  for (int u = 0; u < nodes; ++u) {
    for (int v = 0; v < nodes; ++v) {
      if (u == v) continue;
      if (rng.bernoulli(extra_edge_prob)) add_edge(g, u, v, symmetric);
    }
  }
  finish(g);
  return g;
}

}  // namespace muda
