#pragma once

#include <vector>

#include "muda/network.hpp"
#include "muda/types.hpp"

namespace muda::testing {

// The running seven-buyer example: s -> {a, b}, b -> c, c -> {d, e}, e -> f,
// f -> g. Ids: a=0 b=1 c=2 d=3 e=4 f=5 g=6.
enum SevenBuyer : AgentId { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6 };

inline AuctionInstance seven_buyer_instance(int m = 4) {
  AuctionInstance inst;
  inst.item_count = m;
  inst.seller_neighbors = {A, B};
  inst.profiles = {
      {3.0, {}},     // a
      {1.0, {C}},    // b
      {1.0, {D, E}}, // c
      {4.0, {}},     // d
      {3.5, {F}},    // e
      {6.0, {G}},    // f
      {3.5, {}},     // g
  };
  inst.validate();
  return inst;
}

// f hides her connection: r'_f = {} silences g.
inline ReportVector seven_buyer_f_hides() {
  ReportVector reports = ReportVector::truthful(seven_buyer_instance());
  reports.entries[F].neighbors = {};
  return reports;
}

// Welfare-tightness family: chain s -> i_1 -> ... -> i_{m+1} with the j-buyers hung
// off i_{m-1}. Ids 0..m-1 are i_1..i_m (wait: 0..m are i_1..i_{m+1}),
// m+1..2m-1 are j_1..j_{m-1}. Valuations: i_1..i_{m-1} get n, i_m gets n^2,
// i_{m+1} gets n^3, each j gets n^2 - tau.
inline AuctionInstance tightness_instance(int n, int m, double tau) {
  AuctionInstance inst;
  inst.item_count = m;
  const int buyers = 2 * m;
  inst.profiles.resize(static_cast<size_t>(buyers));
  inst.seller_neighbors = {0};
  const double nn = static_cast<double>(n);
  for (AgentId k = 0; k < m; ++k)
    inst.profiles[static_cast<size_t>(k)].neighbors.push_back(k + 1);
  for (AgentId k = 0; k + 1 < m; ++k) inst.profiles[static_cast<size_t>(k)].valuation = nn;
  inst.profiles[static_cast<size_t>(m - 1)].valuation = nn * nn;  // i_m
  inst.profiles[static_cast<size_t>(m)].valuation = nn * nn * nn; // i_{m+1}
  for (AgentId j = m + 1; j < buyers; ++j) {
    inst.profiles[static_cast<size_t>(j)].valuation = nn * nn - tau;
    if (m >= 2) inst.profiles[static_cast<size_t>(m - 2)].neighbors.push_back(j);
  }
  for (Profile& p : inst.profiles) detail::sort_unique(p.neighbors);
  inst.validate();
  return inst;
}

inline AuctionInstance chain_instance(std::vector<double> values, int m) {
  AuctionInstance inst;
  inst.item_count = m;
  inst.profiles.resize(values.size());
  inst.seller_neighbors = {0};
  for (size_t i = 0; i < values.size(); ++i) {
    inst.profiles[i].valuation = values[i];
    if (i + 1 < values.size()) inst.profiles[i].neighbors = {static_cast<AgentId>(i + 1)};
  }
  inst.validate();
  return inst;
}

inline AuctionInstance star_instance(std::vector<double> values, int m) {
  AuctionInstance inst;
  inst.item_count = m;
  inst.profiles.resize(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    inst.profiles[i].valuation = values[i];
    inst.seller_neighbors.push_back(static_cast<AgentId>(i));
  }
  inst.validate();
  return inst;
}

// Exhaustive-path criticality oracle: enumerate every simple seller-to-target
// path by DFS and check that all of them pass through w. Independent of the
// deletion-based implementation it verifies.
inline bool critical_by_path_enumeration(const ProfileGraph& g, AgentId w, AgentId target) {
  std::vector<char> on_path(static_cast<size_t>(g.buyer_count()), 0);
  bool found_avoiding_path = false;
  auto dfs = [&](auto&& self, AgentId node) -> void {
    if (found_avoiding_path) return;
    if (node == target) {
      found_avoiding_path = true;  // path reached target; w never appeared on it
      return;
    }
    for (AgentId next : g.neighbors(node)) {
      if (next == w && next != target) continue;
      if (on_path[static_cast<size_t>(next)]) continue;
      on_path[static_cast<size_t>(next)] = 1;
      self(self, next);
      on_path[static_cast<size_t>(next)] = 0;
    }
  };
  if (w == target) return true;
  for (AgentId start : g.seller_neighbors()) {
    if (found_avoiding_path) break;
    if (start == w) continue;
    on_path[static_cast<size_t>(start)] = 1;
    dfs(dfs, start);
    on_path[static_cast<size_t>(start)] = 0;
  }
  return !found_avoiding_path;
}

}  // namespace muda::testing
