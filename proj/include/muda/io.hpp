#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "muda/multidemand.hpp"
#include "muda/types.hpp"

namespace muda {

// Plain directed graph over dense node indices, as ingested from edge lists.
struct Digraph {
  std::vector<std::vector<int>> out;
  std::vector<long long> labels;  // dense index -> original node id

  int node_count() const { return static_cast<int>(out.size()); }
};

// Whitespace-separated "u v" pairs, one edge per line; lines starting with '#'
// are ignored; node ids are compacted to dense indices in first-seen order.
// symmetrize adds the reverse of every edge (undirected corpora).
// Throws std::runtime_error with the line number on malformed input.
Digraph parse_edge_list(std::istream& in, bool symmetrize = false);
Digraph read_edge_list(const std::string& path, bool symmetrize = false);

void write_edge_list(std::ostream& out, const Digraph& graph);

// Profile CSV: "agent_id,v1[,v2,...]" per line, '#' comments ignored. Rows are
// keyed by original node ids. Single-demand rejects multi-value rows;
// multi-demand sorts each row descending (a warning is appended to *warnings
// when a row needed sorting). Throws on negative values or duplicate ids.
struct ParsedProfiles {
  std::vector<long long> ids;
  std::vector<std::vector<double>> values;
};

ParsedProfiles parse_profiles(std::istream& in, bool multi_demand,
                              std::vector<std::string>* warnings = nullptr);
ParsedProfiles read_profiles(const std::string& path, bool multi_demand,
                             std::vector<std::string>* warnings = nullptr);

// Builds an auction instance from a graph and a seller node: the seller's
// out-neighbours become r_s, the remaining nodes reachable from the seller
// become buyers 0..n-1 (in label order). Unreachable nodes are dropped and
// counted. Valuations are matched to buyers by original node id.
struct BuiltInstance {
  AuctionInstance instance;
  std::vector<long long> buyer_labels;  // AgentId -> original node id
  int dropped_unreachable = 0;
};

BuiltInstance build_instance(const Digraph& graph, int seller_node,
                             const ParsedProfiles& profiles, int item_count);

struct BuiltMultiInstance {
  MultiAuctionInstance instance;
  std::vector<long long> buyer_labels;
  int dropped_unreachable = 0;
};

BuiltMultiInstance build_multi_instance(const Digraph& graph, int seller_node,
                                        const ParsedProfiles& profiles, int item_count);

}  // namespace muda
