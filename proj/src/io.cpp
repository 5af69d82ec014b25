#include "muda/io.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace muda {

namespace {

std::runtime_error parse_error(const std::string& what, int line) {
  return std::runtime_error(what + " at line " + std::to_string(line));
}

}  // namespace

Digraph parse_edge_list(std::istream& in, bool symmetrize) {
  Digraph graph;
  std::unordered_map<long long, int> index_of;
  auto dense = [&](long long label) {
    auto [it, inserted] = index_of.emplace(label, graph.node_count());
    if (inserted) {
      graph.out.emplace_back();
      graph.labels.push_back(label);
    }
    return it->second;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v)) throw parse_error("malformed edge", line_no);
    std::string rest;
    if (row >> rest) throw parse_error("trailing tokens on edge", line_no);
    const int ui = dense(u);
    const int vi = dense(v);
    graph.out[static_cast<size_t>(ui)].push_back(vi);
    if (symmetrize && ui != vi) graph.out[static_cast<size_t>(vi)].push_back(ui);
  }
  for (auto& nbrs : graph.out) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return graph;
}

Digraph read_edge_list(const std::string& path, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return parse_edge_list(in, symmetrize);
}

void write_edge_list(std::ostream& out, const Digraph& graph) {
  for (int u = 0; u < graph.node_count(); ++u) {
    for (int v : graph.out[static_cast<size_t>(u)])
      out << graph.labels[static_cast<size_t>(u)] << ' ' << graph.labels[static_cast<size_t>(v)]
          << '\n';
  }
}

ParsedProfiles parse_profiles(std::istream& in, bool multi_demand,
                              std::vector<std::string>* warnings) {
  ParsedProfiles parsed;
  std::unordered_map<long long, int> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2) throw parse_error("profile row needs id and a value", line_no);
    if (!multi_demand && cells.size() > 2)
      throw parse_error("single-demand profile row has multiple values", line_no);

    long long id = 0;
    try {
      id = std::stoll(cells[0]);
    } catch (const std::exception&) {
      throw parse_error("bad agent id", line_no);
    }
    if (!seen.emplace(id, line_no).second) throw parse_error("duplicate agent id", line_no);

    std::vector<double> values;
    for (size_t k = 1; k < cells.size(); ++k) {
      double v = 0.0;
      try {
        v = std::stod(cells[k]);
      } catch (const std::exception&) {
        throw parse_error("bad valuation", line_no);
      }
      if (v < 0.0) throw parse_error("negative valuation", line_no);
      values.push_back(v);
    }
    if (multi_demand && !std::is_sorted(values.begin(), values.end(), std::greater_equal<double>())) {
      std::sort(values.begin(), values.end(), std::greater<double>());
      if (warnings)
        warnings->push_back("profile row " + std::to_string(line_no) +
                            ": values sorted into descending order");
    }
    parsed.ids.push_back(id);
    parsed.values.push_back(std::move(values));
  }
  return parsed;
}

ParsedProfiles read_profiles(const std::string& path, bool multi_demand,
                             std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profiles: " + path);
  return parse_profiles(in, multi_demand, warnings);
}

namespace {

struct ReachableSet {
  std::vector<int> nodes;  // dense graph indices of reachable non-seller nodes
  int dropped = 0;
};

ReachableSet reachable_from(const Digraph& graph, int seller) {
  if (seller < 0 || seller >= graph.node_count())
    throw std::invalid_argument("seller node out of range");
  std::vector<char> seen(static_cast<size_t>(graph.node_count()), 0);
  seen[static_cast<size_t>(seller)] = 1;
  std::queue<int> frontier;
  frontier.push(seller);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int v : graph.out[static_cast<size_t>(u)]) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        frontier.push(v);
      }
    }
  }
  ReachableSet out;
  for (int v = 0; v < graph.node_count(); ++v) {
    if (v == seller) continue;
    if (seen[static_cast<size_t>(v)]) {
      out.nodes.push_back(v);
    } else {
      ++out.dropped;
    }
  }
  // Buyer ids ascend with original labels for stable, reproducible instances.
  std::sort(out.nodes.begin(), out.nodes.end(), [&](int a, int b) {
    return graph.labels[static_cast<size_t>(a)] < graph.labels[static_cast<size_t>(b)];
  });
  return out;
}

template <typename Instance, typename AssignValues>
void build_common(const Digraph& graph, int seller_node, Instance& instance,
                  std::vector<long long>& buyer_labels, int& dropped, AssignValues&& assign) {
  ReachableSet reach = reachable_from(graph, seller_node);
  dropped = reach.dropped;

  std::vector<int> agent_of(static_cast<size_t>(graph.node_count()), -1);
  for (size_t k = 0; k < reach.nodes.size(); ++k)
    agent_of[static_cast<size_t>(reach.nodes[k])] = static_cast<int>(k);

  instance.profiles.resize(reach.nodes.size());
  buyer_labels.resize(reach.nodes.size());
  for (size_t k = 0; k < reach.nodes.size(); ++k) {
    const int node = reach.nodes[k];
    buyer_labels[k] = graph.labels[static_cast<size_t>(node)];
    for (int v : graph.out[static_cast<size_t>(node)]) {
      if (v == seller_node) continue;
      instance.profiles[k].neighbors.push_back(agent_of[static_cast<size_t>(v)]);
    }
    detail::sort_unique(instance.profiles[k].neighbors);
    assign(instance.profiles[k], buyer_labels[k]);
  }
  for (int v : graph.out[static_cast<size_t>(seller_node)]) {
    if (v == seller_node) continue;
    instance.seller_neighbors.push_back(agent_of[static_cast<size_t>(v)]);
  }
  detail::sort_unique(instance.seller_neighbors);
}

}  // namespace

BuiltInstance build_instance(const Digraph& graph, int seller_node, const ParsedProfiles& profiles,
                             int item_count) {
  std::unordered_map<long long, const std::vector<double>*> values_of;
  for (size_t k = 0; k < profiles.ids.size(); ++k)
    values_of[profiles.ids[k]] = &profiles.values[k];

  BuiltInstance built;
  built.instance.item_count = item_count;
  build_common(graph, seller_node, built.instance, built.buyer_labels, built.dropped_unreachable,
               [&](Profile& p, long long label) {
                 auto it = values_of.find(label);
                 if (it == values_of.end())
                   throw std::runtime_error("no valuation for node " + std::to_string(label));
                 p.valuation = it->second->front();
               });
  built.instance.validate();
  return built;
}

BuiltMultiInstance build_multi_instance(const Digraph& graph, int seller_node,
                                        const ParsedProfiles& profiles, int item_count) {
  std::unordered_map<long long, const std::vector<double>*> values_of;
  for (size_t k = 0; k < profiles.ids.size(); ++k)
    values_of[profiles.ids[k]] = &profiles.values[k];

  BuiltMultiInstance built;
  built.instance.item_count = item_count;
  build_common(graph, seller_node, built.instance, built.buyer_labels, built.dropped_unreachable,
               [&](MultiProfile& p, long long label) {
                 auto it = values_of.find(label);
                 if (it == values_of.end())
                   throw std::runtime_error("no valuation for node " + std::to_string(label));
                 p.valuations = *it->second;
                 if (static_cast<int>(p.valuations.size()) > item_count)
                   throw std::runtime_error("valuation vector longer than m for node " +
                                            std::to_string(label));
               });
  built.instance.validate();
  return built;
}

}  // namespace muda
