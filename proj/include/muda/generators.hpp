#pragma once

#include "muda/io.hpp"
#include "muda/rng.hpp"

namespace muda {

// Synthetic graphs for desk-scale experiments. Node 0 is always present and
// connected; with symmetric=true every edge gets its reverse (social graphs),
// otherwise edges point away from node 0 so it can serve as a rooted seller.

// Random tree: node i >= 1 attaches to a uniform parent < i.
Digraph random_tree(int nodes, Rng& rng, bool symmetric = false);

// Preferential attachment: each new node receives `edges_per_node` parents
// sampled proportionally to (degree + 1) among existing nodes.
Digraph preferential_attachment(int nodes, int edges_per_node, Rng& rng, bool symmetric = false);

// Random tree backbone plus independent extra edges with probability p.
Digraph erdos_renyi_attached(int nodes, double extra_edge_prob, Rng& rng, bool symmetric = false);

}  // namespace muda
