// SPDX-License-Identifier: Apache-2.0

#include "gig/model/dti_graph.hpp"

#include <algorithm>
#include <string>

#include "gig/error.hpp"

namespace gig::model {

DtiGraph DtiGraph::make(std::size_t num_drugs, std::size_t num_targets, std::vector<Pair> edges) {
  for (const auto& [i, j] : edges) {
    if (i >= num_drugs || j >= num_targets) {
      throw ContractViolation("interaction (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") outside " + std::to_string(num_drugs) + "x" +
                              std::to_string(num_targets));
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ContractViolation("duplicate interaction edge");
  }
  DtiGraph g;
  g.num_drugs = num_drugs;
  g.num_targets = num_targets;
  g.positive_edges = std::move(edges);
  return g;
}

bool DtiGraph::contains(const Pair& p) const {
  return std::binary_search(positive_edges.begin(), positive_edges.end(), p);
}

nn::EdgeIndexGraph DtiGraph::edge_index() const {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(positive_edges.size());
  for (const auto& [i, j] : positive_edges) edges.emplace_back(i, num_drugs + j);
  auto g = nn::EdgeIndexGraph::from_undirected(num_drugs + num_targets, edges);
  assert_bipartite(g, num_drugs);
  return g;
}

void assert_bipartite(const nn::EdgeIndexGraph& graph, std::size_t num_drugs) {
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    if ((graph.src[e] < num_drugs) == (graph.dst[e] < num_drugs)) {
      throw ContractViolation("interaction graph edge " + std::to_string(graph.src[e]) + " -> " +
                              std::to_string(graph.dst[e]) + " stays within one partition");
    }
  }
}

}  // namespace gig::model
