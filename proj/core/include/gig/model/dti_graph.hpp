// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_MODEL_DTI_GRAPH_HPP_
#define GIG_MODEL_DTI_GRAPH_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gig/nn/graph.hpp"

namespace gig::model {

// (drug index, target index)
using Pair = std::pair<std::size_t, std::size_t>;

// Known interactions between m drugs and n targets.
struct DtiGraph {
  std::size_t num_drugs = 0;
  std::size_t num_targets = 0;
  std::vector<Pair> positive_edges;  // sorted, duplicate-free

  // Validates ranges and rejects duplicates; the result is sorted.
  static DtiGraph make(std::size_t num_drugs, std::size_t num_targets, std::vector<Pair> edges);

  bool contains(const Pair& p) const;

  // Interaction graph on m + n nodes: drugs 0..m-1, targets m..m+n-1.
  nn::EdgeIndexGraph edge_index() const;
};

// Throws ContractViolation if an edge joins two nodes on the same side.
void assert_bipartite(const nn::EdgeIndexGraph& graph, std::size_t num_drugs);

}  // namespace gig::model

#endif  // GIG_MODEL_DTI_GRAPH_HPP_
