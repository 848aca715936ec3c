// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_NN_GRAPH_HPP_
#define GIG_NN_GRAPH_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gig/ad/tape.hpp"
#include "gig/matrix.hpp"

namespace gig::nn {

// Directed edge list; undirected inputs store both directions.
struct EdgeIndexGraph {
  std::size_t num_nodes = 0;
  std::vector<std::size_t> src;
  std::vector<std::size_t> dst;

  std::size_t num_edges() const noexcept { return src.size(); }

  // Rejects self-loops and out-of-range endpoints.
  static EdgeIndexGraph from_undirected(std::size_t num_nodes,
                                        std::span<const std::pair<std::size_t, std::size_t>> edges);
};

// Propagation structures derived once per graph and reused every epoch.
struct PreparedGraph {
  EdgeIndexGraph graph;
  // D^-1/2 (A + I) D^-1/2, rows indexed by destination node.
  std::shared_ptr<const ad::SparseMatrix> gcn_adjacency;
  // Attention entries: for every edge v -> u one entry (u, v), then one self
  // entry (u, n + u) per node. Sources >= n address the "self" row block.
  std::vector<std::size_t> attention_dst;
  std::vector<std::size_t> attention_src;
};

PreparedGraph prepare_graph(EdgeIndexGraph graph);

// A molecular graph ready for encoding: topology plus node features.
struct FeatureGraph {
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // undirected
  Matrix features;
};

// Disjoint union of several feature graphs with per-node graph ids.
struct GraphBatch {
  PreparedGraph graph;
  Matrix features;
  std::vector<std::size_t> graph_ids;
  std::size_t num_graphs = 0;
};

GraphBatch make_batch(std::span<const FeatureGraph* const> graphs);

}  // namespace gig::nn

#endif  // GIG_NN_GRAPH_HPP_
