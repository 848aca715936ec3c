// SPDX-License-Identifier: Apache-2.0

#include "gig/nn/graph.hpp"

#include <cmath>
#include <string>

#include "gig/error.hpp"

namespace gig::nn {

EdgeIndexGraph EdgeIndexGraph::from_undirected(
    std::size_t num_nodes, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  EdgeIndexGraph g;
  g.num_nodes = num_nodes;
  g.src.reserve(2 * edges.size());
  g.dst.reserve(2 * edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= num_nodes || b >= num_nodes) {
      throw ContractViolation("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") out of range for " + std::to_string(num_nodes) + " nodes");
    }
    if (a == b) throw ContractViolation("self-loop on node " + std::to_string(a));
    g.src.push_back(a);
    g.dst.push_back(b);
    g.src.push_back(b);
    g.dst.push_back(a);
  }
  return g;
}

PreparedGraph prepare_graph(EdgeIndexGraph graph) {
  PreparedGraph p;
  const std::size_t n = graph.num_nodes;
  const std::size_t m = graph.num_edges();

  std::vector<double> degree(n, 1.0);  // self-loop
  for (std::size_t e = 0; e < m; ++e) degree[graph.dst[e]] += 1.0;

  auto adj = std::make_shared<ad::SparseMatrix>();
  adj->rows = n;
  adj->cols = n;
  adj->row_index.reserve(m + n);
  adj->col_index.reserve(m + n);
  adj->value.reserve(m + n);
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t u = graph.dst[e];
    const std::size_t v = graph.src[e];
    adj->row_index.push_back(u);
    adj->col_index.push_back(v);
    adj->value.push_back(1.0 / std::sqrt(degree[u] * degree[v]));
  }
  for (std::size_t u = 0; u < n; ++u) {
    adj->row_index.push_back(u);
    adj->col_index.push_back(u);
    adj->value.push_back(1.0 / degree[u]);
  }
  p.gcn_adjacency = std::move(adj);

  p.attention_dst.reserve(m + n);
  p.attention_src.reserve(m + n);
  for (std::size_t e = 0; e < m; ++e) {
    p.attention_dst.push_back(graph.dst[e]);
    p.attention_src.push_back(graph.src[e]);
  }
  for (std::size_t u = 0; u < n; ++u) {
    p.attention_dst.push_back(u);
    p.attention_src.push_back(n + u);
  }
  p.graph = std::move(graph);
  return p;
}

GraphBatch make_batch(std::span<const FeatureGraph* const> graphs) {
  if (graphs.empty()) throw ContractViolation("make_batch: no graphs");
  const std::size_t dim = graphs.front()->features.cols();
  std::size_t total = 0;
  for (const FeatureGraph* g : graphs) {
    if (g->features.rows() == 0) throw ContractViolation("make_batch: empty graph");
    if (g->features.cols() != dim) throw ContractViolation("make_batch: feature width mismatch");
    total += g->features.rows();
  }
  GraphBatch batch;
  batch.num_graphs = graphs.size();
  batch.features = Matrix(total, dim);
  batch.graph_ids.reserve(total);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t offset = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const FeatureGraph& g = *graphs[gi];
    const std::size_t n = g.features.rows();
    std::copy(g.features.data().begin(), g.features.data().end(),
              batch.features.data().begin() + offset * dim);
    for (const auto& [a, b] : g.edges) edges.emplace_back(a + offset, b + offset);
    batch.graph_ids.insert(batch.graph_ids.end(), n, gi);
    offset += n;
  }
  batch.graph = prepare_graph(EdgeIndexGraph::from_undirected(total, edges));
  return batch;
}

}  // namespace gig::nn
