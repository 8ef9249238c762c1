#pragma once

#include <string>
#include <vector>

namespace mban {

// Directed graph with loops; per-vertex in-neighbor lists, strictly
// ascending (no parallel arcs).
struct DiGraph {
  int vertex_count = 0;
  std::vector<std::vector<int>> in_neighbors;

  DiGraph() = default;
  explicit DiGraph(int n) : vertex_count(n), in_neighbors(n) {}

  int in_degree(int v) const { return static_cast<int>(in_neighbors[v].size()); }
};

// Checks invariants of the DiGraph struct itself (ids in range, ascending
// lists). Throws std::invalid_argument on violation.
void check_digraph(const DiGraph& g);

struct ValidationReport {
  bool indegrees_all_odd = false;
  bool indegrees_all_positive = false;
  bool strongly_connected = false;
  bool vertex_count_odd = false;
  std::vector<int> offending_vertices;  // vertices with even or zero in-degree
};

// Advisory validity report; a graph failing oddness is rejected by the
// dynamics operations, not here.
ValidationReport validate_mban(const DiGraph& g);

// Tarjan component decomposition. Empty graphs count as strongly connected.
bool strongly_connected(const DiGraph& g);

// Out-neighbor lists derived from the in-neighbor representation.
std::vector<std::vector<int>> out_neighbors(const DiGraph& g);

}  // namespace mban
