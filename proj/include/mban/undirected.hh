#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mban {

// Simple undirected graph, the source side of the clique and vertex-cover
// reductions. Loop-free; edges stored as ascending (u, v) pairs with u < v.
struct UGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  UGraph() = default;
  explicit UGraph(int n) : vertex_count(n) {}

  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;
  bool connected() const;
};

void check_ugraph(const UGraph& g);  // throws std::invalid_argument

// Text format: header `ugraph <n>`, then one `u v` line per edge with u < v,
// lines in ascending order; blank lines and `#` comments ignored.
UGraph parse_ugraph(const std::string& text);
std::string serialize_ugraph(const UGraph& g);

}  // namespace mban
