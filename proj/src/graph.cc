#include "mban/graph.hh"

#include <algorithm>
#include <stdexcept>

namespace mban {

void check_digraph(const DiGraph& g) {
  if (g.vertex_count < 0) throw std::invalid_argument("negative vertex count");
  if (static_cast<int>(g.in_neighbors.size()) != g.vertex_count)
    throw std::invalid_argument("in-neighbor table size mismatch");
  for (int v = 0; v < g.vertex_count; ++v) {
    const auto& ins = g.in_neighbors[v];
    for (std::size_t k = 0; k < ins.size(); ++k) {
      if (ins[k] < 0 || ins[k] >= g.vertex_count)
        throw std::invalid_argument("in-neighbor id out of range at vertex " +
                                    std::to_string(v));
      if (k > 0 && ins[k] <= ins[k - 1])
        throw std::invalid_argument("in-neighbor list not strictly ascending at vertex " +
                                    std::to_string(v));
    }
  }
}

ValidationReport validate_mban(const DiGraph& g) {
  ValidationReport r;
  r.indegrees_all_odd = true;
  r.indegrees_all_positive = true;
  for (int v = 0; v < g.vertex_count; ++v) {
    int d = g.in_degree(v);
    if (d == 0) {
      r.indegrees_all_positive = false;
      r.offending_vertices.push_back(v);
    } else if (d % 2 == 0) {
      r.indegrees_all_odd = false;
      r.offending_vertices.push_back(v);
    }
  }
  if (!r.indegrees_all_positive) r.indegrees_all_odd = false;
  r.strongly_connected = strongly_connected(g);
  r.vertex_count_odd = (g.vertex_count % 2 == 1);
  return r;
}

bool strongly_connected(const DiGraph& g) {
  int n = g.vertex_count;
  if (n <= 1) return true;
  auto outs = out_neighbors(g);

  // Iterative Tarjan; we only need to know whether the first root's
  // component swallows every vertex.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  int component_count = 0;

  struct Frame {
    int v;
    std::size_t child;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      int v = f.v;
      if (f.child == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.child < outs[v].size()) {
        int u = outs[v][f.child++];
        if (index[u] == -1) {
          call.push_back({u, 0});
          descended = true;
          break;
        }
        if (on_stack[u]) low[v] = std::min(low[v], index[u]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        ++component_count;
        if (component_count > 1) return false;
        int u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
        } while (u != v);
      }
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return component_count == 1;
}

std::vector<std::vector<int>> out_neighbors(const DiGraph& g) {
  std::vector<std::vector<int>> outs(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v)
    for (int u : g.in_neighbors[v]) outs[u].push_back(v);
  return outs;
}

}  // namespace mban
