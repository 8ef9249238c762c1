#include "mban/undirected.hh"

#include <sstream>
#include <stdexcept>

#include "mban/graph_io.hh"

namespace mban {

std::vector<std::vector<int>> UGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<int> UGraph::degrees() const {
  std::vector<int> d(vertex_count, 0);
  for (auto [u, v] : edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

bool UGraph::connected() const {
  if (vertex_count <= 1) return true;
  auto adj = adjacency();
  std::vector<bool> seen(vertex_count, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == vertex_count;
}

void check_ugraph(const UGraph& g) {
  if (g.vertex_count < 0) throw std::invalid_argument("negative vertex count");
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    auto [u, v] = g.edges[k];
    if (u < 0 || v >= g.vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u >= v) throw std::invalid_argument("edges must satisfy u < v");
    if (k > 0 && !(g.edges[k - 1] < g.edges[k]))
      throw std::invalid_argument("edges must be ascending and distinct");
  }
}

UGraph parse_ugraph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int n = -1;
  UGraph g;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    std::istringstream ls(s);
    if (n < 0) {
      std::string kw;
      if (!(ls >> kw)) continue;  // blank
      if (kw != "ugraph") throw ParseError(lineno, "expected header 'ugraph <n>'");
      if (!(ls >> n) || n < 0) throw ParseError(lineno, "bad vertex count");
      g = UGraph(n);
      continue;
    }
    int u, v;
    if (!(ls >> u)) continue;  // blank
    if (!(ls >> v)) throw ParseError(lineno, "expected 'u v' edge line");
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "trailing tokens on edge line");
    if (u < 0 || v >= n || u >= v)
      throw ParseError(lineno, "edge must satisfy 0 <= u < v < n");
    if (!g.edges.empty() && !(g.edges.back() < std::make_pair(u, v)))
      throw ParseError(lineno, "edges must be ascending and distinct");
    g.edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError(0, "missing 'ugraph <n>' header");
  return g;
}

std::string serialize_ugraph(const UGraph& g) {
  std::ostringstream out;
  out << "ugraph " << g.vertex_count << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

}  // namespace mban
