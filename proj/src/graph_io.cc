#include "mban/graph_io.hh"

#include <sstream>

namespace mban {

namespace {

// Strip comment and surrounding whitespace; empty result means skip.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

DiGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int n = -1;
  DiGraph g;
  int next_vertex = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = clean_line(raw);
    if (s.empty()) continue;
    std::istringstream ls(s);
    if (n < 0) {
      std::string kw;
      ls >> kw;
      if (kw != "mban") throw ParseError(lineno, "expected header 'mban <n>'");
      if (!(ls >> n) || n < 0) throw ParseError(lineno, "bad vertex count");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens after header");
      g = DiGraph(n);
      continue;
    }
    int v;
    char colon;
    if (!(ls >> v >> colon) || colon != ':')
      throw ParseError(lineno, "expected '<v>: <in-neighbors>'");
    if (v != next_vertex)
      throw ParseError(lineno, "vertices must appear in order 0.." + std::to_string(n - 1));
    if (v >= n) throw ParseError(lineno, "vertex id out of range");
    int u;
    while (ls >> u) {
      if (u < 0 || u >= n) throw ParseError(lineno, "in-neighbor id out of range");
      auto& ins = g.in_neighbors[v];
      if (!ins.empty() && u <= ins.back())
        throw ParseError(lineno, "in-neighbors must be strictly ascending");
      ins.push_back(u);
    }
    if (!ls.eof()) throw ParseError(lineno, "bad token in in-neighbor list");
    ++next_vertex;
  }
  if (n < 0) throw ParseError(0, "missing 'mban <n>' header");
  if (next_vertex != n)
    throw ParseError(0, "expected " + std::to_string(n) + " vertex lines, got " +
                            std::to_string(next_vertex));
  return g;
}

std::string serialize_graph(const DiGraph& g) {
  std::ostringstream out;
  out << "mban " << g.vertex_count << "\n";
  for (int v = 0; v < g.vertex_count; ++v) {
    out << v << ":";
    for (int u : g.in_neighbors[v]) out << " " << u;
    out << "\n";
  }
  return out.str();
}

}  // namespace mban
