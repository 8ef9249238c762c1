#include "mban/reduce.hh"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mban/dynamics.hh"
#include "mban/graph_io.hh"

namespace mban {

namespace {

void sort_in_neighbors(DiGraph& g) {
  for (auto& ins : g.in_neighbors) {
    std::sort(ins.begin(), ins.end());
    if (std::adjacent_find(ins.begin(), ins.end()) != ins.end())
      throw std::invalid_argument("construction produced a parallel arc");
  }
}

std::string histogram_string(const DiGraph& g) {
  std::map<int, int> h;
  for (int v = 0; v < g.vertex_count; ++v) ++h[g.in_degree(v)];
  std::ostringstream out;
  bool first = true;
  for (auto [deg, count] : h) {
    if (!first) out << ",";
    out << deg << ":" << count;
    first = false;
  }
  return out.str();
}

std::string gate_display_name(const Circuit& c, int k) {
  return c.gates[k].name.empty() ? "g" + std::to_string(k) : c.gates[k].name;
}

// Input-index support mask of every gate and output (inputs as bit positions).
std::vector<std::uint64_t> support_masks(const Circuit& c) {
  if (c.input_count > 64)
    throw std::invalid_argument("dependency check limited to 64 inputs");
  std::vector<std::uint64_t> sup(c.gates.size(), 0);
  auto of = [&](const Ref& r) {
    return r.is_input ? (std::uint64_t(1) << r.index) : sup[r.index];
  };
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const Gate& g = c.gates[k];
    sup[k] = of(g.a);
    if (g.op == Op::And || g.op == Op::Or) sup[k] |= of(g.b);
  }
  return sup;
}

bool expected_positive_verdict(const Circuit& c, const Config& x, int i,
                               const Budget& budget) {
  Orbit o = circuit_orbit(c, x, budget, false);
  Config y = x;
  for (std::uint64_t t = 1; t <= o.transient_length + o.period; ++t) {
    y = eval(c, y);
    if (y.get(i)) return true;
  }
  return false;
}

}  // namespace

void ReductionOutput::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata)
    if (k == key) {
      v = value;
      return;
    }
  metadata.emplace_back(key, value);
}

std::optional<std::string> ReductionOutput::get_meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return std::nullopt;
}

std::string serialize_reduction(const ReductionOutput& r) {
  std::ostringstream out;
  out << serialize_graph(r.graph);
  out << "labels\n";
  for (int v = 0; v < r.graph.vertex_count; ++v)
    out << v << ": " << (v < static_cast<int>(r.labels.size()) ? r.labels[v] : "")
        << "\n";
  if (r.seed_config) out << "seed " << r.seed_config->to_string() << "\n";
  for (const auto& [k, v] : r.metadata) out << "meta " << k << " " << v << "\n";
  return out.str();
}

ReductionOutput parse_reduction(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::ostringstream graph_text;
  std::vector<std::string> rest;
  bool in_graph = true;
  while (std::getline(in, line)) {
    if (in_graph) {
      std::istringstream probe(line);
      std::string kw;
      probe >> kw;
      if (kw == "labels") {
        in_graph = false;
        continue;
      }
      graph_text << line << "\n";
    } else {
      rest.push_back(line);
    }
  }
  if (in_graph) throw ParseError(0, "missing 'labels' section");
  ReductionOutput r;
  r.graph = parse_graph(graph_text.str());
  r.labels.assign(r.graph.vertex_count, "");
  for (std::size_t k = 0; k < rest.size(); ++k) {
    std::istringstream ls(rest[k]);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "seed") {
      std::string bits;
      if (!(ls >> bits)) throw ParseError(0, "seed line needs a configuration");
      r.seed_config = Config::from_string(bits);
      continue;
    }
    if (first == "meta") {
      std::string key, value;
      if (!(ls >> key)) throw ParseError(0, "meta line needs a key");
      std::getline(ls, value);
      auto b = value.find_first_not_of(" \t");
      r.metadata.emplace_back(key, b == std::string::npos ? "" : value.substr(b));
      continue;
    }
    if (first.empty() || first.back() != ':')
      throw ParseError(0, "expected '<vertex>: <tag>' label line");
    int v = std::stoi(first.substr(0, first.size() - 1));
    if (v < 0 || v >= r.graph.vertex_count) throw ParseError(0, "label vertex out of range");
    std::string tag;
    ls >> tag;
    r.labels[v] = tag;
  }
  return r;
}

std::vector<int> gate_gadget(Op kind, int in1, int in2, int const_vertex) {
  if (kind != Op::And && kind != Op::Or)
    throw std::invalid_argument("gadget exists for AND and OR only");
  std::vector<int> ins = {in1, in2, const_vertex};
  std::sort(ins.begin(), ins.end());
  if (ins[0] == ins[1] || ins[1] == ins[2])
    throw std::invalid_argument("gadget in-neighbors must be distinct");
  return ins;
}

ReductionOutput reduce_dctp_one(const LayeredCircuit& lc, const Config& x, int i) {
  const Circuit& c = lc.circuit;
  if (!is_monotone_ops(c))
    throw std::invalid_argument("instance circuit must be monotone (no NOT gates)");
  check_layered(lc);
  if (!c.is_self_map()) throw std::invalid_argument("instance circuit must be a self-map");
  if (x.n != c.input_count) throw std::invalid_argument("input length mismatch");
  if (i < 0 || i >= c.input_count)
    throw std::invalid_argument("distinguished output index out of range");
  if (has_dead_gates(c)) throw std::invalid_argument("instance circuit has dead gates");

  int n_in = c.input_count;
  int s = static_cast<int>(c.gates.size());
  int vc = n_in + s;  // |V_C|

  // Dependency condition: iterating output i's input support must cover all
  // inputs within |V_C| rounds.
  auto sup = support_masks(c);
  auto out_sup = [&](int j) {
    const Ref& r = c.outputs[j];
    return r.is_input ? (std::uint64_t(1) << r.index) : sup[r.index];
  };
  std::uint64_t all = (n_in >= 64) ? ~std::uint64_t(0)
                                   : (std::uint64_t(1) << n_in) - 1;
  std::uint64_t reach = out_sup(i);
  bool covered = reach == all;
  for (int round = 1; round <= vc && !covered; ++round) {
    std::uint64_t next = 0;
    for (int j = 0; j < n_in; ++j)
      if ((reach >> j) & 1) next |= out_sup(j);
    if (next == reach) break;
    reach = next;
    covered = reach == all;
  }
  if (!covered)
    throw std::invalid_argument(
        "distinguished output does not iteratively depend on every input");

  int b0 = vc, b1 = vc + 1;
  int p_first = vc + 2;
  int p_count = vc + 1;
  int total = 2 * vc + 3;
  DiGraph g(total);
  auto vertex_of = [&](const Ref& r) { return r.is_input ? r.index : n_in + r.index; };
  auto out_vertex = [&](int j) { return vertex_of(c.outputs[j]); };

  for (int j = 0; j < n_in; ++j) g.in_neighbors[j] = {out_vertex(j), b0, b1};
  for (int k = 0; k < s; ++k) {
    const Gate& gate = c.gates[k];
    int va = vertex_of(gate.a);
    if (gate.op == Op::Buf) {
      g.in_neighbors[n_in + k] = {va, b0, b1};
    } else {
      int vb = vertex_of(gate.b);
      if (va == vb)
        g.in_neighbors[n_in + k] = {va, b0, b1};
      else
        g.in_neighbors[n_in + k] =
            gate_gadget(gate.op, va, vb, gate.op == Op::And ? b0 : b1);
    }
  }
  g.in_neighbors[b0] = {b0, out_vertex(i), b1};
  g.in_neighbors[b1] = {b0, b1, p_first};

  if (vc % 2 == 0) {
    // Loopy clique on P; the first P vertex trades its loop for b1.
    for (int q = 0; q < p_count; ++q)
      for (int r = 0; r < p_count; ++r)
        if (q != 0 || r != 0) g.in_neighbors[p_first + q].push_back(p_first + r);
    g.in_neighbors[p_first].push_back(b1);
  } else {
    // Odd |V_C|: loopless clique keeps every P in-degree odd; the first P
    // vertex drops the highest P id to make room for b1.
    for (int q = 0; q < p_count; ++q)
      for (int r = 0; r < p_count; ++r)
        if (q != r && !(q == 0 && r == p_count - 1))
          g.in_neighbors[p_first + q].push_back(p_first + r);
    g.in_neighbors[p_first].push_back(b1);
  }
  sort_in_neighbors(g);
  check_digraph(g);

  ReductionOutput r;
  r.graph = g;
  r.labels.assign(total, "");
  for (int j = 0; j < n_in; ++j) r.labels[j] = "i" + std::to_string(j);
  for (int k = 0; k < s; ++k) r.labels[n_in + k] = gate_display_name(c, k);
  r.labels[b0] = "b0";
  r.labels[b1] = "b1";
  for (int q = 0; q < p_count; ++q) r.labels[p_first + q] = "P";

  Config seed(total);
  for (int j = 0; j < n_in; ++j) seed.set(j, x.get(j));
  seed.set(b1, true);
  for (int q = 0; q < p_count; ++q) seed.set(p_first + q, true);
  r.seed_config = seed;

  r.set_meta("n", std::to_string(total));
  r.set_meta("b0", std::to_string(b0));
  r.set_meta("b1", std::to_string(b1));
  r.set_meta("p", std::to_string(p_first));
  r.set_meta("i", std::to_string(i));
  r.set_meta("degree_histogram", histogram_string(g));
  r.set_meta("expected_positive", expected_positive_verdict(c, x, i, {}) ? "true" : "false");
  return r;
}

ReductionOutput reduce_clique_to_ss(const UGraph& g) {
  check_ugraph(g);
  int m = g.vertex_count;
  if (m < 4 || m % 2 != 0)
    throw std::invalid_argument("source graph order must be even (and at least 4)");
  auto deg = g.degrees();
  for (int v = 0; v < m; ++v)
    if (deg[v] > m - 3)
      throw std::invalid_argument("source degrees must not exceed |V|-3");

  int x0 = m;           // distinguished x, first X vertex
  int y0 = 3 * m;       // first Y vertex
  int total = 5 * m + 1;
  DiGraph out(total);
  auto adj = g.adjacency();

  // Graph vertices: neighbors, the m lowest X ids, and enough lowest Y ids.
  for (int v = 0; v < m; ++v) {
    auto& ins = out.in_neighbors[v];
    ins = adj[v];
    for (int k = 0; k < m; ++k) ins.push_back(x0 + k);
    for (int k = 0; k < 2 * m - 3 - deg[v]; ++k) ins.push_back(y0 + k);
  }
  // X vertices: the whole X block with loops plus the 2m-1 lowest Y ids; the
  // distinguished x additionally reads every graph vertex.
  for (int k = 0; k < 2 * m; ++k) {
    auto& ins = out.in_neighbors[x0 + k];
    for (int j = 0; j < 2 * m; ++j) ins.push_back(x0 + j);
    for (int j = 0; j < 2 * m - 1; ++j) ins.push_back(y0 + j);
  }
  for (int v = 0; v < m; ++v) out.in_neighbors[x0].push_back(v);
  // Y vertices: everything, loops included.
  for (int k = 0; k < 2 * m + 1; ++k) {
    auto& ins = out.in_neighbors[y0 + k];
    for (int v = 0; v < total; ++v) ins.push_back(v);
  }
  sort_in_neighbors(out);
  check_digraph(out);

  ReductionOutput r;
  r.graph = out;
  r.labels.assign(total, "");
  for (int v = 0; v < m; ++v) r.labels[v] = "v" + std::to_string(v);
  r.labels[x0] = "x";
  for (int k = 1; k < 2 * m; ++k) r.labels[x0 + k] = "X";
  for (int k = 0; k < 2 * m + 1; ++k) r.labels[y0 + k] = "Y";
  r.set_meta("n", std::to_string(total));
  r.set_meta("x", std::to_string(x0));
  r.set_meta("half_clique", std::to_string(m / 2));
  r.set_meta("degree_histogram", histogram_string(out));
  return r;
}

ReductionOutput reduce_vc_to_leader(const UGraph& g) {
  check_ugraph(g);
  int n = g.vertex_count;
  if (n < 4 || n % 4 != 0)
    throw std::invalid_argument("source order must be a positive multiple of 4");
  if (!g.connected()) throw std::invalid_argument("source graph must be connected");
  auto deg = g.degrees();
  for (int v = 0; v < n; ++v)
    if (deg[v] < 1) throw std::invalid_argument("source graph must have no isolated vertex");
  int e = static_cast<int>(g.edges.size());

  int y0 = n;
  int y_size = 2 * e - n;  // sum of (deg - 1)
  int x0 = y0 + y_size;
  int x_size = 2 * e - n;
  int z0 = x0 + x_size;            // pairs (l_k, r_k) for k < 3n/4
  int z_size = 3 * n / 2;
  int zp0 = z0 + z_size;           // pairs for k >= 3n/4, then t
  int zp_size = n / 2 + 1;
  int total = n + 4 * e + 1;
  int t_vertex = total - 1;

  // l_k and r_k live in Z for k < 3n/4 and in Z' afterwards.
  auto l_of = [&](int k) { return z0 + 2 * k; };
  auto r_of = [&](int k) { return z0 + 2 * k + 1; };

  DiGraph out(total);
  auto adj = g.adjacency();
  // Graph vertices: neighbors plus their own Y block of deg-1 vertices.
  int y_next = y0;
  for (int v = 0; v < n; ++v) {
    auto& ins = out.in_neighbors[v];
    ins = adj[v];
    for (int k = 0; k < deg[v] - 1; ++k) ins.push_back(y_next++);
  }
  // Y and Z: complete in-neighborhood, loops included.
  for (int v = y0; v < x0; ++v)
    for (int u = 0; u < total; ++u) out.in_neighbors[v].push_back(u);
  for (int v = z0; v < zp0; ++v)
    for (int u = 0; u < total; ++u) out.in_neighbors[v].push_back(u);
  // X: a cycle over the first min(n,|X|) vertices with side inputs l_k, r_k,
  // any remainder chained off it.
  int cyc = std::min(n, x_size);
  for (int k = 0; k < cyc; ++k)
    out.in_neighbors[x0 + k] = {x0 + (k - 1 + cyc) % cyc, l_of(k), r_of(k)};
  for (int k = std::max(cyc, 1); k < x_size; ++k)
    out.in_neighbors[x0 + k] = {x0 + k - 1};
  // Z' (t included): all of X.
  for (int v = zp0; v < total; ++v)
    for (int k = 0; k < x_size; ++k) out.in_neighbors[v].push_back(x0 + k);
  sort_in_neighbors(out);
  check_digraph(out);

  ReductionOutput r;
  r.graph = out;
  r.labels.assign(total, "");
  for (int v = 0; v < n; ++v) r.labels[v] = "v" + std::to_string(v);
  for (int v = y0; v < x0; ++v) r.labels[v] = "Y";
  for (int v = x0; v < z0; ++v) r.labels[v] = "X";
  for (int v = z0; v < zp0; ++v) r.labels[v] = "Z";
  for (int v = zp0; v < t_vertex; ++v) r.labels[v] = "Z'";
  r.labels[t_vertex] = "t";
  r.set_meta("n", std::to_string(total));
  r.set_meta("t", std::to_string(t_vertex));
  r.set_meta("x_size", std::to_string(x_size));
  r.set_meta("y_size", std::to_string(y_size));
  r.set_meta("z_size", std::to_string(z_size));
  r.set_meta("zp_size", std::to_string(zp_size));
  r.set_meta("cover_bound", std::to_string(n / 2));
  r.set_meta("degree_histogram", histogram_string(out));
  return r;
}

ReductionOutput circuit_to_mban(const LayeredCircuit& lc) {
  const Circuit& c = lc.circuit;
  check_circuit(c);
  if (!is_monotone_ops(c))
    throw std::invalid_argument("compiled circuit must be monotone (no NOT gates)");
  if (!c.is_self_map()) throw std::invalid_argument("compiled circuit must be a self-map");
  if (has_dead_gates(c)) throw std::invalid_argument("compiled circuit has dead gates");
  int s = static_cast<int>(c.gates.size());
  if (s < 2) throw std::invalid_argument("compiled circuit needs at least two gates");

  std::set<int> out_gates;
  for (const Ref& r : c.outputs) {
    if (r.is_input)
      throw std::invalid_argument("outputs must be gates, not raw inputs");
    if (!out_gates.insert(r.index).second)
      throw std::invalid_argument("outputs must be pairwise distinct gates");
  }
  auto vertex_of = [&](const Ref& r) {
    return r.is_input ? c.outputs[r.index].index : r.index;
  };

  bool have_or = false, have_and = false;
  for (const Gate& g : c.gates)
    if ((g.op == Op::And || g.op == Op::Or) && !(g.b == g.a)) {
      (g.op == Op::Or ? have_or : have_and) = true;
    }
  if (!have_or || !have_and)
    throw std::invalid_argument(
        "compiled circuit needs a two-operand OR and a two-operand AND");

  int total = s + 10;
  DiGraph g(total);
  for (int k = 0; k < s; ++k) {
    const Gate& gate = c.gates[k];
    int va = vertex_of(gate.a);
    if (gate.op == Op::Buf || gate.b == gate.a) {
      g.in_neighbors[k] = {va};
      continue;
    }
    int vb = vertex_of(gate.b);
    if (va == vb)
      throw std::invalid_argument(
          "distinct operands collide on one vertex after output feedback");
    g.in_neighbors[k] = gate_gadget(gate.op, va, vb, gate.op == Op::Or ? s : s + 5);
  }
  for (int b = 0; b < 2; ++b) {
    int base = s + 5 * b;
    for (int q = 0; q < 5; ++q)
      for (int r = 0; r < 5; ++r) g.in_neighbors[base + q].push_back(base + r);
    g.in_neighbors[base + 4].push_back(0);
    g.in_neighbors[base + 4].push_back(1);
  }
  sort_in_neighbors(g);
  check_digraph(g);

  ReductionOutput r;
  r.graph = g;
  r.labels.assign(total, "");
  for (int k = 0; k < s; ++k) {
    std::string role = lc.role.empty() ? "" : lc.role[k];
    std::string name = gate_display_name(c, k);
    r.labels[k] = role.empty() ? name : role + ":" + name;
  }
  for (int q = 0; q < 5; ++q) r.labels[s + q] = "T";
  for (int q = 0; q < 5; ++q) r.labels[s + 5 + q] = "F";
  r.set_meta("n", std::to_string(total));
  r.set_meta("s", std::to_string(s));
  r.set_meta("f_start", std::to_string(s + 5));
  r.set_meta("depth", std::to_string(lc.depth));
  r.set_meta("degree_histogram", histogram_string(g));
  return r;
}

Config embed_circuit_config(const ReductionOutput& r, const LayeredCircuit& lc,
                            const Config& x) {
  const Circuit& c = lc.circuit;
  int s = static_cast<int>(c.gates.size());
  if (r.graph.vertex_count != s + 10)
    throw std::invalid_argument("reduction output does not match the circuit");
  EvalTrace trace = eval_trace(c, x);
  Config conf(s + 10);
  for (int k = 0; k < s; ++k) {
    bool value = trace.gate_values[k] != 0;
    if (!lc.role.empty()) {
      const std::string& role = lc.role[k];
      if (role == "Test1" || role == "Test2")
        value = false;
      else if (role == "Test3")
        value = true;
    }
    conf.set(k, value);
  }
  for (int q = 0; q < 5; ++q) conf.set(s + q, true);
  return conf;
}

FullReduction full_reduction(const Circuit& c, const Config& x, int i,
                             const Budget& budget) {
  if (!c.is_self_map())
    throw std::invalid_argument("pipeline needs a self-map circuit");
  FullReduction fr;
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(name) + ": " + e.what());
    }
  };
  fr.normalized = stage("normalize", [&] { return normalize(c); });
  fr.wrapped = stage("wrap_counter", [&] { return wrap_counter(fr.normalized, x, i); });
  fr.mono = stage("monotonize", [&] { return monotonize(fr.wrapped, budget); });
  fr.out = stage("compile", [&] { return circuit_to_mban(fr.mono.lc); });

  int n = c.input_count;
  // Seed: the wrapped circuit's state (y = C(x), counter = 1) on paired rails.
  Config lseed(2 * n);
  Config cx = eval(fr.normalized, x);
  for (int j = 0; j < n; ++j) lseed.set(j, cx.get(j));
  lseed.set(2 * n - 1, true);
  Config mseed = rails_encode(lseed);
  fr.out.seed_config = embed_circuit_config(fr.out, fr.mono.lc, mseed);

  fr.out.set_meta("inputs", std::to_string(n));
  fr.out.set_meta("wrapped_inputs", std::to_string(fr.wrapped.input_count));
  fr.out.set_meta("wrapped_gates", std::to_string(fr.wrapped.gates.size()));
  fr.out.set_meta("mono_inputs", std::to_string(fr.mono.lc.circuit.input_count));
  fr.out.set_meta("mono_gates", std::to_string(fr.mono.lc.circuit.gates.size()));
  fr.out.set_meta("rail_depth", std::to_string(fr.mono.rail_depth));
  fr.out.set_meta("test_root_depth", std::to_string(fr.mono.test_root_depth));
  if (n <= 62) {
    std::uint64_t counter_cycle = std::uint64_t(1) << n;
    fr.out.set_meta("counter_cycle", std::to_string(counter_cycle));
    fr.out.set_meta("negative_period",
                    std::to_string(counter_cycle * fr.mono.lc.depth));
  }
  fr.out.set_meta("expected_positive",
                  expected_positive_verdict(fr.normalized, x, i, budget) ? "true" : "false");
  return fr;
}

}  // namespace mban
