#include "mban/verify.hh"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mban/circuit.hh"
#include "mban/dct.hh"
#include "mban/dynamics.hh"
#include "mban/graph_io.hh"
#include "mban/patterns.hh"
#include "mban/reduce.hh"
#include "mban/undirected.hh"

namespace mban {

namespace {

// Explicit modulo keeps the draw sequence identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

// All odd-cardinality in-neighbor subsets of {0..n-1}, by ascending mask.
std::vector<std::vector<int>> odd_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t m = 1; m < (std::uint64_t(1) << n); ++m) {
    if (std::popcount(m) % 2 == 0) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

// Every valid network on n vertices: one odd in-neighbor subset per vertex.
template <class F>
std::uint64_t for_each_mban(int n, F&& f) {
  auto pool = odd_subsets(n);
  std::vector<int> pick(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    DiGraph g(n);
    for (int v = 0; v < n; ++v) g.in_neighbors[v] = pool[pick[v]];
    f(g);
    ++count;
    int k = n - 1;
    while (k >= 0 && pick[k] == static_cast<int>(pool.size()) - 1) pick[k--] = 0;
    if (k < 0) break;
    ++pick[k];
  }
  return count;
}

DiGraph random_mban(int n, std::mt19937_64& rng) {
  DiGraph g(n);
  std::vector<int> ids(n);
  for (int v = 0; v < n; ++v) {
    int deg = 1 + 2 * static_cast<int>(draw(rng, (n + 1) / 2));
    std::iota(ids.begin(), ids.end(), 0);
    for (int k = 0; k < deg; ++k)
      std::swap(ids[k], ids[k + draw(rng, n - k)]);
    g.in_neighbors[v].assign(ids.begin(), ids.begin() + deg);
    std::sort(g.in_neighbors[v].begin(), g.in_neighbors[v].end());
  }
  return g;
}

Ref random_ref(std::mt19937_64& rng, int inputs, int gates_so_far) {
  int pick = static_cast<int>(draw(rng, inputs + gates_so_far));
  return pick < inputs ? input_ref(pick) : gate_ref(pick - inputs);
}

Circuit random_circuit(std::mt19937_64& rng, int inputs, int max_gates,
                       int outputs) {
  Circuit c;
  c.input_count = inputs;
  int gates = 1 + static_cast<int>(draw(rng, max_gates));
  for (int k = 0; k < gates; ++k) {
    Gate g;
    switch (draw(rng, 4)) {
      case 0: g.op = Op::And; break;
      case 1: g.op = Op::Or; break;
      case 2: g.op = Op::Not; break;
      default: g.op = Op::Buf; break;
    }
    g.a = random_ref(rng, inputs, k);
    if (g.op == Op::And || g.op == Op::Or) g.b = random_ref(rng, inputs, k);
    c.gates.push_back(g);
  }
  for (int j = 0; j < outputs; ++j)
    c.outputs.push_back(random_ref(rng, inputs, gates));
  return c;
}

// Successor table of a self-map circuit over its full state space.
std::vector<std::uint32_t> circuit_table(const Circuit& c) {
  int n = c.input_count;
  std::vector<std::uint32_t> succ(std::uint64_t(1) << n);
  for (std::uint64_t v = 0; v < succ.size(); ++v)
    succ[v] = static_cast<std::uint32_t>(eval(c, Config(n, v)).value());
  return succ;
}

// Periods of the distinct terminal cycles of a functional graph.
std::multiset<std::uint64_t> cycle_periods(const std::vector<std::uint32_t>& succ,
                                           std::uint64_t min_period) {
  std::multiset<std::uint64_t> out;
  std::vector<std::int64_t> walk(succ.size(), -1);
  std::vector<std::uint64_t> pos(succ.size(), 0);
  for (std::uint64_t start = 0; start < succ.size(); ++start) {
    if (walk[start] != -1) continue;
    std::uint64_t v = start, p = 0;
    while (walk[v] == -1) {
      walk[v] = static_cast<std::int64_t>(start);
      pos[v] = p++;
      v = succ[v];
    }
    if (walk[v] == static_cast<std::int64_t>(start)) {
      std::uint64_t period = p - pos[v];
      if (period >= min_period) out.insert(period);
    }
  }
  return out;
}

// f^(2^rounds) by repeated squaring; lands every start on its terminal cycle.
std::vector<std::uint32_t> power_table(std::vector<std::uint32_t> t, int rounds) {
  for (int r = 0; r < rounds; ++r) {
    std::vector<std::uint32_t> u(t.size());
    for (std::uint64_t v = 0; v < t.size(); ++v) u[v] = t[t[v]];
    t = std::move(u);
  }
  return t;
}

VertexSubset subset_of_mask(std::uint64_t m, int n) {
  VertexSubset s;
  for (int i = 0; i < n; ++i)
    if ((m >> i) & 1) s.push_back(i);
  return s;
}

std::uint64_t mask_of_subset(const VertexSubset& s) {
  std::uint64_t m = 0;
  for (int id : s) m |= std::uint64_t(1) << id;
  return m;
}

CheckResult pass(const std::string& name, const std::string& detail) {
  return {name, true, detail};
}

CheckResult fail(const std::string& name, const std::string& detail) {
  return {name, false, detail};
}

}  // namespace

CheckResult verify_characterization_oracle(uint64_t seed, int random_trials,
                                           const Budget& budget) {
  const std::string name = "characterization-oracle";
  std::uint64_t graphs = 0;
  std::string mismatch;
  auto check_one = [&](const DiGraph& g) {
    if (!mismatch.empty()) return;
    DctVerdict brute = check_dct_all(g, budget);
    CharacterizationVerdict pat = characterize(g, budget);
    ++graphs;
    if (brute.solves != pat.solves) {
      mismatch = "verdicts disagree on " + serialize_graph(g);
      return;
    }
    if (pat.witness && !verify_certificate(g, *pat.witness))
      mismatch = "witness fails recheck on " + serialize_graph(g);
  };

  std::uint64_t n3 = for_each_mban(3, check_one);
  if (n3 != 64) return fail(name, "expected 64 networks on 3 vertices");
  std::mt19937_64 rng(seed);
  for (int n : {5, 7})
    for (int t = 0; t < random_trials / 2 && mismatch.empty(); ++t)
      check_one(random_mban(n, rng));
  if (!mismatch.empty()) return fail(name, mismatch);
  return pass(name, std::to_string(graphs) + " networks, brute force and pattern search agree");
}

CheckResult verify_clique_consensus(const Budget& budget) {
  (void)budget;
  const std::string name = "clique-consensus";
  for (int n : {3, 5, 7}) {
    DiGraph g(n);
    for (int v = 0; v < n; ++v) {
      g.in_neighbors[v].resize(n);
      std::iota(g.in_neighbors[v].begin(), g.in_neighbors[v].end(), 0);
    }
    Stepper st(g);
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
      Config x(n, v);
      Config want = Config::uniform(n, majority(x));
      Config one = st.step(x);
      if (one != want)
        return fail(name, "one step from " + x.to_string() + " missed consensus");
      if (st.step(one) != one)
        return fail(name, "consensus state not fixed from " + x.to_string());
    }
  }
  return pass(name, "loops-added cliques on 3/5/7 vertices reach consensus in one step");
}

CheckResult verify_pattern_lemmas(uint64_t seed, const Budget& budget) {
  const std::string name = "pattern-lemmas";
  std::string problem;
  std::uint64_t graphs = 0;

  auto check_one = [&](const DiGraph& g) {
    if (!problem.empty()) return;
    ++graphs;
    int n = g.vertex_count;
    std::uint64_t states = std::uint64_t(1) << n;
    Stepper st(g);

    // (a) leader <=> some strict-minority state maps to a strict majority.
    bool flip = false;
    for (std::uint64_t v = 0; v < states && !flip; ++v)
      flip = 2 * std::popcount(v) < n &&
             2 * std::popcount(st.step_bits(v)) > n;
    auto leader = find_leader(g, budget);
    if (leader.has_value() != flip) {
      problem = "leader/majority-flip mismatch on " + serialize_graph(g);
      return;
    }
    if (leader && !verify_certificate(g, *leader)) {
      problem = "leader certificate fails recheck on " + serialize_graph(g);
      return;
    }

    // (b) proper maximal self-sufficient subset <=> non-trivial fixed point.
    bool fixed = false;
    for (std::uint64_t v = 1; v + 1 < states && !fixed; ++v)
      fixed = st.step_bits(v) == v;
    auto maximal = find_maximal_self_sufficient(g, budget);
    if (maximal.has_value() != fixed) {
      problem = "maximal-subset/fixed-point mismatch on " + serialize_graph(g);
      return;
    }
    if (maximal && !verify_certificate(g, *maximal)) {
      problem = "maximal certificate fails recheck on " + serialize_graph(g);
      return;
    }

    // (c) limit-cycle periods >= 2 (state orbits) match the cycle lengths of
    // subset iteration under the set-level majority image.
    std::vector<std::uint32_t> by_state(states), by_subset(states);
    for (std::uint64_t v = 0; v < states; ++v) {
      by_state[v] = static_cast<std::uint32_t>(st.step_bits(v));
      by_subset[v] = static_cast<std::uint32_t>(
          mask_of_subset(major(g, subset_of_mask(v, n))));
    }
    auto p_state = cycle_periods(by_state, 2);
    auto p_subset = cycle_periods(by_subset, 2);
    std::set<std::uint64_t> s_state(p_state.begin(), p_state.end());
    std::set<std::uint64_t> s_subset(p_subset.begin(), p_subset.end());
    if (s_state != s_subset) {
      problem = "period sets differ between views on " + serialize_graph(g);
      return;
    }
    auto cyc = find_ss_m_cycle(g, budget);
    if (cyc.has_value() != !s_state.empty()) {
      problem = "cycle finder disagrees with period set on " + serialize_graph(g);
      return;
    }
    if (cyc && !verify_certificate(g, *cyc))
      problem = "cycle certificate fails recheck on " + serialize_graph(g);
  };

  for (int n = 1; n <= 4 && problem.empty(); ++n) for_each_mban(n, check_one);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 1000 && problem.empty(); ++t) check_one(random_mban(5, rng));
  if (!problem.empty()) return fail(name, problem);
  return pass(name, std::to_string(graphs) +
                        " networks, all three pattern lemmas hold exhaustively");
}

CheckResult verify_dynamics_invariants(uint64_t seed, int random_trials,
                                       const Budget& budget) {
  (void)budget;
  const std::string name = "dynamics-invariants";
  std::string problem;
  std::uint64_t graphs = 0;

  auto check_one = [&](const DiGraph& g, bool exhaustive_pairs,
                       std::mt19937_64* rng) {
    if (!problem.empty()) return;
    ++graphs;
    int n = g.vertex_count;
    std::uint64_t mask = (n >= 64) ? ~std::uint64_t(0)
                                   : (std::uint64_t(1) << n) - 1;
    Stepper st(g);
    auto dual_ok = [&](std::uint64_t v) {
      return st.step_bits(~v & mask) == (~st.step_bits(v) & mask);
    };
    auto mono_ok = [&](std::uint64_t x, std::uint64_t y) {  // x subset of y
      std::uint64_t sx = st.step_bits(x), sy = st.step_bits(y);
      return (sx & sy) == sx;
    };
    if (exhaustive_pairs) {
      for (std::uint64_t y = 0; y <= mask && problem.empty(); ++y) {
        if (!dual_ok(y)) {
          problem = "self-duality fails on " + serialize_graph(g);
          return;
        }
        std::uint64_t x = y;
        for (;;) {
          if (!mono_ok(x, y)) {
            problem = "monotonicity fails on " + serialize_graph(g);
            return;
          }
          if (x == 0) break;
          x = (x - 1) & y;
        }
      }
    } else {
      std::uint64_t y = (*rng)() & mask;
      std::uint64_t x = (*rng)() & y;
      if (!dual_ok(y))
        problem = "self-duality fails on " + serialize_graph(g);
      else if (!mono_ok(x, y))
        problem = "monotonicity fails on " + serialize_graph(g);
    }
  };

  for (int n = 1; n <= 4 && problem.empty(); ++n)
    for_each_mban(n, [&](const DiGraph& g) { check_one(g, true, nullptr); });
  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_trials && problem.empty(); ++t) {
    int n = 5 + static_cast<int>(draw(rng, 16));  // 5..20
    DiGraph g = random_mban(n, rng);
    check_one(g, false, &rng);
  }
  if (!problem.empty()) return fail(name, problem);
  return pass(name, std::to_string(graphs) +
                        " networks, update is self-dual and monotone");
}

CheckResult verify_dual_lemma(uint64_t seed, int circuits, const Budget& budget) {
  (void)budget;
  const std::string name = "dual-circuit";
  std::mt19937_64 rng(seed);
  for (int t = 0; t < circuits; ++t) {
    int inputs = 1 + static_cast<int>(draw(rng, 10));
    int outputs = 1 + static_cast<int>(draw(rng, inputs));
    Circuit c = random_circuit(rng, inputs, 30, outputs);
    Circuit d = dual(c);
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << inputs); ++v) {
      Config x(inputs, v);
      if (eval(d, x.complement()) != eval(c, x).complement())
        return fail(name, "AND/OR swap is not complement-conjugate on trial " +
                              std::to_string(t));
    }
  }
  return pass(name, std::to_string(circuits) +
                        " random circuits, full truth tables");
}

CheckResult verify_monotonize(uint64_t seed, int circuits, const Budget& budget) {
  const std::string name = "rails-monotonize";
  std::mt19937_64 rng(seed);

  auto random_self_map = [&]() {
    int n = 1 + static_cast<int>(draw(rng, 4));
    return random_circuit(rng, n, 8, n);
  };

  // Rail transport and off-rail collapse, unconditioned circuits.
  for (int t = 0; t < circuits; ++t) {
    Circuit c = random_self_map();
    int n = c.input_count;
    Circuit m = monotonize(c, budget).lc.circuit;
    if (!is_monotone_ops(m))
      return fail(name, "doubled circuit still contains NOT gates");
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
      Config x(n, v);
      Config img = eval(m, rails_encode(x));
      Config want = x.all_one() ? Config::uniform(2 * n, true)
                                : rails_encode(eval(c, x));
      if (img != want)
        return fail(name, "rail state transported incorrectly on trial " +
                              std::to_string(t));
    }
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << (2 * n)); ++v) {
      Config z(2 * n, v);
      if (rails_coherent(z)) continue;
      Config img = eval(m, z);
      if (!img.all_zero() && !img.all_one())
        return fail(name, "off-rail state fails to collapse on trial " +
                              std::to_string(t));
      if (eval(m, img) != img)
        return fail(name, "collapsed state is not fixed on trial " +
                              std::to_string(t));
    }
  }

  // Period transport and the global-attractor equivalence need circuits that
  // fix the all-ones state (the doubling absorbs all-ones orbits otherwise);
  // the pipeline only ever doubles such circuits.
  for (int t = 0; t < circuits; ++t) {
    Circuit c;
    int guard = 0;
    for (;;) {
      c = random_self_map();
      Config ones = Config::uniform(c.input_count, true);
      if (eval(c, ones) == ones) break;
      if (++guard > 10000)
        return fail(name, "could not sample circuits fixing the all-ones state");
    }
    int n = c.input_count;
    auto tc = circuit_table(c);
    auto tm = circuit_table(monotonize(c, budget).lc.circuit);
    if (cycle_periods(tc, 2) != cycle_periods(tm, 2))
      return fail(name, "cycle periods >1 not preserved on trial " +
                            std::to_string(t));
    std::uint64_t ones_c = (std::uint64_t(1) << n) - 1;
    std::uint64_t ones_m = (std::uint64_t(1) << (2 * n)) - 1;
    auto pc = power_table(tc, n);
    auto pm = power_table(tm, 2 * n);
    bool attractor = true;
    for (std::uint64_t v = 0; v < pc.size(); ++v)
      attractor = attractor && pc[v] == ones_c;
    bool only_uniform = true;
    for (std::uint64_t v = 0; v < pm.size(); ++v)
      only_uniform = only_uniform && (pm[v] == 0 || pm[v] == ones_m);
    if (attractor != only_uniform)
      return fail(name, "global-attractor equivalence fails on trial " +
                            std::to_string(t));
  }
  return pass(name, std::to_string(circuits) +
                        " circuits per part, rails/collapse/periods/attractor");
}

CheckResult verify_wrap_counter(const Budget& budget) {
  const std::string name = "counter-wrap";

  auto rotation = [](int n) {
    Circuit c;
    c.input_count = n;
    for (int j = 0; j < n; ++j) {
      Gate g;
      g.op = Op::Buf;
      g.a = input_ref((j + 1) % n);
      c.gates.push_back(g);
      c.outputs.push_back(gate_ref(j));
    }
    return c;
  };

  for (int n : {2, 3}) {
    Circuit c = rotation(n);
    std::uint64_t states = std::uint64_t(1) << (2 * n);

    // Negative instance: nothing ever sets bit 0 from the all-zeros start,
    // so the canonical seed must sit on a bare counter cycle.
    Circuit neg = wrap_counter(c, Config(n), 0);
    Config seed(2 * n);
    seed.set(2 * n - 1, true);  // counter value 1, y = image of all-zeros
    Orbit o = circuit_orbit(neg, seed, budget);
    if (o.transient_length != 0 || o.period != (std::uint64_t(1) << n))
      return fail(name, "negative seed not on a full counter cycle at n = " +
                            std::to_string(n));

    // Positive instance: a rotation re-exposes the seeded one at bit 0, so
    // every state must drain into the all-ones fixed point.
    Config x(n);
    x.set(0, true);
    Circuit pos = wrap_counter(c, x, 0);
    Config ones = Config::uniform(2 * n, true);
    for (std::uint64_t v = 0; v < states; ++v) {
      Orbit ov = circuit_orbit(pos, Config(2 * n, v), budget);
      if (ov.period != 1 || ov.cycle.at(0) != ones)
        return fail(name, "positive instance state escapes the all-ones sink at n = " +
                              std::to_string(n));
    }
  }
  return pass(name, "counter wrappers checked exhaustively at 2 and 3 bits");
}

CheckResult verify_compiler(const Budget& budget) {
  const std::string name = "compiler";

  auto swap2 = [] {
    Circuit c;
    c.input_count = 2;
    c.gates.push_back(Gate{Op::Buf, input_ref(1), {}, "g0"});
    c.gates.push_back(Gate{Op::Buf, input_ref(0), {}, "g1"});
    c.outputs = {gate_ref(0), gate_ref(1)};
    return c;
  };

  // A two-state flip: compiled dynamics must tick one circuit step per depth
  // layers, so the embedded period is depth * 2.
  MonotonizeResult m = monotonize(swap2(), budget);
  ReductionOutput b = circuit_to_mban(m.lc);
  int d = m.lc.depth;
  for (std::uint64_t v : {std::uint64_t(1), std::uint64_t(2)}) {  // 10 and 01
    Config x(2, v);
    Config conf = embed_circuit_config(b, m.lc, rails_encode(x));
    Orbit o = orbit(b.graph, conf, budget);
    if (o.period != static_cast<std::uint64_t>(2 * d))
      return fail(name, "embedded flip period is " + std::to_string(o.period) +
                            ", want " + std::to_string(2 * d));
  }

  // A constant-ones circuit: every embedded start must reach a fixed point.
  Circuit ones_c;
  ones_c.input_count = 2;
  ones_c.gates.push_back(Gate{Op::Not, input_ref(0), {}, "n0"});
  ones_c.gates.push_back(Gate{Op::Or, input_ref(0), gate_ref(0), "one"});
  ones_c.outputs = {gate_ref(1), gate_ref(1)};
  MonotonizeResult mc = monotonize(ones_c, budget);
  ReductionOutput bc = circuit_to_mban(mc.lc);
  for (std::uint64_t v = 0; v < 16; ++v) {
    Config conf = embed_circuit_config(bc, mc.lc, Config(4, v));
    Orbit o = orbit(bc.graph, conf, budget);
    if (o.period != 1)
      return fail(name, "constant-circuit embedding does not reach a fixed point");
  }

  // Constant blocks settle to uniform fixed states within two steps from
  // arbitrary (seeded) starts.
  int s = static_cast<int>(m.lc.circuit.gates.size());
  std::mt19937_64 rng(0x7ef5u);
  Stepper st(b.graph);
  for (int t = 0; t < 100; ++t) {
    Config x(b.graph.vertex_count);
    for (int i = 0; i < b.graph.vertex_count; ++i) x.set(i, draw(rng, 2));
    Config two = st.step(st.step(x));
    Config three = st.step(two);
    for (int block = 0; block < 2; ++block) {
      int base = s + 5 * block;
      for (int q = 0; q < 5; ++q)
        if (two.get(base + q) != two.get(base) ||
            three.get(base + q) != two.get(base))
          return fail(name, "constant block unstable after two steps, trial " +
                                std::to_string(t));
    }
  }
  return pass(name, "embedded periods, fixed-point drains, constant blocks");
}

CheckResult verify_reductions(bool include_large, const Budget& budget) {
  const std::string name = "reduction-equivalences";

  // Half-clique <=> small self-sufficient subset, order-4 sources.
  {
    auto half_clique = [](const UGraph& g) {
      int m = g.vertex_count;
      auto adj = g.adjacency();
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        if (std::popcount(mask) != m / 2) continue;
        bool clique = true;
        for (int u = 0; u < m && clique; ++u)
          for (int v = u + 1; v < m && clique; ++v)
            if (((mask >> u) & 1) && ((mask >> v) & 1))
              clique = std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
        if (clique) return true;
      }
      return false;
    };
    UGraph one_edge(4);
    one_edge.edges = {{0, 1}};
    UGraph empty(4);
    for (const UGraph& src : {one_edge, empty}) {
      ReductionOutput r = reduce_clique_to_ss(src);
      auto found = find_small_self_sufficient(r.graph, budget);
      if (found && !verify_certificate(r.graph, *found))
        return fail(name, "self-sufficient certificate fails recheck");
      if (found.has_value() != half_clique(src))
        return fail(name, "half-clique equivalence fails on " + serialize_ugraph(src));
    }
  }

  // Vertex cover of half order <=> leader; the 4-path positively, the
  // 4-clique negatively (2^29-subset scan, gated).
  {
    auto small_cover = [](const UGraph& g) {
      int n = g.vertex_count;
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        if (2 * std::popcount(mask) > n) continue;
        bool covers = true;
        for (auto [u, v] : g.edges)
          covers = covers && (((mask >> u) & 1) || ((mask >> v) & 1));
        if (covers) return true;
      }
      return false;
    };
    UGraph path(4);
    path.edges = {{0, 1}, {1, 2}, {2, 3}};
    std::vector<UGraph> sources = {path};
    if (include_large) {
      UGraph k4(4);
      k4.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      sources.push_back(k4);
    }
    for (const UGraph& src : sources) {
      ReductionOutput r = reduce_vc_to_leader(src);
      Budget wide = budget;
      wide.max_n_subsets = std::max(wide.max_n_subsets, r.graph.vertex_count);
      wide.max_subsets =
          std::max<std::uint64_t>(wide.max_subsets,
                                  std::uint64_t(1) << r.graph.vertex_count);
      auto leader = find_leader(r.graph, wide);
      if (leader && !verify_certificate(r.graph, *leader))
        return fail(name, "leader certificate fails recheck");
      if (leader.has_value() != small_cover(src))
        return fail(name, "vertex-cover equivalence fails on " + serialize_ugraph(src));
    }
  }

  // One-start density classification on the compiled instance matches the
  // iterated-circuit verdict, both gate-count parities, both polarities.
  {
    Circuit even;
    even.input_count = 2;
    even.gates.push_back(Gate{Op::Or, input_ref(0), input_ref(1), "g0"});
    even.gates.push_back(Gate{Op::And, input_ref(0), input_ref(1), "g1"});
    even.outputs = {gate_ref(0), gate_ref(1)};

    Circuit odd;
    odd.input_count = 2;
    odd.gates.push_back(Gate{Op::Or, input_ref(0), input_ref(1), "g0"});
    odd.gates.push_back(Gate{Op::Buf, gate_ref(0), {}, "g1"});
    odd.gates.push_back(Gate{Op::Buf, gate_ref(0), {}, "g2"});
    odd.outputs = {gate_ref(1), gate_ref(2)};

    for (const Circuit& c : {even, odd}) {
      LayeredCircuit lc = layerize(c);
      for (std::uint64_t v : {std::uint64_t(1), std::uint64_t(0)}) {  // 10, 00
        Config x(2, v);
        ReductionOutput r = reduce_dctp_one(lc, x, 0);
        bool expected = r.get_meta("expected_positive") == "true";
        bool circuit_side = false;
        Config y = x;
        for (int t = 0; t < 8 && !circuit_side; ++t) {  // tiny state space
          y = eval(c, y);
          circuit_side = y.get(0);
        }
        if (expected != circuit_side)
          return fail(name, "metadata verdict disagrees with circuit iteration");
        if (!r.seed_config) return fail(name, "instance is missing its start state");
        if (check_dct_one(r.graph, *r.seed_config, budget) != expected)
          return fail(name, "one-start classification disagrees with circuit verdict");
      }
    }
  }
  return pass(name, include_large
                        ? "half-clique, vertex-cover (incl. 2^29 scan), one-start instances"
                        : "half-clique, vertex-cover (4-path), one-start instances");
}

CheckResult verify_structure(uint64_t seed, const Budget& budget) {
  const std::string name = "structural-audits";
  std::mt19937_64 rng(seed);

  auto audit_mban = [&](const ReductionOutput& r, std::string& problem,
                        const std::string& what) {
    ValidationReport rep = validate_mban(r.graph);
    if (!rep.indegrees_all_odd || !rep.indegrees_all_positive)
      problem = what + ": in-degree parity audit fails";
    else if (!rep.vertex_count_odd)
      problem = what + ": vertex count is even";
    else if (!rep.strongly_connected)
      problem = what + ": not strongly connected";
  };

  std::string problem;

  // Clique reduction: exact degree histogram per class.
  {
    UGraph one_edge(4);
    one_edge.edges = {{0, 1}};
    UGraph rnd(6);
    {
      std::vector<std::pair<int, int>> all;
      for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) all.emplace_back(u, v);
      for (std::size_t k = 0; k + 1 < all.size(); ++k)
        std::swap(all[k], all[k + draw(rng, all.size() - k)]);
      std::vector<int> deg(6, 0);
      for (auto [u, v] : all)
        if (deg[u] < 3 && deg[v] < 3) {
          rnd.edges.emplace_back(u, v);
          ++deg[u];
          ++deg[v];
        }
      std::sort(rnd.edges.begin(), rnd.edges.end());
    }
    for (const UGraph& src : {one_edge, rnd}) {
      int m = src.vertex_count;
      ReductionOutput r = reduce_clique_to_ss(src);
      audit_mban(r, problem, "clique instance");
      if (!problem.empty()) break;
      std::map<int, int> hist;
      for (int v = 0; v < r.graph.vertex_count; ++v) ++hist[r.graph.in_degree(v)];
      std::map<int, int> want = {{3 * m - 3, m},
                                 {4 * m - 1, 2 * m - 1},
                                 {5 * m - 1, 1},
                                 {5 * m + 1, 2 * m + 1}};
      if (hist != want) {
        problem = "clique instance: degree histogram off";
        break;
      }
      if (serialize_reduction(r) != serialize_reduction(reduce_clique_to_ss(src))) {
        problem = "clique instance: construction not deterministic";
        break;
      }
    }
  }

  // One-start instances, both parities.
  if (problem.empty()) {
    Circuit even;
    even.input_count = 2;
    even.gates.push_back(Gate{Op::Or, input_ref(0), input_ref(1), "g0"});
    even.gates.push_back(Gate{Op::And, input_ref(0), input_ref(1), "g1"});
    even.outputs = {gate_ref(0), gate_ref(1)};
    Circuit odd;
    odd.input_count = 2;
    odd.gates.push_back(Gate{Op::Or, input_ref(0), input_ref(1), "g0"});
    odd.gates.push_back(Gate{Op::Buf, gate_ref(0), {}, "g1"});
    odd.gates.push_back(Gate{Op::Buf, gate_ref(0), {}, "g2"});
    odd.outputs = {gate_ref(1), gate_ref(2)};
    for (const Circuit& c : {even, odd}) {
      ReductionOutput r = reduce_dctp_one(layerize(c), Config(2, 1), 0);
      audit_mban(r, problem, "one-start instance");
      if (!problem.empty()) break;
      int vc = c.input_count + static_cast<int>(c.gates.size());
      if (r.graph.vertex_count != 2 * vc + 3) {
        problem = "one-start instance: size identity fails";
        break;
      }
      if (!r.seed_config || majority(*r.seed_config) != true) {
        problem = "one-start instance: start state must carry majority one";
        break;
      }
      if (serialize_reduction(r) !=
          serialize_reduction(reduce_dctp_one(layerize(c), Config(2, 1), 0))) {
        problem = "one-start instance: construction not deterministic";
        break;
      }
    }
  }

  // Compiled circuit and the full pipeline: in-degrees within {1,3,5,7}.
  if (problem.empty()) {
    Circuit swap2;
    swap2.input_count = 2;
    swap2.gates.push_back(Gate{Op::Buf, input_ref(1), {}, "g0"});
    swap2.gates.push_back(Gate{Op::Buf, input_ref(0), {}, "g1"});
    swap2.outputs = {gate_ref(0), gate_ref(1)};
    MonotonizeResult m = monotonize(swap2, budget);
    ReductionOutput b = circuit_to_mban(m.lc);

    Circuit identity;
    identity.input_count = 1;
    identity.gates.push_back(Gate{Op::Buf, input_ref(0), {}, "g0"});
    identity.outputs = {gate_ref(0)};
    FullReduction full = full_reduction(identity, Config(1), 0, budget);

    for (const ReductionOutput* r : {&b, &full.out}) {
      audit_mban(*r, problem, "compiled circuit");
      if (!problem.empty()) break;
      for (int v = 0; v < r->graph.vertex_count; ++v) {
        int d = r->graph.in_degree(v);
        if (d != 1 && d != 3 && d != 5 && d != 7) {
          problem = "compiled circuit: in-degree outside {1,3,5,7}";
          break;
        }
      }
      if (!problem.empty()) break;
    }
    if (problem.empty()) {
      if (full.wrapped.input_count != 2 || full.mono.lc.circuit.input_count != 4 ||
          full.out.graph.vertex_count !=
              static_cast<int>(full.mono.lc.circuit.gates.size()) + 10)
        problem = "full pipeline: stage size identities fail";
      else if (serialize_reduction(full.out) !=
               serialize_reduction(full_reduction(identity, Config(1), 0, budget).out))
        problem = "full pipeline: construction not deterministic";
    }
  }

  // Leader reduction: odd order, strong connectivity, per-class in-degrees.
  if (problem.empty()) {
    UGraph path(4);
    path.edges = {{0, 1}, {1, 2}, {2, 3}};
    UGraph rnd(8);
    {
      for (int v = 1; v < 8; ++v)
        rnd.edges.emplace_back(static_cast<int>(draw(rng, v)), v);
      while (rnd.edges.size() < 10) {
        int u = static_cast<int>(draw(rng, 8));
        int v = static_cast<int>(draw(rng, 8));
        if (u == v) continue;
        auto e = std::minmax(u, v);
        std::pair<int, int> edge{e.first, e.second};
        if (std::find(rnd.edges.begin(), rnd.edges.end(), edge) == rnd.edges.end())
          rnd.edges.push_back(edge);
      }
      std::sort(rnd.edges.begin(), rnd.edges.end());
    }
    for (const UGraph& src : {path, rnd}) {
      int n = src.vertex_count;
      int e = static_cast<int>(src.edges.size());
      ReductionOutput r = reduce_vc_to_leader(src);
      const DiGraph& g = r.graph;
      if (g.vertex_count != n + 4 * e + 1 || g.vertex_count % 2 == 0) {
        problem = "leader instance: size identity fails";
        break;
      }
      if (!strongly_connected(g)) {
        problem = "leader instance: not strongly connected";
        break;
      }
      auto deg = src.degrees();
      int x_size = 2 * e - n;
      int y_end = n + x_size, x_end = y_end + x_size, z_end = x_end + 3 * n / 2;
      int cyc = std::min(n, x_size);
      for (int v = 0; v < g.vertex_count && problem.empty(); ++v) {
        int want;
        if (v < n)
          want = 2 * deg[v] - 1;
        else if (v < y_end)
          want = g.vertex_count;
        else if (v < x_end)
          want = (v - y_end) < cyc ? 3 : 1;
        else if (v < z_end)
          want = g.vertex_count;
        else
          want = x_size;
        if (g.in_degree(v) != want)
          problem = "leader instance: per-class in-degree fails";
      }
      if (!problem.empty()) break;
      if (serialize_reduction(r) != serialize_reduction(reduce_vc_to_leader(src))) {
        problem = "leader instance: construction not deterministic";
        break;
      }
    }
  }

  if (!problem.empty()) return fail(name, problem);
  return pass(name, "all reduction outputs pass parity, connectivity, and histogram audits");
}

std::vector<CheckResult> verify_all(uint64_t seed, bool include_large,
                                    const Budget& budget) {
  std::vector<CheckResult> out;
  out.push_back(verify_characterization_oracle(seed, 500, budget));
  out.push_back(verify_clique_consensus(budget));
  out.push_back(verify_pattern_lemmas(seed, budget));
  out.push_back(verify_dynamics_invariants(seed, 10000, budget));
  out.push_back(verify_dual_lemma(seed, 100, budget));
  out.push_back(verify_monotonize(seed, 50, budget));
  out.push_back(verify_wrap_counter(budget));
  out.push_back(verify_compiler(budget));
  out.push_back(verify_reductions(include_large, budget));
  out.push_back(verify_structure(seed, budget));
  return out;
}

}  // namespace mban
