#include <string>
#include <vector>

#include "doctest.h"
#include "mban/circuit_io.hh"
#include "mban/dct.hh"
#include "mban/dynamics.hh"
#include "mban/graph_io.hh"
#include "mban/patterns.hh"
#include "mban/reduce.hh"
#include "mban/undirected.hh"

using namespace mban;

namespace {

// Even vertex count: 2 inputs + 2 gates.
LayeredCircuit even_instance() {
  return layerize(parse_circuit(
      "inputs 2\ngate g0 AND i0 i1\ngate g1 OR i0 i1\noutputs g0 g1\n"));
}

// Odd vertex count: 2 inputs + 1 gate feeding both outputs.
LayeredCircuit odd_instance() {
  return layerize(parse_circuit("inputs 2\ngate g0 OR i0 i1\noutputs g0 g0\n"));
}

// Monotone strictly-layered self-map used for the compiler tests.
LayeredCircuit compile_instance() {
  return layerize(parse_circuit(
      "inputs 2\n"
      "gate g0 AND i0 i1\n"
      "gate g1 OR i0 i1\n"
      "gate g2 BUF i0\n"
      "gate g3 OR g0 g1\n"
      "gate g4 AND g1 g2\n"
      "outputs g3 g4\n"));
}

UGraph one_edge4() {
  UGraph g(4);
  g.edges = {{0, 1}};
  return g;
}

UGraph path4() {
  UGraph g(4);
  g.edges = {{0, 1}, {1, 2}, {2, 3}};
  return g;
}

std::string in_list(const DiGraph& g, int v) {
  std::string s;
  for (int u : g.in_neighbors[v]) s += std::to_string(u) + " ";
  if (!s.empty()) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("gate gadget") {
  CHECK(gate_gadget(Op::And, 7, 3, 12) == std::vector<int>{3, 7, 12});
  CHECK(gate_gadget(Op::Or, 0, 2, 1) == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(gate_gadget(Op::Not, 0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(gate_gadget(Op::And, 1, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(gate_gadget(Op::Or, 0, 2, 2), std::invalid_argument);
}

TEST_CASE("single-question reduction, even circuit size") {
  ReductionOutput r = reduce_dctp_one(even_instance(), Config::from_string("10"), 0);
  const DiGraph& g = r.graph;
  REQUIRE(g.vertex_count == 11);
  CHECK(in_list(g, 0) == "2 4 5");    // input 0: its output gate, both constants
  CHECK(in_list(g, 1) == "3 4 5");
  CHECK(in_list(g, 2) == "0 1 4");    // AND gadget with the zero keeper
  CHECK(in_list(g, 3) == "0 1 5");    // OR gadget with the one keeper
  CHECK(in_list(g, 4) == "2 4 5");    // zero keeper watches the distinguished output
  CHECK(in_list(g, 5) == "4 5 6");
  CHECK(in_list(g, 6) == "5 7 8 9 10");  // first pool vertex swaps loop for the keeper
  CHECK(in_list(g, 7) == "6 7 8 9 10");
  CHECK(in_list(g, 10) == "6 7 8 9 10");

  CHECK(r.labels == std::vector<std::string>{"i0", "i1", "g0", "g1", "b0", "b1", "P",
                                             "P", "P", "P", "P"});
  REQUIRE(r.seed_config.has_value());
  CHECK(r.seed_config->to_string() == "10000111111");
  CHECK(r.get_meta("n") == "11");
  CHECK(r.get_meta("b0") == "4");
  CHECK(r.get_meta("b1") == "5");
  CHECK(r.get_meta("p") == "6");
  CHECK(r.get_meta("i") == "0");
  CHECK(r.get_meta("degree_histogram") == "3:6,5:5");
  CHECK(r.get_meta("expected_positive") == "false");

  ValidationReport audit = validate_mban(g);
  CHECK(audit.indegrees_all_odd);
  CHECK(audit.strongly_connected);
  CHECK(audit.vertex_count_odd);
  CHECK(majority(*r.seed_config));

  // The network answers the one-configuration question the circuit poses.
  CHECK_FALSE(check_dct_one(g, *r.seed_config));
  ReductionOutput pos = reduce_dctp_one(even_instance(), Config::from_string("11"), 0);
  CHECK(pos.get_meta("expected_positive") == "true");
  CHECK(check_dct_one(pos.graph, *pos.seed_config));
}

TEST_CASE("single-question reduction, odd circuit size") {
  ReductionOutput r = reduce_dctp_one(odd_instance(), Config::from_string("10"), 0);
  const DiGraph& g = r.graph;
  REQUIRE(g.vertex_count == 9);
  CHECK(in_list(g, 0) == "2 3 4");
  CHECK(in_list(g, 1) == "2 3 4");
  CHECK(in_list(g, 2) == "0 1 4");
  CHECK(in_list(g, 3) == "2 3 4");
  CHECK(in_list(g, 4) == "3 4 5");
  CHECK(in_list(g, 5) == "4 6 7");  // loopless pool: drops the top id, gains the keeper
  CHECK(in_list(g, 6) == "5 7 8");
  CHECK(in_list(g, 7) == "5 6 8");
  CHECK(in_list(g, 8) == "5 6 7");
  CHECK(r.get_meta("degree_histogram") == "3:9");
  CHECK(r.seed_config->to_string() == "100011111");
  CHECK(validate_mban(g).indegrees_all_odd);
  CHECK(validate_mban(g).strongly_connected);

  CHECK(r.get_meta("expected_positive") == "true");
  CHECK(check_dct_one(g, *r.seed_config));
  ReductionOutput neg = reduce_dctp_one(odd_instance(), Config::from_string("00"), 0);
  CHECK(neg.get_meta("expected_positive") == "false");
  CHECK_FALSE(check_dct_one(neg.graph, *neg.seed_config));
}

TEST_CASE("single-question reduction preconditions") {
  LayeredCircuit lc = even_instance();
  CHECK_THROWS_AS(reduce_dctp_one(lc, Config::from_string("101"), 0),
                  std::invalid_argument);  // input length
  CHECK_THROWS_AS(reduce_dctp_one(lc, Config::from_string("10"), 2),
                  std::invalid_argument);  // index range

  LayeredCircuit notgate = layerize(parse_circuit(
      "inputs 2\ngate a NOT i0\ngate b NOT i1\noutputs a b\n"));
  CHECK_THROWS_AS(reduce_dctp_one(notgate, Config::from_string("10"), 0),
                  std::invalid_argument);

  LayeredCircuit narrow = layerize(parse_circuit(
      "inputs 2\ngate a OR i0 i1\noutputs a\n"));
  CHECK_THROWS_AS(reduce_dctp_one(narrow, Config::from_string("10"), 0),
                  std::invalid_argument);  // not a self-map

  // Two independent wires: the distinguished output never hears input 1.
  LayeredCircuit split = layerize(parse_circuit(
      "inputs 2\ngate a BUF i0\ngate b BUF i1\noutputs a b\n"));
  try {
    reduce_dctp_one(split, Config::from_string("10"), 0);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("depend") != std::string::npos);
  }

  // A dead gate alongside the used one.
  LayeredCircuit dead = layerize(parse_circuit(
      "inputs 2\ngate a OR i0 i1\ngate b AND i0 i1\noutputs a a\n"));
  CHECK_THROWS_AS(reduce_dctp_one(dead, Config::from_string("10"), 0),
                  std::invalid_argument);
}

TEST_CASE("clique reduction layout") {
  ReductionOutput r = reduce_clique_to_ss(one_edge4());
  const DiGraph& g = r.graph;
  REQUIRE(g.vertex_count == 21);
  CHECK(in_list(g, 0) == "1 4 5 6 7 12 13 14 15");
  CHECK(in_list(g, 2) == "4 5 6 7 12 13 14 15 16");
  CHECK(g.in_degree(4) == 19);   // distinguished x reads the graph block too
  CHECK(g.in_degree(5) == 15);
  CHECK(g.in_degree(12) == 21);  // Y vertices read everything
  CHECK(r.labels[0] == "v0");
  CHECK(r.labels[4] == "x");
  CHECK(r.labels[5] == "X");
  CHECK(r.labels[12] == "Y");
  CHECK(r.get_meta("n") == "21");
  CHECK(r.get_meta("x") == "4");
  CHECK(r.get_meta("half_clique") == "2");
  CHECK(r.get_meta("degree_histogram") == "9:4,15:7,19:1,21:9");
  CHECK(validate_mban(g).indegrees_all_odd);
  CHECK(validate_mban(g).strongly_connected);
  CHECK(validate_mban(g).vertex_count_odd);

  // The half-size clique {0,1} shows up as a small self-sufficient set made
  // of the clique plus the whole X block.
  VertexSubset cert = {0, 1, 4, 5, 6, 7, 8, 9, 10, 11};
  CHECK(verify_certificate(g, SelfSufficientCertificate{cert, false}));
  CHECK(find_small_self_sufficient(g).has_value());

  // Without any edge there is no half-size clique and no small set.
  ReductionOutput empty = reduce_clique_to_ss(UGraph(4));
  CHECK_FALSE(find_small_self_sufficient(empty.graph).has_value());
}

TEST_CASE("clique reduction preconditions") {
  CHECK_THROWS_AS(reduce_clique_to_ss(UGraph(5)), std::invalid_argument);
  CHECK_THROWS_AS(reduce_clique_to_ss(UGraph(2)), std::invalid_argument);
  UGraph dense(4);
  dense.edges = {{0, 1}, {0, 2}, {1, 2}};  // degree 2 > 4-3
  CHECK_THROWS_AS(reduce_clique_to_ss(dense), std::invalid_argument);
}

TEST_CASE("vertex cover reduction layout") {
  ReductionOutput r = reduce_vc_to_leader(path4());
  const DiGraph& g = r.graph;
  REQUIRE(g.vertex_count == 17);
  CHECK(in_list(g, 0) == "1");
  CHECK(in_list(g, 1) == "0 2 4");
  CHECK(in_list(g, 2) == "1 3 5");
  CHECK(in_list(g, 3) == "2");
  CHECK(g.in_degree(4) == 17);
  CHECK(in_list(g, 6) == "7 8 9");   // cycle vertex with its side pair
  CHECK(in_list(g, 7) == "6 10 11");
  CHECK(g.in_degree(8) == 17);
  CHECK(in_list(g, 14) == "6 7");    // threshold watchers read the X block
  CHECK(in_list(g, 16) == "6 7");
  CHECK(r.labels[4] == "Y");
  CHECK(r.labels[6] == "X");
  CHECK(r.labels[8] == "Z");
  CHECK(r.labels[14] == "Z'");
  CHECK(r.labels[16] == "t");
  CHECK(r.get_meta("n") == "17");
  CHECK(r.get_meta("t") == "16");
  CHECK(r.get_meta("x_size") == "2");
  CHECK(r.get_meta("cover_bound") == "2");
  CHECK(r.get_meta("degree_histogram") == "1:2,2:3,3:4,17:8");
  CHECK(validate_mban(g).strongly_connected);
  CHECK(validate_mban(g).vertex_count_odd);

  // The path has a half-size vertex cover {1,2}, so a leader exists; the
  // canonical one covers the graph, its cover's helpers and the cycle pairs.
  LeaderCertificate pinned{{0, 1, 2, 3, 6, 7, 9, 11}, {0, 1, 2, 3, 6, 7, 14, 15, 16}};
  CHECK(verify_certificate(g, pinned));
  CHECK(find_leader(g).has_value());
}

TEST_CASE("vertex cover reduction preconditions") {
  UGraph odd(6);
  odd.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  CHECK_THROWS_AS(reduce_vc_to_leader(odd), std::invalid_argument);  // order not 4k
  UGraph split(4);
  split.edges = {{0, 1}};
  CHECK_THROWS_AS(reduce_vc_to_leader(split), std::invalid_argument);  // disconnected
}

TEST_CASE("circuit compiler layout") {
  LayeredCircuit lc = compile_instance();
  REQUIRE(lc.depth == 2);
  ReductionOutput r = circuit_to_mban(lc);
  const DiGraph& g = r.graph;
  REQUIRE(g.vertex_count == 15);
  CHECK(in_list(g, 0) == "3 4 10");  // AND over fed-back outputs, zero-clique constant
  CHECK(in_list(g, 1) == "3 4 5");   // OR over fed-back outputs, one-clique constant
  CHECK(in_list(g, 2) == "3");       // buffer: bare wire
  CHECK(in_list(g, 3) == "0 1 5");
  CHECK(in_list(g, 4) == "1 2 10");
  CHECK(in_list(g, 5) == "5 6 7 8 9");
  CHECK(in_list(g, 9) == "0 1 5 6 7 8 9");    // clique anchor watches two gates
  CHECK(in_list(g, 10) == "10 11 12 13 14");
  CHECK(in_list(g, 14) == "0 1 10 11 12 13 14");
  CHECK(r.labels == std::vector<std::string>{"g0", "g1", "g2", "g3", "g4", "T", "T", "T",
                                             "T", "T", "F", "F", "F", "F", "F"});
  CHECK(r.get_meta("n") == "15");
  CHECK(r.get_meta("s") == "5");
  CHECK(r.get_meta("f_start") == "10");
  CHECK(r.get_meta("depth") == "2");
  CHECK(r.get_meta("degree_histogram") == "1:1,3:4,5:8,7:2");
  CHECK(validate_mban(g).indegrees_all_odd);
  CHECK(validate_mban(g).strongly_connected);

  // One circuit evaluation = depth network steps, on embedded states.
  for (std::uint64_t v = 0; v < 4; ++v) {
    Config x(2, v);
    Config image = eval(lc.circuit, x);
    CHECK(iterate(g, embed_circuit_config(r, lc, x), lc.depth) ==
          embed_circuit_config(r, lc, image));
  }
  Config fixed = embed_circuit_config(r, lc, Config::from_string("11"));
  CHECK(step(g, fixed) == fixed);
  CHECK(embed_circuit_config(r, lc, Config::from_string("10")).to_string() ==
        "011111111100000");
}

TEST_CASE("circuit compiler preconditions") {
  CHECK_THROWS_AS(circuit_to_mban(layerize(parse_circuit(
                      "inputs 2\ngate a NOT i0\ngate b NOT i1\noutputs a b\n"))),
                  std::invalid_argument);
  CHECK_THROWS_AS(circuit_to_mban(layerize(parse_circuit(
                      "inputs 2\ngate a OR i0 i1\ngate b AND i0 i1\noutputs a\n"))),
                  std::invalid_argument);  // not a self-map
  CHECK_THROWS_AS(circuit_to_mban(odd_instance()), std::invalid_argument);  // repeated output
  CHECK_THROWS_AS(circuit_to_mban(layerize(parse_circuit(
                      "inputs 1\ngate a BUF i0\noutputs a\n"))),
                  std::invalid_argument);  // too small
  CHECK_THROWS_AS(circuit_to_mban(layerize(parse_circuit(
                      "inputs 2\ngate a AND i0 i1\ngate b BUF i0\noutputs a b\n"))),
                  std::invalid_argument);  // no two-operand OR

  // Raw inputs as outputs only appear in hand-built layered circuits.
  LayeredCircuit raw;
  raw.circuit = parse_circuit("inputs 2\ngate a AND i0 i1\ngate b OR i0 i1\noutputs a b\n");
  raw.circuit.outputs[1] = input_ref(0);
  raw.layer = {1, 1};
  raw.depth = 1;
  CHECK_THROWS_AS(circuit_to_mban(raw), std::invalid_argument);

  // Output feedback can conflate two syntactically distinct operands.
  LayeredCircuit collide;
  collide.circuit = parse_circuit(
      "inputs 2\ngate a BUF i0\ngate b AND i0 a\ngate c OR b i1\noutputs a c\n");
  collide.layer = {1, 2, 3};
  collide.depth = 3;
  try {
    circuit_to_mban(collide);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("collide") != std::string::npos);
  }

  ReductionOutput r = circuit_to_mban(compile_instance());
  CHECK_THROWS_AS(embed_circuit_config(r, odd_instance(), Config::from_string("10")),
                  std::invalid_argument);
}

TEST_CASE("full pipeline on a one-wire identity") {
  Circuit ident;
  ident.input_count = 1;
  ident.outputs = {input_ref(0)};

  FullReduction fr = full_reduction(ident, Config(1), 0);
  CHECK(fr.wrapped.input_count == 2);
  CHECK(fr.mono.lc.circuit.input_count == 4);
  int s = static_cast<int>(fr.mono.lc.circuit.gates.size());
  CHECK(fr.out.graph.vertex_count == s + 10);
  CHECK(fr.out.get_meta("inputs") == "1");
  CHECK(fr.out.get_meta("wrapped_inputs") == "2");
  CHECK(fr.out.get_meta("mono_inputs") == "4");
  CHECK(fr.out.get_meta("counter_cycle") == "2");
  CHECK(fr.out.get_meta("expected_positive") == "false");
  CHECK(fr.out.get_meta("negative_period") ==
        std::to_string(2 * fr.mono.lc.depth));
  for (int v = 0; v < fr.out.graph.vertex_count; ++v) {
    int d = fr.out.graph.in_degree(v);
    CHECK((d == 1 || d == 3 || d == 5 || d == 7));
  }

  // The seed loops through the wrapped circuit's counter forever: one counter
  // lap of network steps per circuit evaluation. The seed snapshot fills all
  // layers from one instant, so it may take up to one evaluation (depth steps)
  // to merge into the pipelined cycle.
  REQUIRE(fr.out.seed_config.has_value());
  Orbit o = orbit(fr.out.graph, *fr.out.seed_config, Budget{}, 0);
  CHECK(o.transient_length <= static_cast<std::uint64_t>(fr.mono.lc.depth));
  CHECK(o.period == std::uint64_t(2) * fr.mono.lc.depth);

  // A lit pin flips the verdict: the seed now reaches the all-ones attractor.
  FullReduction hot = full_reduction(ident, Config(1, 1), 0);
  CHECK(hot.out.get_meta("expected_positive") == "true");
  Orbit ho = orbit(hot.out.graph, *hot.out.seed_config, Budget{}, 0);
  CHECK(ho.period == 1);

  CHECK_THROWS_AS(full_reduction(parse_circuit("inputs 2\noutputs i0\n"), Config(2), 0),
                  std::invalid_argument);
  try {
    full_reduction(ident, Config(1), 3);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).rfind("wrap_counter: ", 0) == 0);
  }
}

TEST_CASE("reduction text round trip") {
  ReductionOutput r = reduce_dctp_one(even_instance(), Config::from_string("10"), 1);
  std::string text = serialize_reduction(r);
  ReductionOutput back = parse_reduction(text);
  CHECK(serialize_graph(back.graph) == serialize_graph(r.graph));
  CHECK(back.labels == r.labels);
  REQUIRE(back.seed_config.has_value());
  CHECK(*back.seed_config == *r.seed_config);
  CHECK(back.metadata == r.metadata);
  CHECK(serialize_reduction(back) == text);

  ReductionOutput plain = reduce_clique_to_ss(one_edge4());
  CHECK_FALSE(parse_reduction(serialize_reduction(plain)).seed_config.has_value());

  CHECK_THROWS_AS(parse_reduction("mban 1\n0: 0\n"), ParseError);   // no labels section
  CHECK_THROWS_AS(parse_reduction("mban 1\n0: 0\nlabels\nseed\n"), ParseError);
  CHECK_THROWS_AS(parse_reduction("mban 1\n0: 0\nlabels\n5: x\n"), ParseError);
}

TEST_CASE("reductions are deterministic") {
  auto once = serialize_reduction(reduce_vc_to_leader(path4()));
  auto twice = serialize_reduction(reduce_vc_to_leader(path4()));
  CHECK(once == twice);
  CHECK(serialize_reduction(reduce_clique_to_ss(one_edge4())) ==
        serialize_reduction(reduce_clique_to_ss(one_edge4())));
}
