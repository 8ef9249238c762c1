#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mban/budget.hh"
#include "mban/circuit.hh"
#include "mban/config.hh"
#include "mban/graph.hh"
#include "mban/undirected.hh"

namespace mban {

struct ReductionOutput {
  DiGraph graph;
  std::vector<std::string> labels;            // per vertex, may be ""
  std::optional<Config> seed_config;
  std::vector<std::pair<std::string, std::string>> metadata;  // ordered key/value

  void set_meta(const std::string& key, const std::string& value);
  std::optional<std::string> get_meta(const std::string& key) const;
};

// graph + "label <v>: <tag>" sidecar lines + optional "seed <bits>" +
// "meta <key> <value>" lines, in one text block.
std::string serialize_reduction(const ReductionOutput& r);
ReductionOutput parse_reduction(const std::string& text);

// --- circuit instance -> one-configuration DCT question -------------------
// Monotone fan-in<=2 strictly-layered self-map C, input x, output index i:
// builds a network that converges to all-ones from the canonical seed iff
// some iterate of C lights output i on x.
ReductionOutput reduce_dctp_one(const LayeredCircuit& lc, const Config& x, int i);

// --- half-size clique -> small self-sufficient set -------------------------
// Even-order graph with max degree <= m-3; the output has a self-sufficient
// set of size < |V'|/2 iff the graph has a clique on m/2 vertices.
ReductionOutput reduce_clique_to_ss(const UGraph& g);

// In-neighbor triple {in1, in2, const_vertex} whose majority equals the gate
// function while the constant vertex holds 0 (for AND) / 1 (for OR).
std::vector<int> gate_gadget(Op kind, int in1, int in2, int const_vertex);

// --- vertex cover -> leader -------------------------------------------------
// Connected graph, n divisible by 4; the output network has a leader iff the
// graph has a vertex cover of size <= n/2.
ReductionOutput reduce_vc_to_leader(const UGraph& g);

// --- monotone layered circuit -> network ------------------------------------
// Gates become vertices, plus two constant cliques T/F; requires a monotone
// strictly-layered self-map with no dead gates and at least one two-operand
// AND and OR. Step of the network simulates one evaluation of the circuit.
ReductionOutput circuit_to_mban(const LayeredCircuit& lc);

// Network configuration matching circuit state x: gate vertices carry their
// eval value, test-tree gates their stable value, T=1 / F=0.
Config embed_circuit_config(const ReductionOutput& r, const LayeredCircuit& lc,
                            const Config& x);

// --- whole pipeline: arbitrary circuit instance -> network ------------------
struct FullReduction {
  ReductionOutput out;
  Circuit normalized;
  Circuit wrapped;
  MonotonizeResult mono;
};
FullReduction full_reduction(const Circuit& c, const Config& x, int i,
                             const Budget& budget = {});

}  // namespace mban
