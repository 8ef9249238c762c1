#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mban/budget.hh"
#include "mban/config.hh"
#include "mban/dynamics.hh"

namespace mban {

enum class Op { And, Or, Not, Buf };

std::string to_string(Op op);
std::optional<Op> op_from_string(const std::string& s);

// Operand reference: input i (is_input) or an earlier gate id.
struct Ref {
  bool is_input = false;
  int index = 0;

  friend bool operator==(const Ref& a, const Ref& b) {
    return a.is_input == b.is_input && a.index == b.index;
  }
};

inline Ref input_ref(int i) { return Ref{true, i}; }
inline Ref gate_ref(int j) { return Ref{false, j}; }

struct Gate {
  Op op = Op::Buf;
  Ref a;
  Ref b;          // ignored for Not/Buf
  std::string name;  // optional label, carried through transforms
};

// Combinational circuit; gates are topologically ordered by id.
struct Circuit {
  int input_count = 0;
  std::vector<Gate> gates;
  std::vector<Ref> outputs;

  int output_count() const { return static_cast<int>(outputs.size()); }
  bool is_self_map() const { return output_count() == input_count; }
};

// Throws std::invalid_argument if refs are out of range / forward.
void check_circuit(const Circuit& c);

uint64_t eval_ref_count(const Circuit& c);  // gate count, for budgets

// Evaluate on one input configuration (x.n == input_count).
Config eval(const Circuit& c, const Config& x);
// Gate values as a bit per gate (gate id order), plus outputs.
struct EvalTrace {
  std::vector<uint8_t> gate_values;
  Config output;
};
EvalTrace eval_trace(const Circuit& c, const Config& x);

bool is_monotone_ops(const Circuit& c);   // syntactic: no Not gates
bool is_monotone(const Circuit& c, const Budget& budget = {});  // truth-table, inputs <= max_n_subsets
bool has_dead_gates(const Circuit& c);    // gate not reachable from outputs

Config iterate_circuit(const Circuit& c, const Config& x, uint64_t t,
                       const Budget& budget = {});
Orbit circuit_orbit(const Circuit& c, const Config& x, const Budget& budget = {},
                    bool store = true);

// AND/OR swapped in place; involution; names preserved.
Circuit dual(const Circuit& c);

// Rewrite to AND/OR/NOT only: splice Buf chains, cancel double negations,
// drop dead gates. Idempotent; surviving gate names kept.
Circuit normalize(const Circuit& c);

// A circuit whose gates are annotated with strict layers: every operand of a
// gate at layer l sits exactly at layer l-1 (inputs are layer 0), and all
// outputs are gates at the common final layer.
struct LayeredCircuit {
  Circuit circuit;
  std::vector<int> layer;        // per gate, >= 1
  int depth = 0;                 // common output layer
  std::vector<std::string> role;  // per gate, optional tag ("" if none)
};

void check_layered(const LayeredCircuit& lc);  // throws on violation

// Strict layering by Buf padding; requires normalize-style ops (any ops
// accepted, Buf pads inserted per (ref, layer) and shared). Gates strictly
// deeper than every output cannot feed one and are dropped.
LayeredCircuit layerize(const Circuit& c);

int circuit_depth(const Circuit& c);  // longest ref chain, inputs at 0

// Monotone strictly-layered equivalent of a normalized self-map on the
// doubled rail encoding (x, ~x); depth coprime to the test-tree depth.
struct MonotonizeResult {
  LayeredCircuit lc;
  int rail_depth = 0;       // layer of the rewired outputs' rail stage
  int test_root_depth = 0;  // layer of the three test-tree roots
};
MonotonizeResult monotonize(const Circuit& c, const Budget& budget = {});

// Self-map on 2n wires (y ++ counter) that cycles the counter and exposes
// C's behaviour at the flag position; normalized before returning.
Circuit wrap_counter(const Circuit& c, const Config& x, int i);

// Rail encoding of a length-n configuration: (y, ~y).
Config rails_encode(const Config& y);
// First half of a 2n-wire configuration (the y rail).
Config rails_left(const Config& xy);
bool rails_coherent(const Config& xy);

}  // namespace mban
