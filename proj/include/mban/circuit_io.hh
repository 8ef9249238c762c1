#pragma once

#include <string>

#include "mban/circuit.hh"
#include "mban/graph_io.hh"

namespace mban {

// Text format:
//   inputs <n>
//   gate <id> <AND|OR|NOT|BUF> <ref> [<ref>]   # ref = i<k> or a prior gate id
//   outputs <ref> <ref> ...
// Blank lines and '#' comments allowed. Gate ids must be 0,1,2,... in order.
Circuit parse_circuit(const std::string& text);
std::string serialize_circuit(const Circuit& c);

}  // namespace mban
