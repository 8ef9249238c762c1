#pragma once

#include <stdexcept>
#include <string>

#include "mban/graph.hh"

namespace mban {

struct ParseError : std::runtime_error {
  int line;  // 1-based; 0 when not line-specific
  ParseError(int line_, const std::string& msg)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg
                                     : msg),
        line(line_) {}
};

// Text format: header `mban <n>`, then one line per vertex
// `<v>: <u1> <u2> ... <uk>` with ascending distinct in-neighbors, vertices in
// order 0..n-1. Blank lines and `#` comments ignored.
DiGraph parse_graph(const std::string& text);
std::string serialize_graph(const DiGraph& g);

}  // namespace mban
