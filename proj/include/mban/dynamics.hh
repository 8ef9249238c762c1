#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mban/budget.hh"
#include "mban/config.hh"
#include "mban/graph.hh"

namespace mban {

struct TieError : std::runtime_error {
  TieError() : std::runtime_error("majority undefined: exact tie") {}
};

struct EvenDegreeError : std::invalid_argument {
  std::vector<int> offenders;
  explicit EvenDegreeError(std::vector<int> offenders_);
};

// Global majority bit of a configuration; TieError on an exact tie.
bool majority(const Config& x);

// Precompiled update map for one graph. Single-word bit masks when n <= 64,
// index lists otherwise. Rejects even or zero in-degrees on construction.
struct Stepper {
  int n = 0;
  bool mask_mode = false;
  std::vector<std::uint64_t> in_mask;   // mask_mode
  std::vector<int> threshold;           // floor(deg/2): major needs count > this
  std::vector<std::vector<int>> in_idx; // generic mode

  explicit Stepper(const DiGraph& g);

  // Fast path: configurations as plain integers, n <= 64.
  std::uint64_t step_bits(std::uint64_t x) const;

  Config step(const Config& x) const;
};

Config step(const DiGraph& g, const Config& x);
Config iterate(const DiGraph& g, const Config& x, std::uint64_t t);

struct Orbit {
  std::vector<Config> transient;  // empty in summary mode
  std::vector<Config> cycle;      // empty in summary mode
  std::uint64_t period = 0;
  std::uint64_t transient_length = 0;
  bool trajectory_stored = true;
};

// Exact transient and cycle. Stores the trajectory when n <= store_threshold
// (visited-map detection); above that switches to constant-memory
// power-of-two teleporting (Brent) and reports period/transient only.
Orbit orbit(const DiGraph& g, const Config& x, const Budget& budget = {},
            int store_threshold = 24);

// Shared trajectory walker for anything that steps deterministically
// (also used for circuit orbits).
Orbit orbit_fn(const Config& x0, const std::function<Config(const Config&)>& next,
               const Budget& budget, bool store);

// succ[v] for every configuration value v in [0, 2^n); requires n <= 26ish in
// practice (memory). Parallel fill plus a serial reference for testing.
std::vector<std::uint32_t> successor_table(const DiGraph& g, const Budget& budget = {});
std::vector<std::uint32_t> successor_table_serial(const DiGraph& g);

}  // namespace mban
