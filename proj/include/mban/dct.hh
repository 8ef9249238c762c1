#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mban/budget.hh"
#include "mban/config.hh"
#include "mban/dynamics.hh"
#include "mban/graph.hh"

namespace mban {

enum class FailureKind { WrongFixedPoint, LimitCycle, MajorityFlipDetected };

std::string to_string(FailureKind k);

struct DctVerdict {
  bool solves = false;
  std::optional<Config> counterexample;
  std::optional<FailureKind> failure_kind;
  bool majority_flipped = false;  // flip seen along the counterexample orbit
  std::uint64_t configurations_checked = 0;
};

// True iff the orbit of x contains majority(x)^n (the uniform point is a
// fixed point, so it appears iff it is the orbit's cycle).
bool check_dct_one(const DiGraph& g, const Config& x, const Budget& budget = {});

// Exhaustive decision. Enumeration ascends by integer value restricted to
// bit 0 = 0; complements are covered by self-duality. The reported
// counterexample is the first failure in full enumeration order. Uses a
// successor table (single functional-graph decomposition) when n fits.
DctVerdict check_dct_all(const DiGraph& g, const Budget& budget = {});

// Test hook: the same scan without complement pruning.
DctVerdict check_dct_all_unpruned(const DiGraph& g, const Budget& budget = {});

}  // namespace mban
