#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mban/budget.hh"

namespace mban {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // non-empty on failure, brief stats on success
};

// Each suite is deterministic for a fixed seed and returns one result.
// They power both the acceptance binary and `mban verify`.
CheckResult verify_characterization_oracle(uint64_t seed, int random_trials,
                                           const Budget& budget = {});
CheckResult verify_clique_consensus(const Budget& budget = {});
CheckResult verify_pattern_lemmas(uint64_t seed, const Budget& budget = {});
CheckResult verify_dynamics_invariants(uint64_t seed, int random_trials,
                                       const Budget& budget = {});
CheckResult verify_dual_lemma(uint64_t seed, int circuits, const Budget& budget = {});
CheckResult verify_monotonize(uint64_t seed, int circuits, const Budget& budget = {});
CheckResult verify_wrap_counter(const Budget& budget = {});
CheckResult verify_compiler(const Budget& budget = {});
CheckResult verify_reductions(bool include_large, const Budget& budget = {});
CheckResult verify_structure(uint64_t seed, const Budget& budget = {});

std::vector<CheckResult> verify_all(uint64_t seed, bool include_large,
                                    const Budget& budget = {});

}  // namespace mban
