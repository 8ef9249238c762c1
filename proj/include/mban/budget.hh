#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mban {

// Resource limits for the exponential searches. Every core question here is
// NP- or PSPACE-hard, so the tools must fail loudly instead of hanging.
struct Budget {
  int max_n_scan = 20;          // full 2^n state-space scans
  int max_n_subsets = 24;       // size-bounded subset enumeration (leaders)
  std::uint64_t max_steps = std::uint64_t(1) << 22;    // single-orbit step cap
  std::uint64_t max_subsets = std::uint64_t(1) << 27;  // subset enumeration cap
  int jobs = 0;                 // 0 = library default (all available threads)
};

struct BudgetExceeded : std::runtime_error {
  std::uint64_t progress;  // steps walked / configurations or subsets examined
  BudgetExceeded(const std::string& what, std::uint64_t progress_)
      : std::runtime_error(what), progress(progress_) {}
};

}  // namespace mban
