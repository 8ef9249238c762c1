#include "mban/dct.hh"

#include <bit>

namespace mban {

namespace {

void require_odd(const DiGraph& g) {
  if (g.vertex_count % 2 == 0)
    throw std::invalid_argument(
        "density classification requires an odd number of vertices");
}

// Canonical representative (minimum value) of the terminal cycle of every
// configuration, from a successor table: one linear functional-graph sweep.
std::vector<std::uint32_t> cycle_reps(const std::vector<std::uint32_t>& succ) {
  const std::uint32_t kUnset = 0xffffffffu;
  std::size_t size = succ.size();
  std::vector<std::uint32_t> rep(size, kUnset);
  std::vector<std::uint8_t> state(size, 0);  // 0 new, 1 on path, 2 done
  std::vector<std::uint32_t> path;
  for (std::size_t v0 = 0; v0 < size; ++v0) {
    if (state[v0] == 2) continue;
    path.clear();
    std::uint32_t u = static_cast<std::uint32_t>(v0);
    while (state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = succ[u];
    }
    std::uint32_t r;
    if (state[u] == 1) {  // fresh cycle through u
      r = u;
      for (std::uint32_t w = succ[u]; w != u; w = succ[w])
        if (w < r) r = w;
    } else {
      r = rep[u];
    }
    for (std::uint32_t w : path) {
      rep[w] = r;
      state[w] = 2;
    }
  }
  return rep;
}

bool majority_bits(std::uint64_t x, int n) {
  return 2 * std::popcount(x) > n;  // n odd, no ties
}

// Walks the orbit of the counterexample and fills kind fields.
void classify_failure(const Stepper& s, const Config& c, const Budget& budget,
                      DctVerdict& verdict) {
  Orbit o = orbit_fn(
      c, [&s](const Config& x) { return s.step(x); }, budget, false);
  bool maj0 = majority(c);
  bool flipped = false;
  Config y = c;
  for (std::uint64_t t = 0; t < o.transient_length + o.period && !flipped; ++t) {
    y = s.step(y);
    flipped = majority(y) != maj0;
  }
  verdict.majority_flipped = flipped;
  if (flipped)
    verdict.failure_kind = FailureKind::MajorityFlipDetected;
  else if (o.period == 1)
    verdict.failure_kind = FailureKind::WrongFixedPoint;
  else
    verdict.failure_kind = FailureKind::LimitCycle;
}

// Whether the orbit of x (value form, n <= 64) reaches uniform(majority(x)).
bool one_orbit_passes(const Stepper& s, const Config& x, const Budget& budget) {
  Config target = Config::uniform(x.n, majority(x));
  Orbit o = orbit_fn(
      x, [&s](const Config& c) { return s.step(c); }, budget, false);
  if (o.period != 1) return false;
  Config z = x;
  for (std::uint64_t t = 0; t < o.transient_length; ++t) z = s.step(z);
  return z == target;
}

DctVerdict scan_with_table(const DiGraph& g, const Budget& budget, bool pruned) {
  Stepper s(g);
  int n = g.vertex_count;
  auto succ = successor_table(g, budget);
  auto rep = cycle_reps(succ);
  std::uint64_t size = std::uint64_t(1) << n;
  std::uint64_t ones = size - 1;
  auto fails = [&](std::uint64_t v) {
    std::uint64_t target = majority_bits(v, n) ? ones : 0;
    return rep[v] != target;
  };

  DctVerdict verdict;
  verdict.solves = true;
  if (pruned) {
    std::uint64_t e_min = 0, e_max = 0;
    bool found = false;
    for (std::uint64_t v = 0; v < size; v += 2) {
      if (fails(v)) {
        if (!found) e_min = v;
        e_max = v;
        found = true;
      }
    }
    verdict.configurations_checked = size / 2;
    if (found) {
      verdict.solves = false;
      std::uint64_t c = std::min(e_min, ones - e_max);
      verdict.counterexample = Config(n, c);
      classify_failure(s, *verdict.counterexample, budget, verdict);
    }
  } else {
    verdict.configurations_checked = 0;
    for (std::uint64_t v = 0; v < size; ++v) {
      ++verdict.configurations_checked;
      if (fails(v)) {
        verdict.solves = false;
        verdict.counterexample = Config(n, v);
        classify_failure(s, *verdict.counterexample, budget, verdict);
        break;
      }
    }
  }
  return verdict;
}

DctVerdict scan_per_orbit(const DiGraph& g, const Budget& budget, bool pruned) {
  Stepper s(g);
  int n = g.vertex_count;
  std::uint64_t half = (n >= 64) ? ~std::uint64_t(0) : (std::uint64_t(1) << (n > 0 ? n - 1 : 0));
  if (n > 63 || half > budget.max_subsets)
    throw BudgetExceeded("configuration space too large for exhaustive scan", 0);
  std::uint64_t size = std::uint64_t(1) << n;
  std::uint64_t ones = size - 1;

  DctVerdict verdict;
  verdict.solves = true;
  verdict.configurations_checked = 0;
  auto fails = [&](std::uint64_t v) {
    ++verdict.configurations_checked;
    return !one_orbit_passes(s, Config(n, v), budget);
  };

  if (pruned) {
    std::uint64_t e_min = 0;
    bool found = false;
    for (std::uint64_t v = 0; v < size; v += 2) {
      if (fails(v)) {
        e_min = v;
        found = true;
        break;
      }
    }
    if (found) {
      std::uint64_t e_max = e_min;
      for (std::uint64_t v = size - 2; v > e_min; v -= 2) {
        if (fails(v)) {
          e_max = v;
          break;
        }
      }
      verdict.solves = false;
      verdict.counterexample = Config(n, std::min(e_min, ones - e_max));
      classify_failure(s, *verdict.counterexample, budget, verdict);
    }
  } else {
    for (std::uint64_t v = 0; v < size; ++v) {
      if (fails(v)) {
        verdict.solves = false;
        verdict.counterexample = Config(n, v);
        classify_failure(s, *verdict.counterexample, budget, verdict);
        break;
      }
    }
  }
  return verdict;
}

}  // namespace

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::WrongFixedPoint: return "wrong-fixed-point";
    case FailureKind::LimitCycle: return "limit-cycle";
    case FailureKind::MajorityFlipDetected: return "majority-flip-detected";
  }
  return "?";
}

bool check_dct_one(const DiGraph& g, const Config& x, const Budget& budget) {
  require_odd(g);
  if (x.n != g.vertex_count) throw std::invalid_argument("configuration length mismatch");
  Stepper s(g);
  return one_orbit_passes(s, x, budget);
}

DctVerdict check_dct_all(const DiGraph& g, const Budget& budget) {
  require_odd(g);
  if (g.vertex_count <= std::min(budget.max_n_scan, 20))
    return scan_with_table(g, budget, true);
  return scan_per_orbit(g, budget, true);
}

DctVerdict check_dct_all_unpruned(const DiGraph& g, const Budget& budget) {
  require_odd(g);
  if (g.vertex_count <= std::min(budget.max_n_scan, 20))
    return scan_with_table(g, budget, false);
  return scan_per_orbit(g, budget, false);
}

}  // namespace mban
