#include "mban/dynamics.hh"

#include <bit>
#include <string>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mban {

namespace {

std::string offenders_msg(const std::vector<int>& offenders) {
  std::string msg = "majority network requires odd positive in-degrees; offending:";
  for (int v : offenders) msg += " " + std::to_string(v);
  return msg;
}

}  // namespace

EvenDegreeError::EvenDegreeError(std::vector<int> offenders_)
    : std::invalid_argument(offenders_msg(offenders_)), offenders(std::move(offenders_)) {}

bool majority(const Config& x) {
  int ones = x.popcount();
  int zeros = x.n - ones;
  if (ones == zeros) throw TieError();
  return ones > zeros;
}

Stepper::Stepper(const DiGraph& g) : n(g.vertex_count) {
  check_digraph(g);
  std::vector<int> offenders;
  for (int v = 0; v < n; ++v) {
    int d = g.in_degree(v);
    if (d == 0 || d % 2 == 0) offenders.push_back(v);
  }
  if (!offenders.empty()) throw EvenDegreeError(std::move(offenders));

  threshold.resize(n);
  for (int v = 0; v < n; ++v) threshold[v] = g.in_degree(v) / 2;
  mask_mode = n <= 64;
  if (mask_mode) {
    in_mask.assign(n, 0);
    for (int v = 0; v < n; ++v)
      for (int u : g.in_neighbors[v]) in_mask[v] |= std::uint64_t(1) << u;
  } else {
    in_idx = g.in_neighbors;
  }
}

std::uint64_t Stepper::step_bits(std::uint64_t x) const {
  std::uint64_t y = 0;
  for (int v = 0; v < n; ++v)
    if (std::popcount(x & in_mask[v]) > threshold[v]) y |= std::uint64_t(1) << v;
  return y;
}

Config Stepper::step(const Config& x) const {
  if (x.n != n) throw std::invalid_argument("configuration length mismatch");
  Config y(n);
  if (mask_mode) {
    y.w[0] = step_bits(x.w[0]);
    return y;
  }
  for (int v = 0; v < n; ++v) {
    int count = 0;
    for (int u : in_idx[v]) count += x.get(u);
    if (count > threshold[v]) y.set(v, true);
  }
  return y;
}

Config step(const DiGraph& g, const Config& x) { return Stepper(g).step(x); }

Config iterate(const DiGraph& g, const Config& x, std::uint64_t t) {
  Stepper s(g);
  Config y = x;
  for (std::uint64_t k = 0; k < t; ++k) y = s.step(y);
  return y;
}

Orbit orbit_fn(const Config& x0, const std::function<Config(const Config&)>& next,
               const Budget& budget, bool store) {
  Orbit o;
  if (store) {
    std::unordered_map<Config, std::uint64_t, ConfigHash> seen;
    std::vector<Config> path;
    Config x = x0;
    std::uint64_t t = 0;
    for (;;) {
      auto it = seen.find(x);
      if (it != seen.end()) {
        std::uint64_t mu = it->second;
        o.transient_length = mu;
        o.period = t - mu;
        o.transient.assign(path.begin(), path.begin() + mu);
        o.cycle.assign(path.begin() + mu, path.end());
        o.trajectory_stored = true;
        return o;
      }
      if (t >= budget.max_steps) throw BudgetExceeded("orbit step budget exceeded", t);
      seen.emplace(x, t);
      path.push_back(x);
      x = next(x);
      ++t;
    }
  }

  // Brent cycle detection: constant memory, summary only.
  std::uint64_t power = 1, lam = 1, steps = 0;
  auto advance = [&](Config& c) {
    if (steps >= budget.max_steps) throw BudgetExceeded("orbit step budget exceeded", steps);
    c = next(c);
    ++steps;
  };
  Config tortoise = x0;
  Config hare = x0;
  advance(hare);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    advance(hare);
    ++lam;
  }
  tortoise = x0;
  hare = x0;
  for (std::uint64_t k = 0; k < lam; ++k) advance(hare);
  std::uint64_t mu = 0;
  while (tortoise != hare) {
    advance(tortoise);
    advance(hare);
    ++mu;
  }
  o.period = lam;
  o.transient_length = mu;
  o.trajectory_stored = false;
  return o;
}

Orbit orbit(const DiGraph& g, const Config& x, const Budget& budget, int store_threshold) {
  Stepper s(g);
  bool store = g.vertex_count <= store_threshold;
  return orbit_fn(x, [&s](const Config& c) { return s.step(c); }, budget, store);
}

std::vector<std::uint32_t> successor_table(const DiGraph& g, const Budget& budget) {
  Stepper s(g);
  if (s.n > budget.max_n_scan || s.n > 30)
    throw BudgetExceeded("state space too large for a successor table",
                         static_cast<std::uint64_t>(s.n));
  std::uint64_t size = std::uint64_t(1) << s.n;
  std::vector<std::uint32_t> succ(size);
#ifdef _OPENMP
  if (budget.jobs > 0) omp_set_num_threads(budget.jobs);
#pragma omp parallel for schedule(static)
#endif
  for (long long v = 0; v < static_cast<long long>(size); ++v)
    succ[v] = static_cast<std::uint32_t>(s.step_bits(static_cast<std::uint64_t>(v)));
  return succ;
}

std::vector<std::uint32_t> successor_table_serial(const DiGraph& g) {
  Stepper s(g);
  if (s.n > 30)
    throw BudgetExceeded("state space too large for a successor table",
                         static_cast<std::uint64_t>(s.n));
  std::uint64_t size = std::uint64_t(1) << s.n;
  std::vector<std::uint32_t> succ(size);
  for (std::uint64_t v = 0; v < size; ++v)
    succ[v] = static_cast<std::uint32_t>(s.step_bits(v));
  return succ;
}

}  // namespace mban
