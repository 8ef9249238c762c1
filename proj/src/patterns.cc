#include "mban/patterns.hh"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "mban/dynamics.hh"
#include "mban/graph_io.hh"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mban {

namespace {

// Per-vertex in-neighbor masks for fast subset-level major; unlike Stepper
// this accepts any in-degrees (the set operator is defined for all graphs).
struct MajorMasks {
  int n;
  std::vector<std::uint64_t> mask;
  std::vector<int> threshold;

  explicit MajorMasks(const DiGraph& g) : n(g.vertex_count), mask(n, 0), threshold(n, 0) {
    check_digraph(g);
    if (n > 64) throw BudgetExceeded("subset search limited to 64 vertices", 0);
    for (int v = 0; v < n; ++v) {
      for (int u : g.in_neighbors[v]) mask[v] |= std::uint64_t(1) << u;
      threshold[v] = g.in_degree(v) / 2;
    }
  }

  std::uint64_t major_bits(std::uint64_t s) const {
    std::uint64_t m = 0;
    for (int v = 0; v < n; ++v)
      if (std::popcount(s & mask[v]) > threshold[v]) m |= std::uint64_t(1) << v;
    return m;
  }
};

std::uint64_t subset_to_mask(const VertexSubset& s) {
  std::uint64_t m = 0;
  for (int v : s) m |= std::uint64_t(1) << v;
  return m;
}

VertexSubset mask_to_subset(std::uint64_t m, int n) {
  VertexSubset s;
  for (int v = 0; v < n; ++v)
    if ((m >> v) & 1) s.push_back(v);
  return s;
}

// Binomial coefficients up to 64; saturating at uint64 max is unnecessary
// since C(64,32) < 2^63.
std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// r-th (0-based) k-combination of [0,n) in lexicographic ascending-list order.
std::vector<int> unrank_combination(int n, int k, std::uint64_t r) {
  std::vector<int> c;
  c.reserve(k);
  int next = 0;
  for (int remaining = k; remaining > 0; --remaining) {
    for (int a = next;; ++a) {
      std::uint64_t block = binom(n - 1 - a, remaining - 1);
      if (r < block) {
        c.push_back(a);
        next = a + 1;
        break;
      }
      r -= block;
    }
  }
  return c;
}

// Advance an ascending index vector to the next combination; false at the end.
bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t indices_to_mask(const std::vector<int>& c) {
  std::uint64_t m = 0;
  for (int v : c) m |= std::uint64_t(1) << v;
  return m;
}

// Subsets of size k, lexicographic order, in [from, to) by rank; returns the
// rank of the first subset accepted by pred, or UINT64_MAX.
template <typename Pred>
std::uint64_t scan_range(int n, int k, std::uint64_t from, std::uint64_t to, Pred pred) {
  std::vector<int> c = unrank_combination(n, k, from);
  for (std::uint64_t r = from; r < to; ++r) {
    if (pred(indices_to_mask(c))) return r;
    if (r + 1 < to) next_combination(c, n);
  }
  return ~std::uint64_t(0);
}

// Minimum-size, then lexicographically-first subset mask of size < n/2
// accepted by pred. Sizes are scanned in order; within a size the rank space
// is chunked across threads when parallel is set.
template <typename Pred>
std::uint64_t search_small_subsets(int n, const Budget& budget, bool parallel, Pred pred) {
  if (n > budget.max_n_subsets)
    throw BudgetExceeded("vertex count exceeds the subset-search cap", 0);
  std::uint64_t examined = 0;
  int max_k = (n - 1) / 2;  // |S| < n/2
  for (int k = 1; k <= max_k; ++k) {
    std::uint64_t total = binom(n, k);
    if (examined + total > budget.max_subsets)
      throw BudgetExceeded("subset enumeration budget exceeded", examined);
    examined += total;

    const std::uint64_t chunk = 1 << 14;
    if (!parallel || total <= chunk) {
      std::uint64_t hit = scan_range(n, k, 0, total, pred);
      if (hit != ~std::uint64_t(0)) return indices_to_mask(unrank_combination(n, k, hit));
      continue;
    }

    std::uint64_t nchunks = (total + chunk - 1) / chunk;
    std::atomic<std::uint64_t> best{~std::uint64_t(0)};
#ifdef _OPENMP
    if (budget.jobs > 0) omp_set_num_threads(budget.jobs);
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long ci = 0; ci < static_cast<long long>(nchunks); ++ci) {
      std::uint64_t from = static_cast<std::uint64_t>(ci) * chunk;
      if (from >= best.load(std::memory_order_relaxed)) continue;
      std::uint64_t to = std::min(from + chunk, total);
      std::uint64_t hit = scan_range(n, k, from, to, pred);
      if (hit != ~std::uint64_t(0)) {
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (hit < cur && !best.compare_exchange_weak(cur, hit)) {
        }
      }
    }
    std::uint64_t hit = best.load();
    if (hit != ~std::uint64_t(0)) return indices_to_mask(unrank_combination(n, k, hit));
  }
  return 0;  // 0 is never a valid hit (k >= 1), doubles as "none"
}

std::optional<LeaderCertificate> leader_impl(const DiGraph& g, const Budget& budget,
                                             bool parallel) {
  MajorMasks mm(g);
  int n = mm.n;
  if (n == 0) return std::nullopt;
  auto is_leader = [&](std::uint64_t s) {
    return 2 * std::popcount(mm.major_bits(s)) > n;  // |s| < n/2 by construction
  };
  std::uint64_t hit = search_small_subsets(n, budget, parallel, is_leader);
  if (hit == 0) return std::nullopt;
  LeaderCertificate cert;
  cert.s = mask_to_subset(hit, n);
  cert.major_of_s = mask_to_subset(mm.major_bits(hit), n);
  return cert;
}

std::optional<SelfSufficientCertificate> small_ss_impl(const DiGraph& g,
                                                       const Budget& budget,
                                                       bool parallel) {
  MajorMasks mm(g);
  int n = mm.n;
  if (n == 0) return std::nullopt;
  auto is_ss = [&](std::uint64_t s) { return (s & ~mm.major_bits(s)) == 0; };
  std::uint64_t hit = search_small_subsets(n, budget, parallel, is_ss);
  if (hit == 0) return std::nullopt;
  SelfSufficientCertificate cert;
  cert.s = mask_to_subset(hit, n);
  cert.maximal = (mm.major_bits(hit) == hit);
  return cert;
}

void subset_line(std::ostream& out, const char* key, const VertexSubset& s) {
  out << key << ":";
  for (int v : s) out << " " << v;
  out << "\n";
}

VertexSubset parse_subset_line(const std::string& line, const std::string& key, int lineno) {
  std::istringstream ls(line);
  std::string head;
  ls >> head;
  if (head != key + ":")
    throw ParseError(lineno, "expected '" + key + ":' line");
  VertexSubset s;
  int v;
  while (ls >> v) {
    if (v < 0 || (!s.empty() && v <= s.back()))
      throw ParseError(lineno, "subset ids must be non-negative and strictly ascending");
    s.push_back(v);
  }
  if (!ls.eof()) throw ParseError(lineno, "bad token in subset line");
  return s;
}

}  // namespace

VertexSubset major(const DiGraph& g, const VertexSubset& s) {
  check_digraph(g);
  std::vector<char> in_s(g.vertex_count, 0);
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count)
      throw std::invalid_argument("subset member out of range");
    in_s[v] = 1;
  }
  VertexSubset m;
  for (int v = 0; v < g.vertex_count; ++v) {
    int count = 0;
    for (int u : g.in_neighbors[v]) count += in_s[u];
    if (2 * count > g.in_degree(v)) m.push_back(v);
  }
  return m;
}

std::optional<LeaderCertificate> find_leader(const DiGraph& g, const Budget& budget) {
  return leader_impl(g, budget, true);
}

std::optional<LeaderCertificate> find_leader_serial(const DiGraph& g, const Budget& budget) {
  return leader_impl(g, budget, false);
}

std::optional<SelfSufficientCertificate> find_small_self_sufficient(const DiGraph& g,
                                                                    const Budget& budget) {
  return small_ss_impl(g, budget, true);
}

std::optional<SelfSufficientCertificate> find_small_self_sufficient_serial(
    const DiGraph& g, const Budget& budget) {
  return small_ss_impl(g, budget, false);
}

std::optional<SelfSufficientCertificate> find_maximal_self_sufficient(const DiGraph& g,
                                                                      const Budget& budget) {
  Stepper s(g);
  int n = s.n;
  if (n > std::min(budget.max_n_scan, 63))
    throw BudgetExceeded("state space too large for a fixed-point scan", 0);
  if (n <= 1) return std::nullopt;
  std::uint64_t size = std::uint64_t(1) << n;

  // Ascending block scan with a parallel min-reduction inside each block, so
  // the first non-trivial fixed point can stop the search early.
  const std::uint64_t block = std::uint64_t(1) << 16;
  std::uint64_t found = ~std::uint64_t(0);
#ifdef _OPENMP
  if (budget.jobs > 0) omp_set_num_threads(budget.jobs);
#endif
  for (std::uint64_t lo = 1; lo < size - 1 && found == ~std::uint64_t(0); lo += block) {
    std::uint64_t hi = std::min(lo + block, size - 1);
    std::uint64_t best = ~std::uint64_t(0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
    for (long long v = static_cast<long long>(lo); v < static_cast<long long>(hi); ++v) {
      std::uint64_t x = static_cast<std::uint64_t>(v);
      if (s.step_bits(x) == x && x < best) best = x;
    }
    found = best;
  }
  if (found == ~std::uint64_t(0)) return std::nullopt;
  SelfSufficientCertificate cert;
  cert.s = mask_to_subset(found, n);
  cert.maximal = true;
  return cert;
}

std::optional<MCycleCertificate> find_ss_m_cycle(const DiGraph& g, const Budget& budget) {
  Stepper stepper(g);
  int n = stepper.n;
  if (n > std::min(budget.max_n_scan, 20))
    throw BudgetExceeded("state space too large for a limit-cycle scan", 0);
  auto succ = successor_table(g, budget);
  std::uint64_t size = succ.size();

  // Functional-graph sweep: record (period, min value) of each fresh cycle.
  std::vector<std::uint8_t> state(size, 0);
  std::uint64_t best_period = 0, best_min = 0;
  std::vector<std::uint32_t> path;
  for (std::uint64_t v0 = 0; v0 < size; ++v0) {
    if (state[v0]) continue;
    path.clear();
    std::uint32_t u = static_cast<std::uint32_t>(v0);
    while (state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = succ[u];
    }
    if (state[u] == 1) {  // fresh cycle through u
      std::uint64_t period = 1, min_v = u;
      for (std::uint32_t w = succ[u]; w != u; w = succ[w]) {
        ++period;
        if (w < min_v) min_v = w;
      }
      if (period >= 2 && (best_period == 0 || period < best_period ||
                          (period == best_period && min_v < best_min))) {
        best_period = period;
        best_min = min_v;
      }
    }
    for (std::uint32_t w : path) state[w] = 2;
  }
  if (best_period == 0) return std::nullopt;
  MCycleCertificate cert;
  std::uint32_t w = static_cast<std::uint32_t>(best_min);
  for (std::uint64_t i = 0; i < best_period; ++i) {
    cert.subsets.push_back(mask_to_subset(w, n));
    w = succ[w];
  }
  return cert;
}

CharacterizationVerdict characterize(const DiGraph& g, const Budget& budget) {
  if (g.vertex_count % 2 == 0)
    throw std::invalid_argument(
        "the characterization applies to odd vertex counts only");
  std::vector<int> offenders;
  for (int v = 0; v < g.vertex_count; ++v)
    if (g.in_degree(v) % 2 == 0) offenders.push_back(v);
  if (!offenders.empty()) throw EvenDegreeError(std::move(offenders));
  CharacterizationVerdict verdict;
  if (auto leader = find_leader(g, budget)) {
    verdict.solves = false;
    verdict.witness = *leader;
    return verdict;
  }
  if (auto ss = find_maximal_self_sufficient(g, budget)) {
    verdict.solves = false;
    verdict.witness = *ss;
    return verdict;
  }
  if (auto cyc = find_ss_m_cycle(g, budget)) {
    verdict.solves = false;
    verdict.witness = *cyc;
    return verdict;
  }
  verdict.solves = true;
  return verdict;
}

bool verify_certificate(const DiGraph& g, const PatternCertificate& cert) {
  int n = g.vertex_count;
  auto well_formed = [&](const VertexSubset& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= n) return false;
      if (i > 0 && s[i] <= s[i - 1]) return false;
    }
    return true;
  };
  if (const auto* leader = std::get_if<LeaderCertificate>(&cert)) {
    if (!well_formed(leader->s) || !well_formed(leader->major_of_s)) return false;
    if (2 * static_cast<int>(leader->s.size()) >= n) return false;
    if (2 * static_cast<int>(leader->major_of_s.size()) <= n) return false;
    return major(g, leader->s) == leader->major_of_s;
  }
  if (const auto* ss = std::get_if<SelfSufficientCertificate>(&cert)) {
    if (!well_formed(ss->s) || ss->s.empty()) return false;
    VertexSubset m = major(g, ss->s);
    if (!std::includes(m.begin(), m.end(), ss->s.begin(), ss->s.end())) return false;
    if (ss->maximal && (m != ss->s || static_cast<int>(ss->s.size()) == n)) return false;
    return true;
  }
  const auto& cyc = std::get<MCycleCertificate>(cert);
  std::size_t m = cyc.subsets.size();
  if (m < 2) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (!well_formed(cyc.subsets[i])) return false;
    if (static_cast<int>(cyc.subsets[i].size()) == n) return false;
    for (std::size_t j = i + 1; j < m; ++j)
      if (cyc.subsets[i] == cyc.subsets[j]) return false;
    if (major(g, cyc.subsets[i]) != cyc.subsets[(i + 1) % m]) return false;
  }
  return true;
}

std::string serialize_certificate(const PatternCertificate& cert) {
  std::ostringstream out;
  if (const auto* leader = std::get_if<LeaderCertificate>(&cert)) {
    out << "leader\n";
    subset_line(out, "s", leader->s);
    subset_line(out, "major", leader->major_of_s);
  } else if (const auto* ss = std::get_if<SelfSufficientCertificate>(&cert)) {
    out << "self-sufficient\n";
    subset_line(out, "s", ss->s);
    out << "maximal: " << (ss->maximal ? "true" : "false") << "\n";
  } else {
    const auto& cyc = std::get<MCycleCertificate>(cert);
    out << "m-cycle\n";
    for (const auto& s : cyc.subsets) subset_line(out, "s", s);
  }
  return out.str();
}

PatternCertificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(b, e - b + 1));
  }
  if (lines.empty()) throw ParseError(0, "empty certificate");
  const std::string& kind = lines[0];
  if (kind == "leader") {
    if (lines.size() != 3) throw ParseError(0, "leader certificate needs s and major lines");
    LeaderCertificate cert;
    cert.s = parse_subset_line(lines[1], "s", 2);
    cert.major_of_s = parse_subset_line(lines[2], "major", 3);
    return cert;
  }
  if (kind == "self-sufficient") {
    if (lines.size() != 3)
      throw ParseError(0, "self-sufficient certificate needs s and maximal lines");
    SelfSufficientCertificate cert;
    cert.s = parse_subset_line(lines[1], "s", 2);
    std::istringstream ls(lines[2]);
    std::string head, value;
    ls >> head >> value;
    if (head != "maximal:" || (value != "true" && value != "false"))
      throw ParseError(3, "expected 'maximal: true|false'");
    cert.maximal = (value == "true");
    return cert;
  }
  if (kind == "m-cycle") {
    MCycleCertificate cert;
    for (std::size_t i = 1; i < lines.size(); ++i)
      cert.subsets.push_back(parse_subset_line(lines[i], "s", static_cast<int>(i + 1)));
    if (cert.subsets.size() < 2) throw ParseError(0, "m-cycle needs at least two subsets");
    return cert;
  }
  throw ParseError(1, "unknown certificate kind '" + kind + "'");
}

}  // namespace mban
