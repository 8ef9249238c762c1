// Timing comparison between the OpenMP kernels and their serial reference
// implementations. Results must match exactly; the table reports speedup.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mban/dynamics.hh"
#include "mban/graph.hh"
#include "mban/patterns.hh"

using namespace mban;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

DiGraph random_network(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DiGraph g(n);
  std::vector<int> ids(n);
  for (int v = 0; v < n; ++v) {
    int deg = 1 + 2 * static_cast<int>(rng() % ((n + 1) / 2));
    std::iota(ids.begin(), ids.end(), 0);
    for (int k = 0; k < deg; ++k) std::swap(ids[k], ids[k + rng() % (n - k)]);
    g.in_neighbors[v].assign(ids.begin(), ids.begin() + deg);
    std::sort(g.in_neighbors[v].begin(), g.in_neighbors[v].end());
  }
  return g;
}

// Full clique with loops: no leader and no small self-sufficient subset, so
// the searches must exhaust every size class.
DiGraph worst_case_clique(int n) {
  DiGraph g(n);
  for (int v = 0; v < n; ++v) {
    g.in_neighbors[v].resize(n);
    std::iota(g.in_neighbors[v].begin(), g.in_neighbors[v].end(), 0);
  }
  return g;
}

void report(const char* kernel, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx   %s\n", kernel, serial_ms,
              parallel_ms, serial_ms / parallel_ms, match ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int table_n = 20;
  int search_n = 25;
  if (argc > 1) table_n = std::min(26, std::max(4, std::atoi(argv[1])));
  if (argc > 2) search_n = std::min(29, std::max(5, std::atoi(argv[2])));

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  Budget budget;
  budget.max_n_scan = 30;
  budget.max_n_subsets = 30;
  budget.max_subsets = std::uint64_t(1) << 33;

  {
    DiGraph g = random_network(table_n, 42);
    auto t0 = std::chrono::steady_clock::now();
    auto serial = successor_table_serial(g);
    double s_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = successor_table(g, budget);
    double p_ms = ms_since(t0);
    report(("successor-table n=" + std::to_string(table_n)).c_str(), s_ms, p_ms,
           serial == parallel);
  }
  {
    DiGraph g = worst_case_clique(search_n);
    auto t0 = std::chrono::steady_clock::now();
    auto serial = find_leader_serial(g, budget);
    double s_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = find_leader(g, budget);
    double p_ms = ms_since(t0);
    report(("leader-search n=" + std::to_string(search_n)).c_str(), s_ms, p_ms,
           serial.has_value() == parallel.has_value());
  }
  {
    DiGraph g = worst_case_clique(search_n);
    auto t0 = std::chrono::steady_clock::now();
    auto serial = find_small_self_sufficient_serial(g, budget);
    double s_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = find_small_self_sufficient(g, budget);
    double p_ms = ms_since(t0);
    report(("subset-search n=" + std::to_string(search_n)).c_str(), s_ms, p_ms,
           serial.has_value() == parallel.has_value());
  }
  return 0;
}
