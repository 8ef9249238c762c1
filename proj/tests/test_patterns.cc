#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "mban/dct.hh"
#include "mban/dynamics.hh"
#include "mban/graph_io.hh"
#include "mban/patterns.hh"
#include "oracles.hh"

using namespace mban;

namespace {

const char* kFlip = "mban 3\n0: 2\n1: 2\n2: 0 1 2\n";

DiGraph clique_with_loops(int n) {
  DiGraph g(n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) g.in_neighbors[v].push_back(u);
  return g;
}

DiGraph rotation(int n) {
  DiGraph g(n);
  for (int v = 0; v < n; ++v) g.in_neighbors[v] = {(v + 1) % n};
  return g;
}

DiGraph communities() {
  DiGraph g(7);
  for (int v = 0; v < 3; ++v) g.in_neighbors[v] = {0, 1, 2};
  for (int v = 3; v < 6; ++v) g.in_neighbors[v] = {3, 4, 5};
  g.in_neighbors[6] = {6};
  return g;
}

// A core triangle with two silent followers: {0,1} convinces everyone.
DiGraph hub5() {
  DiGraph g(5);
  for (int v = 0; v < 5; ++v) g.in_neighbors[v] = {0, 1, 2};
  return g;
}

DiGraph random_odd_graph(std::mt19937_64& rng, int n) {
  DiGraph g(n);
  for (int v = 0; v < n; ++v) {
    int deg = 1 + 2 * static_cast<int>(rng() % ((n + 1) / 2));
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int k = 0; k < deg; ++k)
      std::swap(pool[k], pool[k + rng() % (pool.size() - k)]);
    pool.resize(deg);
    std::sort(pool.begin(), pool.end());
    g.in_neighbors[v] = pool;
  }
  return g;
}

}  // namespace

TEST_CASE("majority image of a subset") {
  DiGraph g = parse_graph(kFlip);
  CHECK(major(g, {}).empty());
  CHECK(major(g, {2}) == VertexSubset{0, 1});
  CHECK(major(g, {0, 1}) == VertexSubset{2});
  CHECK(major(g, {0, 1, 2}) == VertexSubset{0, 1, 2});

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    DiGraph h = random_odd_graph(rng, n);
    VertexSubset s;
    for (int v = 0; v < n; ++v)
      if (rng() & 1) s.push_back(v);
    CHECK(major(h, s) == oracle::major(h, s));
  }
}

TEST_CASE("leader search finds the smallest leader") {
  auto flip_leader = find_leader(parse_graph(kFlip));
  REQUIRE(flip_leader.has_value());
  CHECK(flip_leader->s == VertexSubset{2});
  CHECK(flip_leader->major_of_s == VertexSubset{0, 1});

  auto comm = find_leader(communities());
  REQUIRE(comm.has_value());
  CHECK(comm->s == VertexSubset{0, 1, 6});
  CHECK(comm->major_of_s == VertexSubset{0, 1, 2, 6});

  auto hub = find_leader(hub5());
  REQUIRE(hub.has_value());
  CHECK(hub->s == VertexSubset{0, 1});
  CHECK(hub->major_of_s == VertexSubset{0, 1, 2, 3, 4});

  CHECK_FALSE(find_leader(rotation(3)).has_value());
  CHECK_FALSE(find_leader(clique_with_loops(5)).has_value());
}

TEST_CASE("leader search matches the exhaustive reference and its serial twin") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    DiGraph g = random_odd_graph(rng, n);
    auto fast = find_leader(g);
    auto serial = find_leader_serial(g);
    auto ref = oracle::find_leader(g);
    CHECK(fast.has_value() == ref.has_value());
    CHECK(serial.has_value() == ref.has_value());
    if (fast && ref) {
      CHECK(fast->s == ref->s);
      CHECK(fast->major_of_s == ref->major_of_s);
      CHECK(serial->s == ref->s);
      CHECK(verify_certificate(g, *fast));
    }
  }
}

TEST_CASE("small self-sufficient sets") {
  auto stubborn = find_small_self_sufficient(communities());
  REQUIRE(stubborn.has_value());
  CHECK(stubborn->s == VertexSubset{6});
  CHECK(stubborn->maximal);

  auto hub = find_small_self_sufficient(hub5());
  REQUIRE(hub.has_value());
  CHECK(hub->s == VertexSubset{0, 1});
  CHECK_FALSE(hub->maximal);  // M({0,1}) is the whole vertex set

  CHECK_FALSE(find_small_self_sufficient(parse_graph(kFlip)).has_value());
  CHECK_FALSE(find_small_self_sufficient(rotation(5)).has_value());

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    DiGraph g = random_odd_graph(rng, 7);
    auto fast = find_small_self_sufficient(g);
    auto serial = find_small_self_sufficient_serial(g);
    CHECK(fast.has_value() == serial.has_value());
    if (fast && serial) {
      CHECK(fast->s == serial->s);
      CHECK(fast->maximal == serial->maximal);
      CHECK(verify_certificate(g, *fast));
    }
  }
}

TEST_CASE("maximal self-sufficient set equals the smallest non-trivial fixed point") {
  auto comm = find_maximal_self_sufficient(communities());
  REQUIRE(comm.has_value());
  CHECK(comm->s == VertexSubset{0, 1, 2});
  CHECK(comm->maximal);

  CHECK_FALSE(find_maximal_self_sufficient(parse_graph(kFlip)).has_value());
  CHECK_FALSE(find_maximal_self_sufficient(clique_with_loops(3)).has_value());

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    DiGraph g = random_odd_graph(rng, n);
    // Reference: scan fixed points in ascending configuration order.
    std::optional<VertexSubset> want;
    for (std::uint64_t v = 1; v + 1 < (std::uint64_t(1) << n) && !want; ++v) {
      Config x(n, v);
      if (oracle::step(g, x) == x) {
        VertexSubset s;
        for (int i = 0; i < n; ++i)
          if (x.get(i)) s.push_back(i);
        want = s;
      }
    }
    auto got = find_maximal_self_sufficient(g);
    CHECK(got.has_value() == want.has_value());
    if (got && want) {
      CHECK(got->s == *want);
      CHECK(got->maximal);
      CHECK(verify_certificate(g, *got));
    }
  }
}

TEST_CASE("cyclically majoring families come from limit cycles") {
  auto flip_cycle = find_ss_m_cycle(parse_graph(kFlip));
  REQUIRE(flip_cycle.has_value());
  REQUIRE(flip_cycle->subsets.size() == 2);
  CHECK(flip_cycle->subsets[0] == VertexSubset{0, 1});
  CHECK(flip_cycle->subsets[1] == VertexSubset{2});

  auto rot = find_ss_m_cycle(rotation(3));
  REQUIRE(rot.has_value());
  REQUIRE(rot->subsets.size() == 3);
  CHECK(rot->subsets[0] == VertexSubset{0});
  CHECK(rot->subsets[1] == VertexSubset{2});
  CHECK(rot->subsets[2] == VertexSubset{1});

  CHECK_FALSE(find_ss_m_cycle(clique_with_loops(5)).has_value());
  CHECK_FALSE(find_ss_m_cycle(communities()).has_value());

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    DiGraph g = random_odd_graph(rng, n);

    // Reference: smallest configuration lying on a cycle of period >= 2,
    // restricted to cycles of the minimal such period.
    std::uint64_t best_period = 0, best_start = 0;
    bool found = false;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
      auto shape = oracle::orbit(g, Config(n, v));
      if (shape.transient == 0 && shape.period >= 2) {
        if (!found || shape.period < best_period ||
            (shape.period == best_period && v < best_start)) {
          best_period = shape.period;
          best_start = v;
          found = true;
        }
      }
    }
    auto got = find_ss_m_cycle(g);
    CHECK(got.has_value() == found);
    if (got && found) {
      REQUIRE(got->subsets.size() == best_period);
      Config x(n, best_start);
      for (std::size_t i = 0; i < got->subsets.size(); ++i) {
        VertexSubset s;
        for (int b = 0; b < n; ++b)
          if (x.get(b)) s.push_back(b);
        CHECK(got->subsets[i] == s);
        x = oracle::step(g, x);
      }
      CHECK(verify_certificate(g, *got));
    }
  }
}

TEST_CASE("characterization verdict and witness priority") {
  CHECK(characterize(clique_with_loops(3)).solves);
  CHECK_FALSE(characterize(clique_with_loops(3)).witness.has_value());

  auto comm = characterize(communities());
  CHECK_FALSE(comm.solves);
  REQUIRE(comm.witness.has_value());
  auto* leader = std::get_if<LeaderCertificate>(&*comm.witness);
  REQUIRE(leader != nullptr);
  CHECK(leader->s == VertexSubset{0, 1, 6});

  auto rot = characterize(rotation(3));
  CHECK_FALSE(rot.solves);
  REQUIRE(rot.witness.has_value());
  CHECK(std::holds_alternative<MCycleCertificate>(*rot.witness));

  // The verdict must agree with the exhaustive dynamic check.
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + 2 * static_cast<int>(rng() % 2);
    DiGraph g = random_odd_graph(rng, n);
    CharacterizationVerdict cv = characterize(g);
    CHECK(cv.solves == check_dct_all(g).solves);
    if (cv.witness) CHECK(verify_certificate(g, *cv.witness));
  }
}

TEST_CASE("pattern searches respect budgets and reject even degrees") {
  CHECK_THROWS_AS(characterize(clique_with_loops(21)), BudgetExceeded);
  CHECK(characterize(clique_with_loops(19)).solves);  // 2^19 scan fits
  Budget lowered;
  lowered.max_n_scan = 10;
  CHECK_THROWS_AS(characterize(clique_with_loops(19), lowered), BudgetExceeded);

  Budget tight;
  tight.max_n_subsets = 2;
  CHECK_THROWS_AS(find_leader(communities(), tight), BudgetExceeded);
  tight = Budget{};
  tight.max_subsets = 1;
  CHECK_THROWS_AS(find_leader(communities(), tight), BudgetExceeded);

  DiGraph even(3);
  even.in_neighbors[0] = {1, 2};
  even.in_neighbors[1] = {0};
  even.in_neighbors[2] = {0};
  CHECK_THROWS_AS(characterize(even), EvenDegreeError);
}

TEST_CASE("certificate verification rejects corrupted witnesses") {
  DiGraph flip = parse_graph(kFlip);
  CHECK(verify_certificate(flip, LeaderCertificate{{2}, {0, 1}}));
  CHECK_FALSE(verify_certificate(flip, LeaderCertificate{{2}, {0, 1, 2}}));
  CHECK_FALSE(verify_certificate(flip, LeaderCertificate{{0, 1}, {2}}));  // too big / not major
  CHECK_FALSE(verify_certificate(flip, LeaderCertificate{{1, 0}, {2}}));  // unsorted

  DiGraph comm = communities();
  CHECK(verify_certificate(comm, SelfSufficientCertificate{{6}, true}));
  CHECK(verify_certificate(comm, SelfSufficientCertificate{{0, 1, 2}, true}));
  CHECK(verify_certificate(comm, SelfSufficientCertificate{{0, 1}, false}));
  CHECK_FALSE(verify_certificate(comm, SelfSufficientCertificate{{0, 1}, true}));
  CHECK_FALSE(verify_certificate(comm, SelfSufficientCertificate{{3}, false}));
  CHECK_FALSE(verify_certificate(comm, SelfSufficientCertificate{{}, false}));

  CHECK(verify_certificate(flip, MCycleCertificate{{{0, 1}, {2}}}));
  CHECK_FALSE(verify_certificate(flip, MCycleCertificate{{{2}, {0, 1, 2}}}));
  CHECK_FALSE(verify_certificate(flip, MCycleCertificate{{{0, 1}}}));          // m < 2
  CHECK_FALSE(verify_certificate(flip, MCycleCertificate{{{0, 1}, {0, 1}}}));  // repeats
}

TEST_CASE("certificate text round trip") {
  PatternCertificate leader = LeaderCertificate{{2}, {0, 1}};
  CHECK(serialize_certificate(leader) == "leader\ns: 2\nmajor: 0 1\n");
  PatternCertificate ss = SelfSufficientCertificate{{6}, true};
  CHECK(serialize_certificate(ss) == "self-sufficient\ns: 6\nmaximal: true\n");
  PatternCertificate cyc = MCycleCertificate{{{0, 1}, {2}}};
  CHECK(serialize_certificate(cyc) == "m-cycle\ns: 0 1\ns: 2\n");

  for (const auto& cert : {leader, ss, cyc}) {
    PatternCertificate back = parse_certificate(serialize_certificate(cert));
    CHECK(serialize_certificate(back) == serialize_certificate(cert));
  }

  CHECK_THROWS_AS(parse_certificate(""), ParseError);
  CHECK_THROWS_AS(parse_certificate("follower\ns: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("leader\ns: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("self-sufficient\ns: 1\nmaximal: maybe\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("m-cycle\ns: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("leader\ns: 1 x\nmajor: 0\n"), ParseError);
}
