#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mban/budget.hh"
#include "mban/graph.hh"

namespace mban {

// Duplicate-free ascending list of vertex ids.
using VertexSubset = std::vector<int>;

// M(S): vertices with a strict majority of in-neighbors inside s.
VertexSubset major(const DiGraph& g, const VertexSubset& s);

struct LeaderCertificate {
  VertexSubset s;
  VertexSubset major_of_s;
};

struct SelfSufficientCertificate {
  VertexSubset s;
  bool maximal = false;
};

struct MCycleCertificate {
  std::vector<VertexSubset> subsets;  // m >= 2, cyclically majoring
};

using PatternCertificate =
    std::variant<LeaderCertificate, SelfSufficientCertificate, MCycleCertificate>;

struct CharacterizationVerdict {
  bool solves = false;
  std::optional<PatternCertificate> witness;
};

// Minimum-size leader (|S| < n/2, |M(S)| > n/2), ties broken
// lexicographically; searched by ascending subset size. The plain entry point
// partitions each size class across threads; the _serial twin is the
// reference implementation (identical results, kept for tests and benchmarks).
std::optional<LeaderCertificate> find_leader(const DiGraph& g, const Budget& budget = {});
std::optional<LeaderCertificate> find_leader_serial(const DiGraph& g,
                                                    const Budget& budget = {});

// Minimum-size non-empty S with |S| < n/2 and S ⊆ M(S).
std::optional<SelfSufficientCertificate> find_small_self_sufficient(
    const DiGraph& g, const Budget& budget = {});
std::optional<SelfSufficientCertificate> find_small_self_sufficient_serial(
    const DiGraph& g, const Budget& budget = {});

// Non-empty S ⊊ V with M(S) = S, found as the 1-set of the smallest-valued
// non-trivial fixed point (equivalent by the fixed-point lemma).
std::optional<SelfSufficientCertificate> find_maximal_self_sufficient(
    const DiGraph& g, const Budget& budget = {});

// The 1-sets along a limit cycle of minimal period >= 2; among equal periods
// the cycle through the smallest configuration, rotated to start there.
std::optional<MCycleCertificate> find_ss_m_cycle(const DiGraph& g,
                                                 const Budget& budget = {});

// Decision by pattern search: solves iff no leader, no non-trivial maximal
// self-sufficient subset, no self-sufficient m-cycle. Witness priority
// follows that fixed order.
CharacterizationVerdict characterize(const DiGraph& g, const Budget& budget = {});

// Recompute the defining conditions of a certificate against g.
bool verify_certificate(const DiGraph& g, const PatternCertificate& cert);

// Text form: kind tag line, then each subset on its own line as ascending ids.
std::string serialize_certificate(const PatternCertificate& cert);
PatternCertificate parse_certificate(const std::string& text);

}  // namespace mban
