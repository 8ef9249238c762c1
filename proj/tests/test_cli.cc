#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mban/cli.hh"
#include "mban/graph_io.hh"
#include "mban/patterns.hh"

using namespace mban;
using nlohmann::json;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

// Writes content to a unique file under the system temp directory; the file
// is removed when the object goes out of scope.
struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("mban_cli_" + std::to_string(++counter) + ".txt");
    std::ofstream f(path);
    f << content;
  }
  TempFile(const TempFile&) = delete;
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }

  std::string str() const { return path.string(); }
};

const char* kK3 = "mban 3\n0: 0 1 2\n1: 0 1 2\n2: 0 1 2\n";
const char* kRotation = "mban 3\n0: 1\n1: 2\n2: 0\n";
const char* kFlip = "mban 3\n0: 2\n1: 2\n2: 0 1 2\n";
const char* kCommunities =
    "mban 7\n0: 0 1 2\n1: 0 1 2\n2: 0 1 2\n"
    "3: 3 4 5\n4: 3 4 5\n5: 3 4 5\n6: 6\n";
const char* kSwap2 = "inputs 2\noutputs i1 i0\n";
const char* kAnd2 = "inputs 2\ngate a AND i0 i1\noutputs a\n";
const char* kSelfMap2 =
    "inputs 2\ngate g0 AND i0 i1\ngate g1 OR i0 i1\noutputs g0 g1\n";
const char* kCompile5 =
    "inputs 2\ngate g0 AND i0 i1\ngate g1 OR i0 i1\ngate g2 BUF i0\n"
    "gate g3 OR g0 g1\ngate g4 AND g1 g2\noutputs g3 g4\n";
const char* kOneEdge4 = "ugraph 4\n0 1\n";
const char* kPath4 = "ugraph 4\n0 1\n1 2\n2 3\n";

}  // namespace

TEST_CASE("cli: check-dct on the clique exits 0") {
  TempFile g(kK3);
  RunResult r = run({"check-dct", g.str()});
  CHECK(r.code == 0);
  CHECK(r.out == "solves\nchecked 4\n");
  CHECK(r.err.empty());
}

TEST_CASE("cli: characterize on the rotation prints the m-cycle witness") {
  TempFile g(kRotation);
  RunResult r = run({"characterize", g.str()});
  CHECK(r.code == 1);
  CHECK(r.out == "fails\nm-cycle\ns: 0\ns: 2\ns: 1\n");
}

TEST_CASE("cli: reduce full emits graph, labels, and seed") {
  TempFile c(kSwap2);
  RunResult r = run({"reduce", "full", c.str(), "--input", "10", "--index", "0"});
  CHECK(r.code == 0);
  CHECK(starts_with(r.out, "mban "));
  CHECK(r.out.find("\nlabels\n") != std::string::npos);
  CHECK(r.out.find("\nseed ") != std::string::npos);
  CHECK(r.out.find("meta expected_positive true") != std::string::npos);
}

TEST_CASE("cli: simulate advances a configuration") {
  TempFile g(kK3);
  CHECK(run({"simulate", g.str(), "-x", "110"}).out == "111\n");
  CHECK(run({"simulate", g.str(), "-x", "110", "-t", "5"}).out == "111\n");
  CHECK(run({"simulate", g.str(), "-x", "110"}).code == 0);
}

TEST_CASE("cli: dash reads from standard input") {
  std::istringstream feed(kK3);
  std::streambuf* saved = std::cin.rdbuf(feed.rdbuf());
  RunResult r = run({"simulate", "-", "-x", "101"});
  std::cin.rdbuf(saved);
  CHECK(r.code == 0);
  CHECK(r.out == "111\n");
}

TEST_CASE("cli: orbit prints transient, period, and the stored cycle") {
  TempFile g(kRotation);
  RunResult r = run({"orbit", g.str(), "-x", "100"});
  CHECK(r.code == 0);
  CHECK(r.out == "transient 0\nperiod 3\ncycle 100\ncycle 001\ncycle 010\n");
}

TEST_CASE("cli: check-dct-one reports a single start") {
  TempFile g(kFlip);
  RunResult bad = run({"check-dct-one", g.str(), "-x", "110"});
  CHECK(bad.code == 1);
  CHECK(bad.out == "fails\n");
  RunResult ok = run({"check-dct-one", g.str(), "-x", "111"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "solves\n");
}

TEST_CASE("cli: pattern searches print certificates and exit 1 when found") {
  TempFile flip(kFlip);
  TempFile k3(kK3);
  TempFile comm(kCommunities);
  TempFile rot(kRotation);

  RunResult r1 = run({"find-leader", flip.str()});
  CHECK(r1.code == 1);
  CHECK(r1.out == "leader\ns: 2\nmajor: 0 1\n");

  RunResult r2 = run({"find-leader", k3.str()});
  CHECK(r2.code == 0);
  CHECK(r2.out == "none\n");

  RunResult r3 = run({"find-ss", comm.str()});
  CHECK(r3.code == 1);
  CHECK(r3.out == "self-sufficient\ns: 6\nmaximal: true\n");

  RunResult r4 = run({"find-maximal-ss", comm.str()});
  CHECK(r4.code == 1);
  CHECK(r4.out == "self-sufficient\ns: 0 1 2\nmaximal: true\n");

  RunResult r5 = run({"find-cycle", rot.str()});
  CHECK(r5.code == 1);
  CHECK(r5.out == "m-cycle\ns: 0\ns: 2\ns: 1\n");

  RunResult r6 = run({"find-cycle", k3.str()});
  CHECK(r6.code == 0);
  CHECK(r6.out == "none\n");
}

TEST_CASE("cli: emitted certificates re-verify against the library") {
  TempFile flip(kFlip);
  RunResult leader = run({"find-leader", flip.str()});
  REQUIRE(leader.code == 1);
  CHECK(verify_certificate(parse_graph(kFlip), parse_certificate(leader.out)));

  TempFile rot(kRotation);
  RunResult ch = run({"characterize", rot.str()});
  REQUIRE(ch.code == 1);
  REQUIRE(starts_with(ch.out, "fails\n"));
  PatternCertificate cert = parse_certificate(ch.out.substr(6));
  CHECK(verify_certificate(parse_graph(kRotation), cert));
}

TEST_CASE("cli: structured output carries the same fields") {
  TempFile g(kK3);
  RunResult r = run({"--json", "check-dct", g.str()});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["solves"] == true);
  CHECK(j["configurations_checked"] == 4);

  TempFile flip(kFlip);
  RunResult rf = run({"find-leader", flip.str(), "--json"});
  CHECK(rf.code == 1);
  json jf = json::parse(rf.out);
  CHECK(jf["found"] == true);
  CHECK(jf["certificate"]["kind"] == "leader");
  CHECK(jf["certificate"]["s"] == json::array({2}));
  CHECK(jf["certificate"]["major"] == json::array({0, 1}));

  RunResult rs = run({"--json", "simulate", g.str(), "-x", "110"});
  CHECK(json::parse(rs.out)["result"] == "111");

  RunResult rn = run({"--json", "find-leader", g.str()});
  CHECK(rn.code == 0);
  CHECK(json::parse(rn.out)["found"] == false);
}

TEST_CASE("cli: classification and characterization agree on every 3-vertex network") {
  const std::vector<std::string> odd = {"0", "1", "2", "0 1 2"};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        std::string text = "mban 3\n0: " + odd[a] + "\n1: " + odd[b] +
                           "\n2: " + odd[c] + "\n";
        TempFile g(text);
        int dct = run({"check-dct", g.str()}).code;
        int ch = run({"characterize", g.str()}).code;
        CHECK(dct == ch);
        CHECK((dct == 0 || dct == 1));
      }
}

TEST_CASE("cli: circuit tools evaluate, iterate, dualize, and layer") {
  TempFile sw(kSwap2);
  TempFile a2(kAnd2);

  CHECK(run({"circuit", "eval", sw.str(), "-x", "10"}).out == "01\n");
  CHECK(run({"circuit", "iterate", sw.str(), "-x", "10", "-t", "2"}).out ==
        "10\n");

  RunResult dual = run({"circuit", "dual", a2.str()});
  CHECK(dual.code == 0);
  CHECK(dual.out == "inputs 2\ngate a OR i0 i1\noutputs a\n");

  RunResult layer = run({"circuit", "layerize", a2.str()});
  CHECK(layer.code == 0);
  CHECK(layer.out == "# depth 1\ninputs 2\ngate a AND i0 i1\noutputs a\n");

  RunResult mono = run({"circuit", "monotonize", sw.str()});
  CHECK(mono.code == 0);
  CHECK(starts_with(mono.out,
                    "# depth 6\n# rail_depth 3\n# test_root_depth 2\ninputs 4\n"));

  RunResult wrap = run({"circuit", "wrap", sw.str(), "-x", "10", "-i", "0"});
  CHECK(wrap.code == 0);
  CHECK(starts_with(wrap.out, "inputs 4\n"));
}

TEST_CASE("cli: reduction generators emit the expected instances") {
  TempFile self_map(kSelfMap2);
  TempFile clique(kOneEdge4);
  TempFile vc(kPath4);
  TempFile comp(kCompile5);

  RunResult r1 = run({"reduce", "dctp-one", self_map.str(), "-x", "10", "-i", "0"});
  CHECK(r1.code == 0);
  CHECK(starts_with(r1.out, "mban 11\n"));
  CHECK(r1.out.find("seed 10000111111\n") != std::string::npos);
  CHECK(r1.out.find("meta expected_positive false") != std::string::npos);

  RunResult r2 = run({"reduce", "clique", clique.str()});
  CHECK(r2.code == 0);
  CHECK(starts_with(r2.out, "mban 21\n"));
  CHECK(r2.out.find("\nseed ") == std::string::npos);

  RunResult r3 = run({"reduce", "vc", vc.str()});
  CHECK(r3.code == 0);
  CHECK(starts_with(r3.out, "mban 17\n"));
  CHECK(r3.out.find("meta cover_bound 2") != std::string::npos);

  RunResult r4 = run({"reduce", "compile", comp.str()});
  CHECK(r4.code == 0);
  CHECK(starts_with(r4.out, "mban 15\n"));

  TempFile inverter("inputs 1\ngate a NOT i0\noutputs a\n");
  RunResult r5 = run({"reduce", "compile", inverter.str()});
  CHECK(r5.code == 2);
  CHECK(!r5.err.empty());
}

TEST_CASE("cli: reduction output is deterministic") {
  TempFile vc(kPath4);
  RunResult first = run({"reduce", "vc", vc.str()});
  RunResult second = run({"reduce", "vc", vc.str()});
  CHECK(first.out == second.out);

  RunResult v1 = run({"verify", "dual", "--circuits", "3", "--seed", "9"});
  RunResult v2 = run({"verify", "dual", "--circuits", "3", "--seed", "9"});
  CHECK(v1.code == 0);
  CHECK(v1.out == v2.out);
}

TEST_CASE("cli: verify consensus passes") {
  RunResult r = run({"verify", "consensus"});
  CHECK(r.code == 0);
  CHECK(starts_with(r.out, "PASS "));

  RunResult rj = run({"--json", "verify", "consensus"});
  json j = json::parse(rj.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 1);
  CHECK(j[0]["pass"] == true);
}

TEST_CASE("cli: usage and parse problems exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"verify", "bogus"}).code == 2);

  RunResult missing = run({"check-dct", "/nonexistent/graph.mban"});
  CHECK(missing.code == 2);
  CHECK(!missing.err.empty());

  TempFile bad("mban x\n");
  RunResult parse = run({"check-dct", bad.str()});
  CHECK(parse.code == 2);
  CHECK(!parse.err.empty());

  TempFile even("mban 2\n0: 0 1\n1: 0 1\n");
  RunResult degree = run({"simulate", even.str(), "-x", "10"});
  CHECK(degree.code == 2);
  CHECK(!degree.err.empty());
}

TEST_CASE("cli: budget caps exit 3") {
  TempFile g(kK3);
  RunResult r = run({"find-leader", g.str(), "--max-n", "2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("budget exceeded") != std::string::npos);

  RunResult r2 = run({"check-dct", g.str(), "--max-n", "2", "--max-subsets", "2"});
  CHECK(r2.code == 3);
}

TEST_CASE("cli: help lists the subcommands") {
  RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
  CHECK(r.out.find("characterize") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(r.err.empty());
}
