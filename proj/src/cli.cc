#include "mban/cli.hh"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mban/circuit.hh"
#include "mban/circuit_io.hh"
#include "mban/dct.hh"
#include "mban/dynamics.hh"
#include "mban/graph_io.hh"
#include "mban/patterns.hh"
#include "mban/reduce.hh"
#include "mban/undirected.hh"
#include "mban/verify.hh"

namespace mban {

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json cert_to_json(const PatternCertificate& cert) {
  json j;
  if (const auto* leader = std::get_if<LeaderCertificate>(&cert)) {
    j["kind"] = "leader";
    j["s"] = leader->s;
    j["major"] = leader->major_of_s;
  } else if (const auto* ss = std::get_if<SelfSufficientCertificate>(&cert)) {
    j["kind"] = "self-sufficient";
    j["s"] = ss->s;
    j["maximal"] = ss->maximal;
  } else {
    const auto& cyc = std::get<MCycleCertificate>(cert);
    j["kind"] = "m-cycle";
    j["subsets"] = cyc.subsets;
  }
  return j;
}

json reduction_to_json(const ReductionOutput& r) {
  json j;
  j["graph"] = serialize_graph(r.graph);
  j["labels"] = r.labels;
  if (r.seed_config) j["seed"] = r.seed_config->to_string();
  json meta = json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j;
}

void emit(std::ostream& out, bool as_json, const json& j, const std::string& text) {
  if (as_json)
    out << j.dump() << "\n";
  else
    out << text;
}

struct Args {
  std::string file;
  std::string input;
  std::string index_unused;
  std::uint64_t steps = 1;
  int index = 0;
  std::string suite;
  int trials = -1;
  int circuits = -1;
  bool large = false;
};

int run_pattern_search(const DiGraph& g, const std::string& which,
                       const Budget& budget, bool as_json, std::ostream& out) {
  std::optional<PatternCertificate> cert;
  if (which == "leader") {
    if (auto c = find_leader(g, budget)) cert = *c;
  } else if (which == "small") {
    if (auto c = find_small_self_sufficient(g, budget)) cert = *c;
  } else if (which == "maximal") {
    if (auto c = find_maximal_self_sufficient(g, budget)) cert = *c;
  } else {
    if (auto c = find_ss_m_cycle(g, budget)) cert = *c;
  }
  if (!cert) {
    emit(out, as_json, json{{"found", false}}, "none\n");
    return 0;
  }
  emit(out, as_json, json{{"found", true}, {"certificate", cert_to_json(*cert)}},
       serialize_certificate(*cert));
  return 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Majority automata networks: simulation, density classification, "
               "forbidden-pattern search, and hardness-instance generators"};
  app.fallthrough();
  app.require_subcommand(1);

  Budget budget;
  bool as_json = false;
  std::uint64_t seed = 1;
  int max_n = -1;
  app.add_flag("--json", as_json, "structured output, one record per line");
  app.add_option("--seed", seed, "seed for randomized verification suites");
  app.add_option("--max-n", max_n, "cap full scans and subset searches at this size");
  app.add_option("--max-steps", budget.max_steps, "single-orbit step cap");
  app.add_option("--max-subsets", budget.max_subsets, "subset enumeration cap");
  app.add_option("--jobs", budget.jobs, "worker threads (0 = all)");

  Args a;

  auto* sim = app.add_subcommand("simulate", "advance a configuration t steps");
  sim->add_option("graph", a.file, "network file ('-' for stdin)")->required();
  sim->add_option("-x,--input", a.input, "start configuration")->required();
  sim->add_option("-t,--steps", a.steps, "step count (default 1)");

  auto* orb = app.add_subcommand("orbit", "transient and cycle of one trajectory");
  orb->add_option("graph", a.file)->required();
  orb->add_option("-x,--input", a.input)->required();

  auto* dct = app.add_subcommand("check-dct", "decide density classification from every start");
  dct->add_option("graph", a.file)->required();

  auto* dct1 = app.add_subcommand("check-dct-one", "density classification from one start");
  dct1->add_option("graph", a.file)->required();
  dct1->add_option("-x,--input", a.input)->required();

  auto* fl = app.add_subcommand("find-leader", "minority subset with majority image");
  fl->add_option("graph", a.file)->required();
  auto* fs = app.add_subcommand("find-ss", "small self-sufficient subset");
  fs->add_option("graph", a.file)->required();
  auto* fm = app.add_subcommand("find-maximal-ss", "proper subset fixed by the majority image");
  fm->add_option("graph", a.file)->required();
  auto* fc = app.add_subcommand("find-cycle", "subsets cyclically mapped onto each other");
  fc->add_option("graph", a.file)->required();

  auto* ch = app.add_subcommand("characterize", "decide via the three forbidden patterns");
  ch->add_option("graph", a.file)->required();

  auto* circ = app.add_subcommand("circuit", "combinational circuit tools");
  circ->require_subcommand(1);
  auto* c_eval = circ->add_subcommand("eval", "evaluate once");
  c_eval->add_option("circuit", a.file)->required();
  c_eval->add_option("-x,--input", a.input)->required();
  auto* c_iter = circ->add_subcommand("iterate", "apply a self-map circuit t times");
  c_iter->add_option("circuit", a.file)->required();
  c_iter->add_option("-x,--input", a.input)->required();
  c_iter->add_option("-t,--steps", a.steps);
  auto* c_dual = circ->add_subcommand("dual", "swap AND and OR gates");
  c_dual->add_option("circuit", a.file)->required();
  auto* c_mono = circ->add_subcommand("monotonize", "doubled-rail monotone equivalent");
  c_mono->add_option("circuit", a.file)->required();
  auto* c_wrap = circ->add_subcommand("wrap", "attach the reset counter");
  c_wrap->add_option("circuit", a.file)->required();
  c_wrap->add_option("-x,--input", a.input)->required();
  c_wrap->add_option("-i,--index", a.index)->required();
  auto* c_layer = circ->add_subcommand("layerize", "strict layering by buffer padding");
  c_layer->add_option("circuit", a.file)->required();

  auto* red = app.add_subcommand("reduce", "hardness-instance generators");
  red->require_subcommand(1);
  auto* r_dctp = red->add_subcommand("dctp-one", "circuit iteration as one-start classification");
  r_dctp->add_option("circuit", a.file)->required();
  r_dctp->add_option("-x,--input", a.input)->required();
  r_dctp->add_option("-i,--index", a.index)->required();
  auto* r_clique = red->add_subcommand("clique", "half-clique as self-sufficiency");
  r_clique->add_option("graph", a.file)->required();
  auto* r_vc = red->add_subcommand("vc", "vertex cover as leadership");
  r_vc->add_option("graph", a.file)->required();
  auto* r_comp = red->add_subcommand("compile", "monotone circuit to majority network");
  r_comp->add_option("circuit", a.file)->required();
  auto* r_full = red->add_subcommand("full", "counter, doubling, and compilation combined");
  r_full->add_option("circuit", a.file)->required();
  r_full->add_option("-x,--input", a.input)->required();
  r_full->add_option("-i,--index", a.index)->required();

  auto* ver = app.add_subcommand("verify", "run a consistency suite");
  ver->add_option("suite", a.suite,
                  "characterization|consensus|lemmas|invariants|dual|rails|"
                  "counter|compiler|reductions|structure|all")
      ->required()
      ->check(CLI::IsMember({"characterization", "consensus", "lemmas",
                             "invariants", "dual", "rails", "counter",
                             "compiler", "reductions", "structure", "all"}));
  ver->add_option("--trials", a.trials, "random trial count where applicable");
  ver->add_option("--circuits", a.circuits, "random circuit count where applicable");
  ver->add_flag("--large", a.large, "include the expensive negative-instance scan");

  std::vector<const char*> argv;
  argv.push_back("mban");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (max_n >= 0) {
    budget.max_n_scan = max_n;
    budget.max_n_subsets = max_n;
  }

  try {
    if (sim->parsed()) {
      DiGraph g = parse_graph(read_input(a.file));
      Config x = Config::from_string(a.input);
      Config y = iterate(g, x, a.steps);
      emit(out, as_json, json{{"result", y.to_string()}}, y.to_string() + "\n");
      return 0;
    }
    if (orb->parsed()) {
      DiGraph g = parse_graph(read_input(a.file));
      Orbit o = orbit(g, Config::from_string(a.input), budget);
      json j{{"transient_length", o.transient_length}, {"period", o.period}};
      std::ostringstream text;
      text << "transient " << o.transient_length << "\n"
           << "period " << o.period << "\n";
      if (o.trajectory_stored) {
        json cyc = json::array();
        for (const Config& c : o.cycle) {
          cyc.push_back(c.to_string());
          text << "cycle " << c.to_string() << "\n";
        }
        j["cycle"] = cyc;
      }
      emit(out, as_json, j, text.str());
      return 0;
    }
    if (dct->parsed()) {
      DiGraph g = parse_graph(read_input(a.file));
      DctVerdict v = check_dct_all(g, budget);
      json j{{"solves", v.solves},
             {"configurations_checked", v.configurations_checked}};
      std::ostringstream text;
      text << (v.solves ? "solves" : "fails") << "\n";
      if (!v.solves) {
        j["counterexample"] = v.counterexample->to_string();
        j["failure_kind"] = to_string(*v.failure_kind);
        j["majority_flipped"] = v.majority_flipped;
        text << "counterexample " << v.counterexample->to_string() << "\n"
             << "kind " << to_string(*v.failure_kind) << "\n";
      }
      text << "checked " << v.configurations_checked << "\n";
      emit(out, as_json, j, text.str());
      return v.solves ? 0 : 1;
    }
    if (dct1->parsed()) {
      DiGraph g = parse_graph(read_input(a.file));
      bool ok = check_dct_one(g, Config::from_string(a.input), budget);
      emit(out, as_json, json{{"solves", ok}}, std::string(ok ? "solves" : "fails") + "\n");
      return ok ? 0 : 1;
    }
    if (fl->parsed() || fs->parsed() || fm->parsed() || fc->parsed()) {
      DiGraph g = parse_graph(read_input(a.file));
      std::string which = fl->parsed()   ? "leader"
                          : fs->parsed() ? "small"
                          : fm->parsed() ? "maximal"
                                         : "cycle";
      return run_pattern_search(g, which, budget, as_json, out);
    }
    if (ch->parsed()) {
      DiGraph g = parse_graph(read_input(a.file));
      CharacterizationVerdict v = characterize(g, budget);
      if (v.solves) {
        emit(out, as_json, json{{"solves", true}}, "solves\n");
        return 0;
      }
      emit(out, as_json,
           json{{"solves", false}, {"witness", cert_to_json(*v.witness)}},
           "fails\n" + serialize_certificate(*v.witness));
      return 1;
    }
    if (circ->parsed()) {
      Circuit c = parse_circuit(read_input(a.file));
      if (c_eval->parsed()) {
        Config y = eval(c, Config::from_string(a.input));
        emit(out, as_json, json{{"result", y.to_string()}}, y.to_string() + "\n");
      } else if (c_iter->parsed()) {
        Config y = iterate_circuit(c, Config::from_string(a.input), a.steps, budget);
        emit(out, as_json, json{{"result", y.to_string()}}, y.to_string() + "\n");
      } else if (c_dual->parsed()) {
        std::string text = serialize_circuit(dual(c));
        emit(out, as_json, json{{"circuit", text}}, text);
      } else if (c_mono->parsed()) {
        MonotonizeResult m = monotonize(c, budget);
        std::string text = serialize_circuit(m.lc.circuit);
        json j{{"circuit", text},
               {"depth", m.lc.depth},
               {"rail_depth", m.rail_depth},
               {"test_root_depth", m.test_root_depth}};
        std::ostringstream full;
        full << "# depth " << m.lc.depth << "\n"
             << "# rail_depth " << m.rail_depth << "\n"
             << "# test_root_depth " << m.test_root_depth << "\n"
             << text;
        emit(out, as_json, j, full.str());
      } else if (c_wrap->parsed()) {
        std::string text =
            serialize_circuit(wrap_counter(c, Config::from_string(a.input), a.index));
        emit(out, as_json, json{{"circuit", text}}, text);
      } else {
        LayeredCircuit lc = layerize(c);
        std::string text = serialize_circuit(lc.circuit);
        emit(out, as_json, json{{"circuit", text}, {"depth", lc.depth}},
             "# depth " + std::to_string(lc.depth) + "\n" + text);
      }
      return 0;
    }
    if (red->parsed()) {
      ReductionOutput r;
      if (r_dctp->parsed()) {
        Circuit c = parse_circuit(read_input(a.file));
        r = reduce_dctp_one(layerize(c), Config::from_string(a.input), a.index);
      } else if (r_clique->parsed()) {
        r = reduce_clique_to_ss(parse_ugraph(read_input(a.file)));
      } else if (r_vc->parsed()) {
        r = reduce_vc_to_leader(parse_ugraph(read_input(a.file)));
      } else if (r_comp->parsed()) {
        Circuit c = parse_circuit(read_input(a.file));
        r = circuit_to_mban(layerize(c));
      } else {
        Circuit c = parse_circuit(read_input(a.file));
        r = full_reduction(c, Config::from_string(a.input), a.index, budget).out;
      }
      emit(out, as_json, reduction_to_json(r), serialize_reduction(r));
      return 0;
    }
    if (ver->parsed()) {
      std::vector<CheckResult> results;
      if (a.suite == "characterization")
        results.push_back(verify_characterization_oracle(
            seed, a.trials > 0 ? a.trials : 500, budget));
      else if (a.suite == "consensus")
        results.push_back(verify_clique_consensus(budget));
      else if (a.suite == "lemmas")
        results.push_back(verify_pattern_lemmas(seed, budget));
      else if (a.suite == "invariants")
        results.push_back(verify_dynamics_invariants(
            seed, a.trials > 0 ? a.trials : 10000, budget));
      else if (a.suite == "dual")
        results.push_back(verify_dual_lemma(seed, a.circuits > 0 ? a.circuits : 100, budget));
      else if (a.suite == "rails")
        results.push_back(verify_monotonize(seed, a.circuits > 0 ? a.circuits : 50, budget));
      else if (a.suite == "counter")
        results.push_back(verify_wrap_counter(budget));
      else if (a.suite == "compiler")
        results.push_back(verify_compiler(budget));
      else if (a.suite == "reductions")
        results.push_back(verify_reductions(a.large, budget));
      else if (a.suite == "structure")
        results.push_back(verify_structure(seed, budget));
      else
        results = verify_all(seed, a.large, budget);
      bool all_pass = true;
      json j = json::array();
      std::ostringstream text;
      for (const CheckResult& r : results) {
        all_pass = all_pass && r.pass;
        j.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        text << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail
             << "\n";
      }
      emit(out, as_json, j, text.str());
      return all_pass ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << " (progress " << e.progress << ")\n";
    return 3;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace mban
