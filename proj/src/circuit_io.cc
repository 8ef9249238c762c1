#include "mban/circuit_io.hh"

#include <map>
#include <set>
#include <sstream>

namespace mban {

namespace {

bool input_token(const std::string& tok, int& index) {
  if (tok.size() < 2 || tok[0] != 'i') return false;
  for (std::size_t k = 1; k < tok.size(); ++k)
    if (!isdigit(static_cast<unsigned char>(tok[k]))) return false;
  index = std::stoi(tok.substr(1));
  return true;
}

std::string clean(const std::string& raw) {
  std::string s = raw;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Circuit c;
  bool have_inputs = false, have_outputs = false;
  std::map<std::string, int> ids;

  auto parse_ref = [&](const std::string& tok, int lineno_) {
    int idx;
    if (input_token(tok, idx)) {
      if (idx >= c.input_count) throw ParseError(lineno_, "input reference out of range");
      return input_ref(idx);
    }
    auto it = ids.find(tok);
    if (it == ids.end())
      throw ParseError(lineno_, "reference to undeclared gate '" + tok + "'");
    return gate_ref(it->second);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = clean(raw);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string kw;
    ls >> kw;
    if (!have_inputs) {
      if (kw != "inputs") throw ParseError(lineno, "expected header 'inputs <n>'");
      if (!(ls >> c.input_count) || c.input_count < 0)
        throw ParseError(lineno, "bad input count");
      have_inputs = true;
      continue;
    }
    if (have_outputs) throw ParseError(lineno, "content after the outputs line");
    if (kw == "gate") {
      std::string id, opname;
      if (!(ls >> id >> opname)) throw ParseError(lineno, "expected 'gate <id> <op> <refs>'");
      int dummy;
      if (input_token(id, dummy))
        throw ParseError(lineno, "gate id may not look like an input reference");
      if (ids.count(id)) throw ParseError(lineno, "duplicate gate id '" + id + "'");
      auto op = op_from_string(opname);
      if (!op) throw ParseError(lineno, "unknown op '" + opname + "'");
      Gate g;
      g.op = *op;
      g.name = id;
      std::string ta, tb;
      if (!(ls >> ta)) throw ParseError(lineno, "missing operand");
      g.a = parse_ref(ta, lineno);
      if (g.op == Op::And || g.op == Op::Or) {
        if (!(ls >> tb)) throw ParseError(lineno, "binary gate needs two operands");
        g.b = parse_ref(tb, lineno);
      }
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens on gate line");
      ids[id] = static_cast<int>(c.gates.size());
      c.gates.push_back(g);
      continue;
    }
    if (kw == "outputs") {
      std::string tok;
      while (ls >> tok) c.outputs.push_back(parse_ref(tok, lineno));
      have_outputs = true;
      continue;
    }
    throw ParseError(lineno, "expected 'gate' or 'outputs' line");
  }
  if (!have_inputs) throw ParseError(0, "missing 'inputs <n>' header");
  if (!have_outputs) throw ParseError(0, "missing 'outputs' line");
  return c;
}

std::string serialize_circuit(const Circuit& c) {
  check_circuit(c);
  std::set<std::string> used;
  std::vector<std::string> id(c.gates.size());
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    int dummy;
    std::string cand = c.gates[j].name;
    if (cand.empty() || input_token(cand, dummy) ||
        cand.find_first_of(" \t#") != std::string::npos || used.count(cand))
      cand = "g" + std::to_string(j);
    while (used.count(cand)) cand += "_";
    used.insert(cand);
    id[j] = cand;
  }
  auto ref_str = [&](const Ref& r) {
    return r.is_input ? "i" + std::to_string(r.index) : id[r.index];
  };
  std::ostringstream out;
  out << "inputs " << c.input_count << "\n";
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    out << "gate " << id[j] << " " << to_string(g.op) << " " << ref_str(g.a);
    if (g.op == Op::And || g.op == Op::Or) out << " " << ref_str(g.b);
    out << "\n";
  }
  out << "outputs";
  for (const Ref& r : c.outputs) out << " " << ref_str(r);
  out << "\n";
  return out.str();
}

}  // namespace mban
