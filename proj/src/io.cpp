#include "succinct/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace succinct {
namespace {

struct RawGrammar {
  std::string kind;
  std::string start;
  std::vector<Symbol> nonterminals, terminals;
  bool have_nonterminals = false, have_terminals = false;
  std::vector<std::pair<std::vector<Symbol>, std::vector<Symbol>>> rules;
};

std::vector<Symbol> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<Symbol> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

RawGrammar parse_raw(const std::string& text) {
  RawGrammar g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = split(line);
    if (toks.empty()) continue;
    if (toks[0][0] == '%') {
      const std::string d = toks[0];
      std::vector<Symbol> args(toks.begin() + 1, toks.end());
      if (d == "%kind" && args.size() == 1) {
        g.kind = args[0];
      } else if (d == "%start" && args.size() == 1) {
        g.start = args[0];
      } else if (d == "%nonterminals") {
        g.nonterminals = args;
        g.have_nonterminals = true;
      } else if (d == "%terminals") {
        g.terminals = args;
        g.have_terminals = true;
      } else {
        throw ParseError("line " + std::to_string(lineno) + ": unknown directive " + d);
      }
      continue;
    }
    auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) throw ParseError("line " + std::to_string(lineno) + ": missing '->'");
    std::vector<Symbol> lhs(toks.begin(), arrow);
    if (lhs.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty left-hand side");
    std::vector<Symbol> alt;
    auto flush = [&] {
      if (alt.size() == 1 && alt[0] == kEpsilonToken) alt.clear();
      if (std::find(alt.begin(), alt.end(), kEpsilonToken) != alt.end()) {
        throw ParseError("line " + std::to_string(lineno) + ": _eps_ must stand alone");
      }
      g.rules.emplace_back(lhs, alt);
      alt.clear();
    };
    for (auto it = arrow + 1; it != toks.end(); ++it) {
      if (*it == "|") {
        if (alt.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty alternative (use _eps_)");
        flush();
      } else {
        alt.push_back(*it);
      }
    }
    if (alt.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty alternative (use _eps_)");
    flush();
    if (g.start.empty()) g.start = lhs.size() == 1 ? lhs[0] : std::string();
  }
  if (g.start.empty()) throw ParseError("grammar has no start symbol");
  return g;
}

void fill_symbols(const RawGrammar& raw, std::vector<Symbol>& nts, std::vector<Symbol>& ts) {
  if (raw.have_nonterminals) {
    nts = raw.nonterminals;
  } else {
    std::set<Symbol> seen;
    auto add = [&](const Symbol& s) {
      if (seen.insert(s).second) nts.push_back(s);
    };
    add(raw.start);
    for (const auto& [lhs, rhs] : raw.rules) {
      if (lhs.size() != 1) throw ParseError("multi-symbol LHS requires a %nonterminals directive");
      add(lhs[0]);
    }
  }
  if (raw.have_terminals) {
    ts = raw.terminals;
  } else {
    std::set<Symbol> ntset(nts.begin(), nts.end()), seen;
    for (const auto& [lhs, rhs] : raw.rules) {
      for (const auto* side : {&lhs, &rhs}) {
        for (const auto& s : *side) {
          if (!ntset.count(s) && seen.insert(s).second) ts.push_back(s);
        }
      }
    }
  }
}

template <class G>
std::string format_symbols_header(const G& g, const char* kind) {
  std::string out = std::string("%kind ") + kind + "\n%start " + g.start + "\n%nonterminals";
  for (const auto& n : g.nonterminals) out += " " + n;
  out += "\n%terminals";
  for (const auto& t : g.terminals) out += " " + t;
  out += "\n";
  return out;
}

std::string join(const std::vector<Symbol>& v) {
  if (v.empty()) return kEpsilonToken;
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
  return out;
}

int index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw ParseError(std::string("unknown ") + what + " '" + n + "'");
  return static_cast<int>(it - names.begin());
}

std::vector<bool> accepting_flags(const nlohmann::json& j, const std::vector<std::string>& states) {
  std::vector<bool> acc(states.size(), false);
  for (const auto& s : j.at("accepting")) acc[index_of(states, s.get<std::string>(), "state")] = true;
  return acc;
}

bool is_eps(const nlohmann::json& v) {
  return v.is_null() || (v.is_string() && v.get<std::string>() == kEpsilonToken);
}

}  // namespace

Cfg parse_cfg(const std::string& text) {
  RawGrammar raw = parse_raw(text);
  Cfg g;
  g.start = raw.start;
  fill_symbols(raw, g.nonterminals, g.terminals);
  for (const auto& [lhs, rhs] : raw.rules) {
    if (lhs.size() != 1) throw ParseError("CFG rules need a single-symbol LHS");
    g.rules.push_back(Rule{lhs[0], rhs});
  }
  return g;
}

Csg parse_csg(const std::string& text) {
  RawGrammar raw = parse_raw(text);
  Csg g;
  g.start = raw.start;
  fill_symbols(raw, g.nonterminals, g.terminals);
  for (const auto& [lhs, rhs] : raw.rules) g.rules.push_back(CsgRule{lhs, rhs});
  return g;
}

Device parse_grammar(const std::string& text) {
  RawGrammar raw = parse_raw(text);
  bool csg = raw.kind == "csg";
  if (raw.kind.empty()) {
    csg = std::any_of(raw.rules.begin(), raw.rules.end(),
                      [](const auto& r) { return r.first.size() != 1; });
  } else if (raw.kind != "cfg" && raw.kind != "csg") {
    throw ParseError("unknown grammar kind " + raw.kind);
  }
  if (csg) return parse_csg(text);
  return parse_cfg(text);
}

std::string format_grammar(const Cfg& g) {
  std::string out = format_symbols_header(g, "cfg");
  std::vector<Symbol> order{g.start};
  for (const auto& r : g.rules) {
    if (std::find(order.begin(), order.end(), r.lhs) == order.end()) order.push_back(r.lhs);
  }
  for (const auto& lhs : order) {
    std::string line;
    for (const auto& r : g.rules) {
      if (r.lhs != lhs) continue;
      line += line.empty() ? lhs + " -> " : " | ";
      line += join(r.rhs);
    }
    if (!line.empty()) out += line + "\n";
  }
  return out;
}

std::string format_grammar(const Csg& g) {
  std::string out = format_symbols_header(g, "csg");
  // start rules first so the default start convention also holds
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& r : g.rules) {
      const bool is_start = r.lhs.size() == 1 && r.lhs[0] == g.start;
      if (is_start == (pass == 0)) out += join(r.lhs) + " -> " + join(r.rhs) + "\n";
    }
  }
  return out;
}

nlohmann::json automaton_to_json(const Device& d) {
  using nlohmann::json;
  json j;
  auto common = [&](const auto& a) {
    j["states"] = a.state_names;
    j["alphabet"] = a.alphabet;
    j["start"] = a.state_names.at(a.start);
    json acc = json::array();
    for (int q = 0; q < a.num_states(); ++q) {
      if (a.accepting[q]) acc.push_back(a.state_names[q]);
    }
    j["accepting"] = acc;
  };
  if (const auto* a = std::get_if<Dfa>(&d)) {
    j["kind"] = "DFA";
    common(*a);
    json tr = json::array();
    for (int q = 0; q < a->num_states(); ++q) {
      for (std::size_t s = 0; s < a->alphabet.size(); ++s) {
        tr.push_back({{"from", a->state_names[q]}, {"symbol", a->alphabet[s]},
                      {"to", a->state_names[a->delta[q][s]]}});
      }
    }
    j["transitions"] = tr;
  } else if (const auto* n = std::get_if<Nfa>(&d)) {
    j["kind"] = "NFA";
    common(*n);
    json tr = json::array();
    for (int q = 0; q < n->num_states(); ++q) {
      for (std::size_t s = 0; s < n->alphabet.size(); ++s) {
        for (int t : n->delta[q][s]) {
          tr.push_back({{"from", n->state_names[q]}, {"symbol", n->alphabet[s]}, {"to", n->state_names[t]}});
        }
      }
      if (!n->epsilon.empty()) {
        for (int t : n->epsilon[q]) {
          tr.push_back({{"from", n->state_names[q]}, {"symbol", kEpsilonToken}, {"to", n->state_names[t]}});
        }
      }
    }
    j["transitions"] = tr;
  } else if (std::holds_alternative<Pda>(d) || std::holds_alternative<Dpda>(d)) {
    const PushdownAutomaton& p = std::holds_alternative<Pda>(d)
                                     ? static_cast<const PushdownAutomaton&>(std::get<Pda>(d))
                                     : static_cast<const PushdownAutomaton&>(std::get<Dpda>(d));
    j["kind"] = std::holds_alternative<Pda>(d) ? "PDA" : "DPDA";
    common(p);
    j["stackAlphabet"] = p.stack_names;
    j["initialStackSymbol"] = p.stack_names.at(p.initial_stack);
    json tr = json::array();
    for (const auto& m : p.moves) {
      json push = json::array();
      for (int s : m.push) push.push_back(p.stack_names[s]);
      tr.push_back({{"from", p.state_names[m.from]},
                    {"input", m.input ? json(p.alphabet[*m.input]) : json(kEpsilonToken)},
                    {"top", p.stack_names[m.top]},
                    {"to", p.state_names[m.to]},
                    {"push", push}});
    }
    j["transitions"] = tr;
  } else {
    throw ParseError("grammars are stored in the text format, not JSON");
  }
  return j;
}

Device automaton_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const auto states = j.at("states").get<std::vector<std::string>>();
    const auto alphabet = j.at("alphabet").get<Alphabet>();
    const int start = index_of(states, j.at("start").get<std::string>(), "state");
    if (kind == "DFA") {
      Dfa d;
      d.state_names = states;
      d.alphabet = alphabet;
      d.start = start;
      d.accepting = accepting_flags(j, states);
      d.delta.assign(states.size(), std::vector<int>(alphabet.size(), -1));
      for (const auto& t : j.at("transitions")) {
        d.delta[index_of(states, t.at("from"), "state")]
               [index_of(alphabet, t.at("symbol"), "symbol")] = index_of(states, t.at("to"), "state");
      }
      return d;
    }
    if (kind == "NFA") {
      Nfa n;
      n.state_names = states;
      n.alphabet = alphabet;
      n.start = start;
      n.accepting = accepting_flags(j, states);
      n.delta.assign(states.size(), std::vector<std::vector<int>>(alphabet.size()));
      n.epsilon.assign(states.size(), {});
      for (const auto& t : j.at("transitions")) {
        const int from = index_of(states, t.at("from"), "state");
        const int to = index_of(states, t.at("to"), "state");
        if (is_eps(t.at("symbol"))) {
          n.epsilon[from].push_back(to);
        } else {
          n.delta[from][index_of(alphabet, t.at("symbol"), "symbol")].push_back(to);
        }
      }
      return n;
    }
    if (kind == "PDA" || kind == "DPDA") {
      PushdownAutomaton p;
      p.state_names = states;
      p.alphabet = alphabet;
      p.start = start;
      p.accepting = accepting_flags(j, states);
      p.stack_names = j.at("stackAlphabet").get<std::vector<std::string>>();
      p.initial_stack = index_of(p.stack_names, j.at("initialStackSymbol"), "stack symbol");
      for (const auto& t : j.at("transitions")) {
        PdaMove m;
        m.from = index_of(states, t.at("from"), "state");
        m.to = index_of(states, t.at("to"), "state");
        m.top = index_of(p.stack_names, t.at("top"), "stack symbol");
        if (!t.contains("input") || !is_eps(t.at("input"))) {
          m.input = index_of(alphabet, t.at("input"), "symbol");
        }
        for (const auto& s : t.value("push", nlohmann::json::array())) {
          m.push.push_back(index_of(p.stack_names, s.get<std::string>(), "stack symbol"));
        }
        p.moves.push_back(std::move(m));
      }
      if (kind == "PDA") return Pda{p};
      return Dpda{p};
    }
    throw ParseError("unknown automaton kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed automaton JSON: ") + e.what());
  }
}

nlohmann::json device_to_json(const Device& d) {
  if (const auto* g = std::get_if<Cfg>(&d)) return {{"kind", "CFG"}, {"text", format_grammar(*g)}};
  if (const auto* g = std::get_if<Csg>(&d)) return {{"kind", "CSG"}, {"text", format_grammar(*g)}};
  return automaton_to_json(d);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

Device load_device(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    return automaton_from_json(j);
  }
  return parse_grammar(text);
}

void save_device(const Device& d, const std::string& path) {
  if (const auto* g = std::get_if<Cfg>(&d)) return write_file(path, format_grammar(*g));
  if (const auto* g = std::get_if<Csg>(&d)) return write_file(path, format_grammar(*g));
  write_file(path, automaton_to_json(d).dump(2) + "\n");
}

}  // namespace succinct
