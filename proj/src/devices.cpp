#include "succinct/devices.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "succinct/chart_parser.hpp"
#include "succinct/csg_search.hpp"
#include "succinct/dpda_sim.hpp"
#include "succinct/pda_grammar.hpp"

namespace succinct {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_unique(const std::vector<std::string>& names, const std::string& what,
                  std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) out.push_back("duplicate " + what + " '" + n + "'");
  }
}

void check_state(int s, int n, const std::string& what, std::vector<std::string>& out) {
  if (s < 0 || s >= n) out.push_back(what + " " + std::to_string(s) + " is not a declared state");
}

std::vector<std::string> validate_dfa(const Dfa& d) {
  std::vector<std::string> out;
  const int n = d.num_states();
  if (n == 0) out.push_back("DFA has no states");
  check_unique(d.state_names, "state", out);
  check_unique(d.alphabet, "symbol", out);
  check_state(d.start, n, "start state", out);
  if (static_cast<int>(d.accepting.size()) != n) out.push_back("accepting flags do not cover the states");
  if (static_cast<int>(d.delta.size()) != n) {
    out.push_back("transition table does not cover the states");
    return out;
  }
  for (int q = 0; q < n; ++q) {
    if (d.delta[q].size() != d.alphabet.size()) {
      out.push_back("transition from " + d.state_names[q] + " is not total");
      continue;
    }
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
      check_state(d.delta[q][a], n, "target of (" + d.state_names[q] + ", " + d.alphabet[a] + ")", out);
    }
  }
  return out;
}

std::vector<std::string> validate_nfa(const Nfa& d) {
  std::vector<std::string> out;
  const int n = d.num_states();
  if (n == 0) out.push_back("NFA has no states");
  check_unique(d.state_names, "state", out);
  check_unique(d.alphabet, "symbol", out);
  check_state(d.start, n, "start state", out);
  if (static_cast<int>(d.accepting.size()) != n) out.push_back("accepting flags do not cover the states");
  if (static_cast<int>(d.delta.size()) != n) {
    out.push_back("transition table does not cover the states");
    return out;
  }
  for (int q = 0; q < n; ++q) {
    if (d.delta[q].size() != d.alphabet.size()) {
      out.push_back("transition row of " + d.state_names[q] + " has wrong width");
      continue;
    }
    for (const auto& targets : d.delta[q]) {
      for (int t : targets) check_state(t, n, "transition target", out);
    }
  }
  if (!d.epsilon.empty()) {
    if (static_cast<int>(d.epsilon.size()) != n) {
      out.push_back("epsilon table does not cover the states");
    } else {
      for (const auto& targets : d.epsilon) {
        for (int t : targets) check_state(t, n, "epsilon target", out);
      }
    }
  }
  return out;
}

std::vector<std::string> validate_pushdown(const PushdownAutomaton& d, bool deterministic) {
  std::vector<std::string> out;
  const int n = d.num_states(), m = d.num_stack();
  const int k = static_cast<int>(d.alphabet.size());
  if (n == 0) out.push_back("no states");
  if (m == 0) out.push_back("empty stack alphabet");
  check_unique(d.state_names, "state", out);
  check_unique(d.stack_names, "stack symbol", out);
  check_unique(d.alphabet, "symbol", out);
  check_state(d.start, n, "start state", out);
  if (d.initial_stack < 0 || d.initial_stack >= m) out.push_back("initial stack symbol not declared");
  if (static_cast<int>(d.accepting.size()) != n) out.push_back("accepting flags do not cover the states");
  bool moves_ok = true;
  for (const auto& mv : d.moves) {
    const std::size_t before = out.size();
    check_state(mv.from, n, "move source", out);
    check_state(mv.to, n, "move target", out);
    if (mv.top < 0 || mv.top >= m) out.push_back("move reads undeclared stack symbol");
    for (int s : mv.push) {
      if (s < 0 || s >= m) out.push_back("move pushes undeclared stack symbol");
    }
    if (mv.input && (*mv.input < 0 || *mv.input >= k)) out.push_back("move reads undeclared input symbol");
    moves_ok = moves_ok && out.size() == before;
  }
  if (deterministic && moves_ok && n > 0 && m > 0) {
    std::map<std::pair<int, int>, std::pair<int, std::map<int, int>>> seen;
    for (const auto& mv : d.moves) {
      auto& [eps, per_symbol] = seen[{mv.from, mv.top}];
      if (mv.input) {
        ++per_symbol[*mv.input];
      } else {
        ++eps;
      }
    }
    for (const auto& [key, counts] : seen) {
      const auto& [eps, per_symbol] = counts;
      const std::string where =
          "(" + d.state_names[key.first] + ", " + d.stack_names[key.second] + ")";
      if (eps > 1) out.push_back("determinism violation at " + where + ": several epsilon moves");
      if (eps >= 1 && !per_symbol.empty()) {
        out.push_back("determinism violation at " + where + ": epsilon and input moves");
      }
      for (const auto& [sym, c] : per_symbol) {
        if (c > 1) {
          out.push_back("determinism violation at " + where + ": " + std::to_string(c) +
                        " moves on " + d.alphabet[sym]);
        }
      }
    }
  }
  return out;
}

template <class G>
std::vector<std::string> validate_symbols(const G& g) {
  std::vector<std::string> out;
  check_unique(g.nonterminals, "nonterminal", out);
  check_unique(g.terminals, "terminal", out);
  std::set<Symbol> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::set<Symbol> ts(g.terminals.begin(), g.terminals.end());
  for (const auto& n : nts) {
    if (ts.count(n)) out.push_back("symbol '" + n + "' is both terminal and nonterminal");
  }
  if (!nts.count(g.start)) out.push_back("start symbol '" + g.start + "' is not a nonterminal");
  return out;
}

std::vector<std::string> validate_cfg(const Cfg& g) {
  auto out = validate_symbols(g);
  std::set<Symbol> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::set<Symbol> ts(g.terminals.begin(), g.terminals.end());
  for (const auto& r : g.rules) {
    if (!nts.count(r.lhs)) out.push_back("rule LHS '" + r.lhs + "' is not a nonterminal");
    for (const auto& s : r.rhs) {
      if (!nts.count(s) && !ts.count(s)) out.push_back("undeclared symbol '" + s + "' in rule for " + r.lhs);
    }
  }
  return out;
}

std::vector<std::string> validate_csg(const Csg& g) {
  auto out = validate_symbols(g);
  std::set<Symbol> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::set<Symbol> ts(g.terminals.begin(), g.terminals.end());
  bool start_eps = false, start_on_rhs = false;
  for (const auto& r : g.rules) {
    if (r.lhs.empty()) out.push_back("rule with empty left-hand side");
    for (const auto* side : {&r.lhs, &r.rhs}) {
      for (const auto& s : *side) {
        if (!nts.count(s) && !ts.count(s)) out.push_back("undeclared symbol '" + s + "'");
      }
    }
    for (const auto& s : r.rhs) start_on_rhs = start_on_rhs || s == g.start;
    const bool is_start_eps = r.lhs.size() == 1 && r.lhs[0] == g.start && r.rhs.empty();
    if (is_start_eps) {
      start_eps = true;
    } else if (r.rhs.size() < r.lhs.size()) {
      std::string lhs;
      for (const auto& s : r.lhs) lhs += s;
      out.push_back("contracting rule with LHS '" + lhs + "'");
    }
  }
  if (start_eps && start_on_rhs) {
    out.push_back("start -> eps is only allowed when the start symbol never occurs on a RHS");
  }
  return out;
}

void require_valid(const Device& d) {
  auto v = validate(d);
  if (!v.empty()) throw ValidationError(kind_name(d) + ": " + v.front());
}

void require_alphabet(const Alphabet& alphabet, const Word& w) {
  for (const auto& s : w) symbol_index(alphabet, s);
}

std::vector<int> encode(const Alphabet& alphabet, const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& s : w) out.push_back(symbol_index(alphabet, s));
  return out;
}

}  // namespace

int symbol_index(const Alphabet& alphabet, const Symbol& s) {
  auto it = std::find(alphabet.begin(), alphabet.end(), s);
  if (it == alphabet.end()) throw InputError("symbol '" + s + "' is not in the alphabet");
  return static_cast<int>(it - alphabet.begin());
}

std::string kind_name(const Device& d) {
  return std::visit(Overloaded{
                        [](const Dfa&) { return std::string("DFA"); },
                        [](const Nfa&) { return std::string("NFA"); },
                        [](const Dpda&) { return std::string("DPDA"); },
                        [](const Pda&) { return std::string("PDA"); },
                        [](const Cfg&) { return std::string("CFG"); },
                        [](const Csg&) { return std::string("CSG"); },
                    },
                    d);
}

std::vector<std::string> validate(const Device& d) {
  return std::visit(Overloaded{
                        [](const Dfa& x) { return validate_dfa(x); },
                        [](const Nfa& x) { return validate_nfa(x); },
                        [](const Dpda& x) { return validate_pushdown(x, true); },
                        [](const Pda& x) { return validate_pushdown(x, false); },
                        [](const Cfg& x) { return validate_cfg(x); },
                        [](const Csg& x) { return validate_csg(x); },
                    },
                    d);
}

std::size_t size_of(const Device& d) {
  require_valid(d);
  return std::visit(Overloaded{
                        [](const Dfa& x) -> std::size_t { return x.state_names.size(); },
                        [](const Nfa& x) -> std::size_t { return x.state_names.size(); },
                        [](const PushdownAutomaton& x) -> std::size_t {
                          return x.state_names.size() + x.stack_names.size();
                        },
                        [](const Cfg& x) -> std::size_t { return x.nonterminals.size(); },
                        [](const Csg& x) -> std::size_t { return x.nonterminals.size(); },
                    },
                    d);
}

Alphabet alphabet_of(const Device& d) {
  return std::visit(Overloaded{
                        [](const Dfa& x) { return x.alphabet; },
                        [](const Nfa& x) { return x.alphabet; },
                        [](const PushdownAutomaton& x) { return x.alphabet; },
                        [](const Cfg& x) { return x.terminals; },
                        [](const Csg& x) { return x.terminals; },
                    },
                    d);
}

bool dfa_accepts(const Dfa& d, const Word& w) {
  int q = d.start;
  for (int a : encode(d.alphabet, w)) q = d.delta[q][a];
  return d.accepting[q];
}

namespace {
void eps_close(const Nfa& n, std::vector<bool>& set) {
  if (n.epsilon.empty()) return;
  std::vector<int> work;
  for (int q = 0; q < n.num_states(); ++q) {
    if (set[q]) work.push_back(q);
  }
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    for (int r : n.epsilon[q]) {
      if (!set[r]) {
        set[r] = true;
        work.push_back(r);
      }
    }
  }
}
}  // namespace

bool nfa_accepts(const Nfa& n, const Word& w) {
  const auto syms = encode(n.alphabet, w);
  std::vector<bool> cur(n.num_states(), false);
  cur[n.start] = true;
  eps_close(n, cur);
  for (int a : syms) {
    std::vector<bool> next(n.num_states(), false);
    for (int q = 0; q < n.num_states(); ++q) {
      if (!cur[q]) continue;
      for (int r : n.delta[q][a]) next[r] = true;
    }
    eps_close(n, next);
    cur = std::move(next);
  }
  for (int q = 0; q < n.num_states(); ++q) {
    if (cur[q] && n.accepting[q]) return true;
  }
  return false;
}

namespace {
bool run_dpda(const Dpda& d, const DpdaTables& t, const std::vector<int>& input) {
  std::vector<int> stack{d.initial_stack};
  std::vector<ChainVisit> chain;
  int state = d.start;
  std::size_t pos = 0;
  bool accepted = false;
  while (true) {
    if (pos == input.size()) accepted = accepted || d.accepting[state];
    if (stack.empty()) break;
    const int top = stack.back();
    int mi = t.eps_move(state, top);
    if (mi >= 0) {
      const ChainVisit now{state, top, stack.size()};
      if (closes_epsilon_loop(chain, now)) break;
      chain.push_back(now);
    } else {
      if (pos == input.size()) break;
      mi = t.input_move(state, top, input[pos]);
      if (mi < 0) break;
      ++pos;
      chain.clear();
    }
    const PdaMove& m = d.moves[mi];
    stack.pop_back();
    for (auto it = m.push.rbegin(); it != m.push.rend(); ++it) stack.push_back(*it);
    state = m.to;
  }
  return pos == input.size() && accepted;
}
}  // namespace

bool dpda_accepts(const Dpda& d, const Word& w) {
  const auto input = encode(d.alphabet, w);
  return run_dpda(d, dpda_tables(d), input);
}

Nfa nfa_view(const Dfa& d) {
  Nfa n;
  n.state_names = d.state_names;
  n.alphabet = d.alphabet;
  n.start = d.start;
  n.accepting = d.accepting;
  n.delta.resize(d.delta.size());
  for (std::size_t q = 0; q < d.delta.size(); ++q) {
    for (int t : d.delta[q]) n.delta[q].push_back({t});
  }
  return n;
}

Pda pda_view(const Dpda& d) {
  Pda p;
  static_cast<PushdownAutomaton&>(p) = d;
  return p;
}

struct Recognizer::Impl {
  Alphabet alphabet;
  std::string label;
  std::function<bool(const Word&)> fn;
};

Recognizer::Recognizer(const Device& d, std::size_t csg_budget) : impl_(std::make_unique<Impl>()) {
  require_valid(d);
  impl_->alphabet = alphabet_of(d);
  impl_->label = kind_name(d);
  auto with_check = [alphabet = impl_->alphabet](auto inner) {
    return [alphabet, inner = std::move(inner)](const Word& w) mutable {
      require_alphabet(alphabet, w);
      return inner(w);
    };
  };
  auto chart_fn = [](const Cfg& g) {
    auto parser = std::make_shared<ChartParser>(std::make_shared<const CompiledGrammar>(g));
    return [parser](const Word& w) { return parser->recognize(w); };
  };
  impl_->fn = std::visit(
      Overloaded{
          [](const Dfa& x) -> std::function<bool(const Word&)> {
            return [x](const Word& w) { return dfa_accepts(x, w); };
          },
          [](const Nfa& x) -> std::function<bool(const Word&)> {
            return [x](const Word& w) { return nfa_accepts(x, w); };
          },
          [](const Dpda& x) -> std::function<bool(const Word&)> {
            auto tables = std::make_shared<DpdaTables>(dpda_tables(x));
            return [x, tables](const Word& w) { return run_dpda(x, *tables, encode(x.alphabet, w)); };
          },
          [&](const Pda& x) -> std::function<bool(const Word&)> {
            return with_check(chart_fn(triple_construction(x).grammar));
          },
          [&](const Cfg& x) -> std::function<bool(const Word&)> {
            return with_check(chart_fn(x));
          },
          [&](const Csg& x) -> std::function<bool(const Word&)> {
            auto search = std::make_shared<CsgSearch>(x, csg_budget);
            return [search](const Word& w) { return search->derives_cached(w); };
          },
      },
      d);
}

Recognizer::Recognizer(PredicateOracle oracle) : impl_(std::make_unique<Impl>()) {
  impl_->alphabet = std::move(oracle.alphabet);
  impl_->label = std::move(oracle.label);
  impl_->fn = std::move(oracle.accepts);
}

Recognizer::~Recognizer() = default;
Recognizer::Recognizer(Recognizer&&) noexcept = default;
Recognizer& Recognizer::operator=(Recognizer&&) noexcept = default;

bool Recognizer::operator()(const Word& w) const { return impl_->fn(w); }
const Alphabet& Recognizer::alphabet() const { return impl_->alphabet; }
const std::string& Recognizer::label() const { return impl_->label; }

bool member(const Device& d, const Word& w, std::size_t csg_budget) {
  require_valid(d);
  if (const auto* g = std::get_if<Csg>(&d)) return CsgSearch(*g, csg_budget).derives(w);
  if (const auto* g = std::get_if<Cfg>(&d)) {
    require_alphabet(g->terminals, w);
    return ChartParser(std::make_shared<const CompiledGrammar>(*g)).recognize(w);
  }
  return Recognizer(d, csg_budget)(w);
}

}  // namespace succinct
