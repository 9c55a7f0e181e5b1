#include "succinct/constructions.hpp"

#include <cmath>
#include <map>
#include <set>

namespace succinct {
namespace {

Symbol fresh(Symbol base, const std::set<Symbol>& used) {
  while (used.count(base)) base += "'";
  return base;
}

// Adds rules deriving unit^k to g and returns the symbol for unit^k.
// Nonterminal C<k> derives unit^k; k == 1 is the unit itself.
class Doubler {
 public:
  Doubler(Cfg& g, Symbol unit) : g_(g), unit_(std::move(unit)) {}

  Symbol build(std::size_t k) {
    if (k == 1) return unit_;
    const Symbol name = "C" + std::to_string(k);
    if (built_.count(k)) return name;
    built_.insert(k);
    g_.nonterminals.push_back(name);
    if (k % 2 == 0) {
      const Symbol half = build(k / 2);
      g_.rules.push_back({name, {half, half}});
    } else {
      const Symbol rest = build(k - 1);
      g_.rules.push_back({name, {unit_, rest}});
    }
    return name;
  }

 private:
  Cfg& g_;
  Symbol unit_;
  std::set<std::size_t> built_;
};

// Renames `from` to `to` everywhere in g.
void rename(Cfg& g, const Symbol& from, const Symbol& to) {
  for (auto& n : g.nonterminals)
    if (n == from) n = to;
  for (auto& r : g.rules) {
    if (r.lhs == from) r.lhs = to;
    for (auto& s : r.rhs)
      if (s == from) s = to;
  }
  if (g.start == from) g.start = to;
}

// Grammar for unit^n (n >= 2) with start S; nonterminals are listed from the
// top of the doubling chain down.
Cfg exact_counter(std::size_t n, const Symbol& unit, bool unit_is_nonterminal) {
  Cfg g;
  Doubler doubler(g, unit);
  const Symbol top = doubler.build(n);
  rename(g, top, "S");
  g.start = "S";
  if (unit_is_nonterminal) g.nonterminals.push_back(unit);
  return g;
}

Cfg unit_star(const Symbol& unit) {
  Cfg g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.rules = {{"S", {unit, "S"}}, {"S", {}}};
  return g;
}

void add_letter_rules(Cfg& g, const Alphabet& alphabet, bool with_epsilon) {
  for (const auto& t : alphabet) g.rules.push_back({"Y", {t}});
  if (with_epsilon) g.rules.push_back({"Y", {}});
  g.terminals = alphabet;
}

// Renames every nonterminal of g with the given suffix, skipping names taken
// in `used`; records the new names in `used`.
Cfg renamed_apart(const Cfg& g, const std::string& suffix, std::set<Symbol>& used) {
  std::map<Symbol, Symbol> map;
  for (const auto& n : g.nonterminals) {
    map[n] = fresh(n + suffix, used);
    used.insert(map[n]);
  }
  auto sub = [&](const Symbol& s) {
    auto it = map.find(s);
    return it == map.end() ? s : it->second;
  };
  Cfg out;
  for (const auto& n : g.nonterminals) out.nonterminals.push_back(map[n]);
  out.terminals = g.terminals;
  for (const auto& r : g.rules) {
    Rule nr{sub(r.lhs), {}};
    for (const auto& s : r.rhs) nr.rhs.push_back(sub(s));
    out.rules.push_back(std::move(nr));
  }
  out.start = sub(g.start);
  return out;
}

void check_valid(const Cfg& g) {
  auto v = validate(g);
  if (!v.empty()) throw ValidationError(v.front());
}

Alphabet merged_terminals(const std::vector<const Cfg*>& parts) {
  Alphabet out;
  std::set<Symbol> seen;
  for (const Cfg* p : parts) {
    for (const auto& t : p->terminals)
      if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

// Combines renamed parts under a fresh start whose rules are built by
// `start_rules` from the renamed part start symbols.
Cfg combine(const std::vector<const Cfg*>& parts,
            const std::function<std::vector<std::vector<Symbol>>(const std::vector<Symbol>&)>&
                start_rules) {
  for (const Cfg* p : parts) check_valid(*p);
  Cfg out;
  out.terminals = merged_terminals(parts);
  std::set<Symbol> used(out.terminals.begin(), out.terminals.end());
  std::vector<Cfg> renamed;
  for (std::size_t i = 0; i < parts.size(); ++i)
    renamed.push_back(renamed_apart(*parts[i], "_" + std::to_string(i + 1), used));
  out.start = fresh("S", used);
  out.nonterminals.push_back(out.start);
  std::vector<Symbol> starts;
  for (const auto& r : renamed) starts.push_back(r.start);
  for (auto& rhs : start_rules(starts)) out.rules.push_back({out.start, std::move(rhs)});
  for (auto& r : renamed) {
    out.nonterminals.insert(out.nonterminals.end(), r.nonterminals.begin(), r.nonterminals.end());
    out.rules.insert(out.rules.end(), r.rules.begin(), r.rules.end());
  }
  return out;
}

double lg(double x) { return std::log2(x); }

}  // namespace

std::size_t counter_recurrence(std::size_t n) {
  if (n <= 1) return 1;
  return counter_recurrence(n / 2) + (n % 2 == 0 ? 1 : 2);
}

Cfg counter_cfg(const CounterGrammarSpec& spec) {
  if (spec.n < 2) throw DomainError("counter grammar needs n >= 2, got " + std::to_string(spec.n));
  const bool concrete = !spec.alphabet.empty();
  if (concrete) {
    for (const auto& t : spec.alphabet) {
      if (t == "Y" || t.empty()) throw DomainError("terminal name '" + t + "' is reserved");
    }
  }
  const bool at_most = spec.mode == CounterMode::kAtMost;

  // The unit symbol: Y itself, or a nullable stand-in for the abstract
  // at-most case (Y is a terminal there, so Y -> eps is not available).
  Symbol unit = "Y";
  if (!concrete && at_most) unit = "Y0";
  Cfg g = exact_counter(spec.n, unit, concrete || at_most);
  if (concrete) {
    add_letter_rules(g, spec.alphabet, at_most);
  } else {
    g.terminals = {"Y"};
    if (at_most) {
      g.rules.push_back({"Y0", {"Y"}});
      g.rules.push_back({"Y0", {}});
    }
  }
  if (spec.mode != CounterMode::kAtLeast) return g;

  Cfg star = unit_star("Y");
  if (concrete) {
    star.nonterminals.push_back("Y");
    add_letter_rules(star, spec.alphabet, false);
  } else {
    star.terminals = {"Y"};
  }
  return cfg_concat(g, star);
}

Cfg cfg_union(const std::vector<Cfg>& parts) {
  if (parts.empty()) throw DomainError("union of an empty list of grammars");
  std::vector<const Cfg*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return combine(ptrs, [](const std::vector<Symbol>& starts) {
    std::vector<std::vector<Symbol>> rhs;
    for (const auto& s : starts) rhs.push_back({s});
    return rhs;
  });
}

Cfg cfg_concat(const Cfg& g1, const Cfg& g2) {
  return combine({&g1, &g2}, [](const std::vector<Symbol>& starts) {
    return std::vector<std::vector<Symbol>>{{starts[0], starts[1]}};
  });
}

Cfg complement_ww_cfg(std::size_t n) {
  if (n < 2) throw DomainError("complement of ww needs n >= 2, got " + std::to_string(n));
  const Alphabet ab{"a", "b"};
  Cfg shorter = counter_cfg({2 * n - 1, CounterMode::kAtMost, ab});
  Cfg longer = counter_cfg({2 * n + 1, CounterMode::kAtLeast, ab});

  // S -> U a M b U | U b M a U with M deriving exactly n-1 letters.
  Cfg mismatch;
  mismatch.nonterminals = {"S", "U"};
  mismatch.start = "S";
  const Symbol mid = Doubler(mismatch, "Y").build(n - 1);
  mismatch.nonterminals.push_back("Y");
  add_letter_rules(mismatch, ab, false);
  mismatch.rules.push_back({"S", {"U", "a", mid, "b", "U"}});
  mismatch.rules.push_back({"S", {"U", "b", mid, "a", "U"}});
  mismatch.rules.push_back({"U", {"a", "U"}});
  mismatch.rules.push_back({"U", {"b", "U"}});
  mismatch.rules.push_back({"U", {}});
  return cfg_union({shorter, longer, mismatch});
}

Csg w_dollar_w_csg(std::size_t n) {
  if (n < 1) throw DomainError("w$w grammar needs n >= 1, got " + std::to_string(n));
  Cfg counter;
  const Symbol top = Doubler(counter, "Y").build(n);
  counter.nonterminals.push_back("Y");
  Csg g;
  g.start = "S";
  g.terminals = {"a", "b", "$"};
  g.nonterminals = {"S"};
  for (const auto& nt : counter.nonterminals) g.nonterminals.push_back(nt);
  for (const char* nt : {"A", "B", "W"}) g.nonterminals.push_back(nt);
  g.rules.push_back({{"S"}, {top, "W"}});
  for (const auto& r : counter.rules) g.rules.push_back({{r.lhs}, r.rhs});
  const std::vector<CsgRule> moves = {
      {{"Y"}, {"a", "A"}},      {{"Y"}, {"b", "B"}},      {{"A", "a"}, {"a", "A"}},
      {{"A", "b"}, {"b", "A"}}, {{"B", "a"}, {"a", "B"}}, {{"B", "b"}, {"b", "B"}},
      {{"A", "W"}, {"W", "a"}}, {{"B", "W"}, {"W", "b"}}, {{"W"}, {"$"}},
  };
  g.rules.insert(g.rules.end(), moves.begin(), moves.end());
  return g;
}

bool is_ww(const Word& w, std::size_t n) {
  if (w.size() != 2 * n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] != w[i + n]) return false;
  return true;
}

bool is_w_dollar_w(const Word& w, std::size_t n) {
  if (w.size() != 2 * n + 1 || w[n] != "$") return false;
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] == "$" || w[i] != w[i + n + 1]) return false;
  return true;
}

PredicateOracle not_ww_oracle(std::size_t n) {
  return {"builtin:not-ww(n=" + std::to_string(n) + ")", {"a", "b"},
          [n](const Word& w) { return !is_ww(w, n); }};
}

PredicateOracle w_dollar_w_oracle(std::size_t n) {
  return {"builtin:w-dollar-w(n=" + std::to_string(n) + ")", {"a", "b", "$"},
          [n](const Word& w) { return is_w_dollar_w(w, n); }};
}

GapWitness complement_ww_witness(std::size_t n) {
  GapWitness w;
  w.label = "complement of {ww : |w| = " + std::to_string(n) + "}";
  Cfg g = complement_ww_cfg(n);
  w.size = size_of(g);
  w.grammar = std::move(g);
  w.reference = not_ww_oracle(n);
  // Each counter part costs at most 2 lg of its length, plus the fixed
  // helper symbols of the three parts and the union start.
  w.claimed_bound = "6*lg(2n+1) + 7";
  w.bound_value = 6 * lg(2.0 * n + 1) + 7;
  return w;
}

GapWitness w_dollar_w_witness(std::size_t n) {
  GapWitness w;
  w.label = "{w$w : |w| = " + std::to_string(n) + "}";
  Csg g = w_dollar_w_csg(n);
  w.size = size_of(g);
  w.grammar = std::move(g);
  w.reference = w_dollar_w_oracle(n);
  w.claimed_bound = "2*lg(n) + 5";
  w.bound_value = 2 * lg(static_cast<double>(n)) + 5;
  return w;
}

}  // namespace succinct
