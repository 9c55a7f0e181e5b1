#include "succinct/pda_grammar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace succinct {

Cfg trim(const Cfg& g) {
  std::unordered_set<Symbol> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::unordered_set<Symbol> gen;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      if (gen.count(r.lhs)) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(),
                      [&](const Symbol& s) { return !nts.count(s) || gen.count(s); })) {
        gen.insert(r.lhs);
        changed = true;
      }
    }
  }
  std::vector<Rule> kept;
  for (const auto& r : g.rules) {
    if (gen.count(r.lhs) &&
        std::all_of(r.rhs.begin(), r.rhs.end(),
                    [&](const Symbol& s) { return !nts.count(s) || gen.count(s); })) {
      kept.push_back(r);
    }
  }
  std::unordered_set<Symbol> reach{g.start};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : kept) {
      if (!reach.count(r.lhs)) continue;
      for (const auto& s : r.rhs) {
        if (nts.count(s) && reach.insert(s).second) changed = true;
      }
    }
  }
  Cfg out;
  out.start = g.start;
  out.terminals = g.terminals;
  for (const auto& n : g.nonterminals) {
    if (n == g.start || (reach.count(n) && gen.count(n))) out.nonterminals.push_back(n);
  }
  for (const auto& r : kept) {
    if (reach.count(r.lhs)) out.rules.push_back(r);
  }
  return out;
}

TripleGrammar triple_construction(const PushdownAutomaton& p) {
  const int n = p.num_states();
  const int m = p.num_stack();
  const int p0 = n, pe = n + 1, states = n + 2;
  const int bottom = m, stack = m + 1;

  std::vector<PdaMove> moves;
  moves.push_back(PdaMove{p0, std::nullopt, bottom, p.start, {p.initial_stack, bottom}});
  for (const auto& mv : p.moves) moves.push_back(mv);
  for (int f = 0; f < n; ++f) {
    if (!p.accepting[f]) continue;
    for (int x = 0; x < stack; ++x) moves.push_back(PdaMove{f, std::nullopt, x, pe, {}});
  }
  for (int x = 0; x < stack; ++x) moves.push_back(PdaMove{pe, std::nullopt, x, pe, {}});

  std::map<std::pair<int, int>, std::vector<int>> by_state_top;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    by_state_top[{moves[i].from, moves[i].top}].push_back(static_cast<int>(i));
  }

  std::set<Symbol> terminal_set(p.alphabet.begin(), p.alphabet.end());
  Symbol start = "S";
  while (terminal_set.count(start)) start += "'";

  auto name = [](int a, int x, int b) {
    return "<" + std::to_string(a) + "|" + std::to_string(x) + "|" + std::to_string(b) + ">";
  };

  Cfg g;
  g.start = start;
  g.terminals = p.alphabet;
  g.nonterminals.push_back(start);

  using Triple = std::tuple<int, int, int>;
  std::set<Triple> seen;
  std::vector<Triple> work;
  auto need = [&](int a, int x, int b) {
    if (seen.insert({a, x, b}).second) {
      work.emplace_back(a, x, b);
      g.nonterminals.push_back(name(a, x, b));
    }
    return name(a, x, b);
  };
  for (int q = 0; q < states; ++q) g.rules.push_back(Rule{start, {need(p0, bottom, q)}});

  while (!work.empty()) {
    auto [a, x, b] = work.back();
    work.pop_back();
    const Symbol lhs = name(a, x, b);
    auto it = by_state_top.find({a, x});
    if (it == by_state_top.end()) continue;
    for (int mi : it->second) {
      const PdaMove& mv = moves[mi];
      std::vector<Symbol> prefix;
      if (mv.input) prefix.push_back(p.alphabet[*mv.input]);
      const std::size_t k = mv.push.size();
      if (k == 0) {
        if (mv.to == b) g.rules.push_back(Rule{lhs, prefix});
        continue;
      }
      // intermediate states q1..q_{k-1}; q_k = b
      std::vector<int> mid(k - 1, 0);
      while (true) {
        std::vector<Symbol> rhs = prefix;
        int cur = mv.to;
        for (std::size_t i = 0; i < k; ++i) {
          const int nxt = i + 1 < k ? mid[i] : b;
          rhs.push_back(need(cur, mv.push[i], nxt));
          cur = nxt;
        }
        g.rules.push_back(Rule{lhs, std::move(rhs)});
        std::size_t pos = 0;
        while (pos < mid.size() && ++mid[pos] == states) mid[pos++] = 0;
        if (pos == mid.size()) break;
      }
    }
  }

  TripleGrammar out;
  out.triples_generated = seen.size();
  out.adapted_states = static_cast<std::size_t>(states);
  out.adapted_stack = static_cast<std::size_t>(stack);
  out.grammar = trim(g);
  return out;
}

}  // namespace succinct
