#pragma once

// Independent reference procedures used only by tests. None of these share
// code paths with the library engines they check.

#include <map>
#include <random>
#include <set>
#include <string>

#include "succinct/devices.hpp"

namespace succinct::testing {

/// Every terminal word of length <= max_len derivable from each nonterminal,
/// computed bottom-up to a fixpoint by concatenating the languages of rule
/// right-hand sides. Exhaustive derivation enumeration, no parsing.
inline std::set<Word> derivable_words(const Cfg& g, std::size_t max_len) {
  std::set<Symbol> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::map<Symbol, std::set<Word>> lang;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      std::set<Word> partial{Word{}};
      for (const auto& s : r.rhs) {
        std::set<Word> next;
        const std::set<Word> single{Word{s}};
        const std::set<Word>& options = nts.count(s) ? lang[s] : single;
        for (const auto& p : partial) {
          for (const auto& o : options) {
            if (p.size() + o.size() > max_len) continue;
            Word w = p;
            w.insert(w.end(), o.begin(), o.end());
            next.insert(std::move(w));
          }
        }
        partial = std::move(next);
        if (partial.empty()) break;
      }
      auto& target = lang[r.lhs];
      for (auto& w : partial) changed = target.insert(w).second || changed;
    }
  }
  return lang[g.start];
}

/// Random CFG with up to `max_nts` nonterminals over {a, b}; rule bodies of
/// length 0..3 drawn from all symbols.
inline Cfg random_cfg(std::mt19937& rng, int max_nts) {
  std::uniform_int_distribution<int> nts_d(1, max_nts), rules_d(1, 6), len_d(0, 3);
  const int n = nts_d(rng);
  Cfg g;
  for (int i = 0; i < n; ++i) g.nonterminals.push_back("N" + std::to_string(i));
  g.terminals = {"a", "b"};
  g.start = "N0";
  std::vector<Symbol> all = g.nonterminals;
  all.insert(all.end(), g.terminals.begin(), g.terminals.end());
  std::uniform_int_distribution<std::size_t> sym_d(0, all.size() - 1);
  std::uniform_int_distribution<int> lhs_d(0, n - 1);
  const int rules = rules_d(rng) + n;
  for (int i = 0; i < rules; ++i) {
    Rule r{g.nonterminals[lhs_d(rng)], {}};
    const int len = len_d(rng);
    for (int k = 0; k < len; ++k) r.rhs.push_back(all[sym_d(rng)]);
    g.rules.push_back(std::move(r));
  }
  return g;
}

inline bool is_ww(const Word& x, std::size_t n) {
  if (x.size() != 2 * n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != x[i + n]) return false;
  }
  return true;
}

inline bool is_w_dollar_w(const Word& x, std::size_t n) {
  if (x.size() != 2 * n + 1 || x[n] != "$") return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == "$" || x[i] != x[i + n + 1]) return false;
  }
  return true;
}

}  // namespace succinct::testing
