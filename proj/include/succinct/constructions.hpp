#pragma once

// Logarithmic-size grammar families and the closures used to assemble them.

#include <functional>
#include <string>
#include <variant>

#include "succinct/devices.hpp"

namespace succinct {

enum class CounterMode { kExact, kAtMost, kAtLeast };

struct CounterGrammarSpec {
  std::size_t n = 2;
  CounterMode mode = CounterMode::kExact;
  /// Empty: the abstract single symbol "Y" is a terminal. Otherwise Y is a
  /// nonterminal with one rule Y -> t per listed terminal.
  Alphabet alphabet;
};

/// Nonterminal count of the doubling construction for Y^n, counting Y:
/// T(1)=1, T(2m)=T(m)+1, T(2m+1)=T(m)+2.
std::size_t counter_recurrence(std::size_t n);

/// Grammar for {Y^n}, {Y^k : k <= n} or {Y^k : k >= n} by repeated doubling.
/// With the abstract alphabet Y is a terminal, so size_of is one less than
/// counter_recurrence(n) in exact mode. Throws DomainError for n < 2.
Cfg counter_cfg(const CounterGrammarSpec& spec);

/// Fresh start with one alternative per part, parts renamed apart with the
/// suffix "_<i>" (1-based). Throws DomainError on an empty list.
Cfg cfg_union(const std::vector<Cfg>& parts);
/// Fresh start S -> S_1 S_2 over the renamed operands.
Cfg cfg_concat(const Cfg& g1, const Cfg& g2);

/// Complement of {ww : |w| = n} over {a, b}. Throws DomainError for n < 2.
Cfg complement_ww_cfg(std::size_t n);

/// Noncontracting grammar for {w$w : w in {a,b}^n}. Throws DomainError for
/// n < 1.
Csg w_dollar_w_csg(std::size_t n);

bool is_ww(const Word& w, std::size_t n);
bool is_w_dollar_w(const Word& w, std::size_t n);

PredicateOracle not_ww_oracle(std::size_t n);
PredicateOracle w_dollar_w_oracle(std::size_t n);

/// A grammar, the predicate it is claimed to decide, and its size claim.
struct GapWitness {
  std::string label;
  std::variant<Cfg, Csg> grammar;
  PredicateOracle reference;
  std::string claimed_bound;  // closed form, e.g. "2*lg(2n+1) + ..."
  double bound_value = 0;     // the closed form evaluated at n
  std::size_t size = 0;
  bool bound_satisfied() const { return static_cast<double>(size) <= bound_value; }
};

GapWitness complement_ww_witness(std::size_t n);
GapWitness w_dollar_w_witness(std::size_t n);

}  // namespace succinct
