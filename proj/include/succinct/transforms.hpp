#pragma once

// Size-bounded conversions and closures, each returning a receipt that
// compares the output size with the closed-form bound of the conversion.

#include <string>
#include <utility>

#include "succinct/devices.hpp"

namespace succinct {

struct ConversionReceipt {
  std::string conversion;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  std::string claimed_bound;
  double bound_value = 0;
  bool bound_satisfied = false;
  std::string note;
};

/// Reachable-subset construction. The empty subset appears only when some
/// move leads to it.
std::pair<Dfa, ConversionReceipt> nfa_to_dfa(const Nfa& n);

Dfa dfa_complement(const Dfa& d);

enum class ProductOp { kAnd, kOr };
/// Reachable part of the product automaton. Throws DomainError when the
/// alphabets differ.
std::pair<Dfa, ConversionReceipt> dfa_product(const Dfa& a, const Dfa& b, ProductOp op);

/// Minimal DFA by partition refinement over the reachable part; states are
/// numbered in breadth-first order from the start, so equal languages give
/// identical automata.
Dfa dfa_minimize(const Dfa& d);

/// Single-loop predictive PDA accepting by final state: stack alphabet is
/// nonterminals + terminals + a bottom marker, three states.
inline constexpr std::size_t kCfgToPdaOverhead = 4;
std::pair<Pda, ConversionReceipt> cfg_to_pda(const Cfg& g);

/// Triple construction behind a final-state -> empty-stack adapter, then
/// useless-symbol elimination.
std::pair<Cfg, ConversionReceipt> pda_to_cfg(const Pda& p);

/// Complement within DPDAs: new bottom marker, completion with a rejecting
/// sink, divergent epsilon loops rewired to sinks, then an accepting-visit
/// flag so acceptance can be decided once the epsilon moves after the last
/// input symbol are exhausted. Throws ValidationError on a nondeterministic
/// input.
std::pair<Dpda, ConversionReceipt> dpda_complement(const Dpda& d);

}  // namespace succinct
