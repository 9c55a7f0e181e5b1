#pragma once

#include "succinct/devices.hpp"

namespace succinct {

/// Output of the triple construction applied to a final-state PDA.
struct TripleGrammar {
  Cfg grammar;
  /// |Q'| and |Gamma'| of the empty-stack machine the triples range over
  /// (original sets plus the adapter's two states and bottom marker).
  std::size_t adapted_states = 0;
  std::size_t adapted_stack = 0;
  /// Triples generated before useless-symbol elimination (start excluded).
  std::size_t triples_generated = 0;
};

/// Final-state -> empty-stack adapter followed by the classical triple
/// construction <p,X,q>. Triples are generated on demand from the start
/// symbol, then non-generating and unreachable nonterminals are removed.
TripleGrammar triple_construction(const PushdownAutomaton& p);

/// Removes non-generating, then unreachable, nonterminals and their rules.
/// Terminals are kept as declared. The start symbol is always kept.
Cfg trim(const Cfg& g);

}  // namespace succinct
