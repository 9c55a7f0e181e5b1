#pragma once

#include <vector>

#include "succinct/devices.hpp"

namespace succinct {

/// Move lookup for a deterministic pushdown automaton.
struct DpdaTables {
  int states = 0, stack = 0, symbols = 0;
  std::vector<int> eps;    // [q*stack + X] -> move index or -1
  std::vector<int> input;  // [(q*stack + X)*symbols + a] -> move index or -1

  int eps_move(int q, int x) const { return eps[q * stack + x]; }
  int input_move(int q, int x, int a) const {
    return input[(q * stack + x) * symbols + a];
  }
};

/// Throws ValidationError when the determinism condition fails.
DpdaTables dpda_tables(const PushdownAutomaton& d);

/// One epsilon step of a chain, recorded before the move is applied.
struct ChainVisit {
  int state;
  int top;
  std::size_t height;
};

/// True when `now` closes a divergent epsilon loop: an earlier visit with the
/// same (state, top) at height h such that the stack never dropped below h in
/// between and `now` is at height >= h. The moves in between never touched
/// the stack below that top, so they repeat forever.
bool closes_epsilon_loop(const std::vector<ChainVisit>& chain, const ChainVisit& now);

enum class ChainOutcome {
  kBlocked,   // reached a configuration with no epsilon move
  kPopsOut,   // popped the starting symbol's slot; continues on what lies below
  kDiverges,  // infinite epsilon loop above the starting slot
};

struct ChainSummary {
  ChainOutcome outcome;
  bool visits_accepting;  // some state along the chain (start excluded) accepts
};

/// Runs the epsilon chain from state q with a lone X on the stack, without
/// looking below X.
ChainSummary epsilon_chain(const PushdownAutomaton& d, const DpdaTables& t, int q, int x);

}  // namespace succinct
