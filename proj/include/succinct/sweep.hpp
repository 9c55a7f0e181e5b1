#pragma once

// Depth-first walk over the trie of all words up to a horizon, with
// caller-supplied pruning. In the bounded verification sweeps a subtree
// can often be settled from its prefix alone (both sides reject every extension, or one side accepts all of them
// while the other rejects all of them).

#include <cstdint>
#include <optional>

#include "succinct/word.hpp"

namespace succinct {

class SweepHooks {
 public:
  virtual ~SweepHooks() = default;
  /// Extend / shrink the current prefix by one symbol (index into the
  /// alphabet). Incremental state such as a chart parser lives here.
  virtual void push(int symbol) = 0;
  virtual void pop() = 0;
  /// True when every extension of `prefix` is known to agree, so the
  /// subtree below it can be skipped.
  virtual bool settled(const Word& prefix) = 0;
  /// True when both sides agree on `w` itself.
  virtual bool agree(const Word& w) = 0;
};

struct SweepResult {
  std::uint64_t checked = 0;  // words compared directly
  std::uint64_t pruned = 0;   // subtrees skipped
  std::optional<Word> counterexample;
};

/// Stops at the first disagreement.
SweepResult prefix_sweep(const Alphabet& alphabet, std::size_t horizon, SweepHooks& hooks);

}  // namespace succinct
