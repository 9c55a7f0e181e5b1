#pragma once

// Exhaustive grammar-vs-oracle sweeps built on prefix_sweep and the
// incremental chart parser.

#include <functional>
#include <memory>

#include "succinct/chart_parser.hpp"
#include "succinct/sweep.hpp"
#include "succinct/tm_encodings.hpp"

namespace succinct {

/// Grammar vs ACC-family oracle. With `negate` the grammar must accept
/// exactly the words the oracle rejects. Subtrees are skipped once the oracle
/// reports a dead prefix and the parser has settled on the matching verdict.
class GrammarOracleHooks : public SweepHooks {
 public:
  GrammarOracleHooks(const Cfg& g, const AccOracle& oracle, bool negate);

  void push(int symbol) override { parser_.push(ids_[symbol]); }
  void pop() override { parser_.pop(); }
  bool settled(const Word& prefix) override;
  bool agree(const Word& w) override;

 private:
  std::shared_ptr<CompiledGrammar> compiled_;
  ChartParser parser_;
  const AccOracle& oracle_;
  bool negate_;
  std::vector<int> ids_;
};

/// oddacc AND evenacc against acc.
class IntersectionHooks : public SweepHooks {
 public:
  IntersectionHooks(const AccOracle& odd, const AccOracle& even, const AccOracle& acc)
      : odd_(odd), even_(even), acc_(acc) {}
  void push(int) override {}
  void pop() override {}
  bool settled(const Word& p) override;
  bool agree(const Word& w) override;

 private:
  const AccOracle &odd_, &even_, &acc_;
};

/// Grammar vs an arbitrary predicate on every word up to the horizon, parsing
/// incrementally along the trie. No pruning.
SweepResult sweep_grammar(const Cfg& g, const PredicateOracle& reference, std::size_t horizon);

SweepResult sweep_acc_grammar(const Cfg& g, const AccOracle& oracle, bool negate, std::size_t horizon);

}  // namespace succinct
