#include "succinct/verify.hpp"

namespace succinct {

GrammarOracleHooks::GrammarOracleHooks(const Cfg& g, const AccOracle& oracle, bool negate)
    : compiled_(std::make_shared<CompiledGrammar>(g, oracle.alphabet())),
      parser_(compiled_),
      oracle_(oracle),
      negate_(negate) {
  for (const auto& s : oracle.alphabet()) ids_.push_back(compiled_->terminal_id(s));
}

bool GrammarOracleHooks::settled(const Word& prefix) {
  if (!oracle_.prefix_dead(prefix)) return false;
  return negate_ ? parser_.all_accepted() : !parser_.viable();
}

bool GrammarOracleHooks::agree(const Word& w) {
  return parser_.accepted() == (oracle_.accepts(w) != negate_);
}

bool IntersectionHooks::settled(const Word& p) {
  return acc_.prefix_dead(p) && (odd_.prefix_dead(p) || even_.prefix_dead(p));
}

bool IntersectionHooks::agree(const Word& w) {
  return (odd_.accepts(w) && even_.accepts(w)) == acc_.accepts(w);
}

namespace {

class PlainHooks : public SweepHooks {
 public:
  PlainHooks(const Cfg& g, const PredicateOracle& ref)
      : compiled_(std::make_shared<CompiledGrammar>(g, ref.alphabet)), parser_(compiled_), ref_(ref) {
    for (const auto& s : ref.alphabet) ids_.push_back(compiled_->terminal_id(s));
  }
  void push(int symbol) override { parser_.push(ids_[symbol]); }
  void pop() override { parser_.pop(); }
  bool settled(const Word&) override { return false; }
  bool agree(const Word& w) override { return parser_.accepted() == ref_.accepts(w); }

 private:
  std::shared_ptr<CompiledGrammar> compiled_;
  ChartParser parser_;
  const PredicateOracle& ref_;
  std::vector<int> ids_;
};

}  // namespace

SweepResult sweep_grammar(const Cfg& g, const PredicateOracle& reference, std::size_t horizon) {
  PlainHooks hooks(g, reference);
  return prefix_sweep(reference.alphabet, horizon, hooks);
}

SweepResult sweep_acc_grammar(const Cfg& g, const AccOracle& oracle, bool negate, std::size_t horizon) {
  GrammarOracleHooks hooks(g, oracle, negate);
  return prefix_sweep(oracle.alphabet(), horizon, hooks);
}

}  // namespace succinct
