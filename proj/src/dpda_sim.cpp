#include "succinct/dpda_sim.hpp"

#include <algorithm>

namespace succinct {

DpdaTables dpda_tables(const PushdownAutomaton& d) {
  DpdaTables t;
  t.states = d.num_states();
  t.stack = d.num_stack();
  t.symbols = static_cast<int>(d.alphabet.size());
  t.eps.assign(static_cast<std::size_t>(t.states) * t.stack, -1);
  t.input.assign(static_cast<std::size_t>(t.states) * t.stack * t.symbols, -1);
  std::vector<int> input_count(static_cast<std::size_t>(t.states) * t.stack, 0);
  for (std::size_t i = 0; i < d.moves.size(); ++i) {
    const auto& m = d.moves[i];
    const int key = m.from * t.stack + m.top;
    const std::string where =
        "(" + d.state_names[m.from] + ", " + d.stack_names[m.top] + ")";
    if (!m.input) {
      if (t.eps[key] >= 0) throw ValidationError("two epsilon moves at " + where);
      t.eps[key] = static_cast<int>(i);
    } else {
      int& slot = t.input[key * t.symbols + *m.input];
      if (slot >= 0) {
        throw ValidationError("two moves on " + d.alphabet[*m.input] + " at " + where);
      }
      slot = static_cast<int>(i);
      ++input_count[key];
    }
    if (t.eps[key] >= 0 && input_count[key] > 0) {
      throw ValidationError("epsilon and input moves coexist at " + where);
    }
  }
  return t;
}

bool closes_epsilon_loop(const std::vector<ChainVisit>& chain, const ChainVisit& now) {
  std::size_t low = now.height;
  for (std::size_t j = chain.size(); j-- > 0;) {
    const ChainVisit& v = chain[j];
    low = std::min(low, v.height);
    if (v.state == now.state && v.top == now.top && low >= v.height) return true;
  }
  return false;
}

ChainSummary epsilon_chain(const PushdownAutomaton& d, const DpdaTables& t, int q, int x) {
  std::vector<int> stack{x};
  std::vector<ChainVisit> chain;
  int state = q;
  bool accepting = false;
  while (true) {
    if (stack.empty()) return {ChainOutcome::kPopsOut, accepting};
    const int top = stack.back();
    const int mi = t.eps_move(state, top);
    if (mi < 0) return {ChainOutcome::kBlocked, accepting};
    const ChainVisit now{state, top, stack.size()};
    if (closes_epsilon_loop(chain, now)) return {ChainOutcome::kDiverges, accepting};
    chain.push_back(now);
    const PdaMove& m = d.moves[mi];
    stack.pop_back();
    for (auto it = m.push.rbegin(); it != m.push.rend(); ++it) stack.push_back(*it);
    state = m.to;
    accepting = accepting || d.accepting[state];
  }
}

}  // namespace succinct
