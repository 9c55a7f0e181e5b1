#include "succinct/sweep.hpp"

namespace succinct {
namespace {

bool walk(const Alphabet& alphabet, std::size_t horizon, SweepHooks& hooks, Word& w,
          SweepResult& r) {
  if (hooks.settled(w)) {
    ++r.pruned;
    return true;
  }
  ++r.checked;
  if (!hooks.agree(w)) {
    r.counterexample = w;
    return false;
  }
  if (w.size() == horizon) return true;
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    w.push_back(alphabet[a]);
    hooks.push(static_cast<int>(a));
    const bool ok = walk(alphabet, horizon, hooks, w, r);
    hooks.pop();
    w.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

SweepResult prefix_sweep(const Alphabet& alphabet, std::size_t horizon, SweepHooks& hooks) {
  SweepResult r;
  Word w;
  walk(alphabet, horizon, hooks, w, r);
  return r;
}

}  // namespace succinct
