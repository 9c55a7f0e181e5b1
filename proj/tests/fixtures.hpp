#pragma once

#include <random>

#include "succinct/devices.hpp"
#include "succinct/tm_encodings.hpp"

namespace succinct::testing {

inline Cfg grammar(std::vector<Symbol> nts, std::vector<Symbol> ts, std::vector<Rule> rules) {
  Cfg g{std::move(nts), std::move(ts), std::move(rules), {}};
  g.start = g.nonterminals.front();
  return g;
}

/// {a^n b^n : n >= 1}
inline Dpda anbn_dpda() {
  Dpda d;
  d.state_names = {"q0", "q1", "qf"};
  d.alphabet = {"a", "b"};
  d.stack_names = {"Z", "A"};
  d.start = 0;
  d.initial_stack = 0;
  d.accepting = {false, false, true};
  d.moves = {
      {0, 0, 0, 0, {1, 0}},           // q0 a Z -> q0 AZ
      {0, 0, 1, 0, {1, 1}},           // q0 a A -> q0 AA
      {0, 1, 1, 1, {}},               // q0 b A -> q1
      {1, 1, 1, 1, {}},               // q1 b A -> q1
      {1, std::nullopt, 0, 2, {0}},   // q1 eps Z -> qf
  };
  return d;
}

/// Accepts every word over {a, b}.
inline Dpda all_dpda() {
  Dpda d;
  d.state_names = {"q"};
  d.alphabet = {"a", "b"};
  d.stack_names = {"Z"};
  d.accepting = {true};
  d.moves = {{0, 0, 0, 0, {0}}, {0, 1, 0, 0, {0}}};
  return d;
}

/// NFA for "a in the third position from the end" over {a, b}.
inline Nfa third_from_end_nfa() {
  Nfa n;
  n.state_names = {"0", "1", "2", "3"};
  n.alphabet = {"a", "b"};
  n.delta = {{{0, 1}, {0}}, {{2}, {2}}, {{3}, {3}}, {{}, {}}};
  n.accepting = {false, false, false, true};
  return n;
}

/// a* over {a, b}: states 0 (live, accepting), 1 (sink).
inline Dfa a_star_dfa() {
  Dfa d;
  d.state_names = {"live", "sink"};
  d.alphabet = {"a", "b"};
  d.delta = {{0, 1}, {1, 1}};
  d.accepting = {true, false};
  return d;
}

/// Words of even length over {a, b}.
inline Dfa even_length_dfa() {
  Dfa d;
  d.state_names = {"even", "odd"};
  d.alphabet = {"a", "b"};
  d.delta = {{1, 1}, {0, 0}};
  d.accepting = {true, false};
  return d;
}

/// Random deterministic PDA over {a, b}. Each (state, top) gets either one
/// epsilon move or a random subset of input moves; pushes have length 0..2.
inline Dpda random_dpda(std::mt19937& rng, int max_states, int max_stack) {
  std::uniform_int_distribution<int> qs(1, max_states), xs(1, max_stack), len(0, 2), pct(0, 99);
  Dpda d;
  const int n = qs(rng), m = xs(rng);
  for (int q = 0; q < n; ++q) d.state_names.push_back("q" + std::to_string(q));
  for (int x = 0; x < m; ++x) d.stack_names.push_back("X" + std::to_string(x));
  d.alphabet = {"a", "b"};
  for (int q = 0; q < n; ++q) d.accepting.push_back(pct(rng) < 40);
  auto push = [&] {
    std::vector<int> p(len(rng));
    for (int& x : p) x = static_cast<int>(rng() % m);
    return p;
  };
  for (int q = 0; q < n; ++q) {
    for (int x = 0; x < m; ++x) {
      if (pct(rng) < 30) {
        d.moves.push_back({q, std::nullopt, x, static_cast<int>(rng() % n), push()});
        continue;
      }
      for (int a = 0; a < 2; ++a) {
        if (pct(rng) < 75) d.moves.push_back({q, a, x, static_cast<int>(rng() % n), push()});
      }
    }
  }
  return d;
}

/// Random TM over tape {_, a} with 1..max_work working states plus accept
/// and reject; every working transition is drawn uniformly.
inline Nfa random_nfa(std::mt19937& rng, int max_states) {
  std::uniform_int_distribution<int> qs(1, max_states), pct(0, 99);
  Nfa n;
  const int k = qs(rng);
  n.alphabet = Alphabet{"a", "b"};
  for (int q = 0; q < k; ++q) {
    n.state_names.push_back(std::to_string(q));
    n.accepting.push_back(pct(rng) < 35);
    n.delta.push_back({{}, {}});
    n.epsilon.push_back({});
    for (int r = 0; r < k; ++r) {
      for (int a = 0; a < 2; ++a)
        if (pct(rng) < 30) n.delta[q][a].push_back(r);
      if (r != q && pct(rng) < 10) n.epsilon[q].push_back(r);
    }
  }
  return n;
}

inline Dfa random_dfa(std::mt19937& rng, int max_states) {
  std::uniform_int_distribution<int> qs(1, max_states);
  Dfa d;
  const int k = qs(rng);
  d.alphabet = Alphabet{"a", "b"};
  for (int q = 0; q < k; ++q) {
    d.state_names.push_back(std::to_string(q));
    d.accepting.push_back(rng() % 3 == 0);
    d.delta.push_back({static_cast<int>(rng() % k), static_cast<int>(rng() % k)});
  }
  return d;
}

inline TmMachine random_tm(std::mt19937& rng, int max_work) {
  std::uniform_int_distribution<int> ws(1, max_work);
  TmMachine m;
  const int k = ws(rng);
  for (int q = 0; q < k; ++q) m.states.push_back("q" + std::to_string(q));
  m.states.push_back("acc");
  m.states.push_back("rej");
  m.tape = {"_", "a"};
  m.blank = 0;
  m.input = {"a"};
  m.start = 0;
  m.accept = k;
  m.reject = k + 1;
  m.delta.assign(k + 2, std::vector<std::optional<TmAction>>(2));
  for (int q = 0; q < k; ++q)
    for (int s = 0; s < 2; ++s)
      m.delta[q][s] = TmAction{static_cast<int>(rng() % (k + 2)), static_cast<int>(rng() % 2),
                               rng() % 2 ? Move::kLeft : Move::kRight};
  return m;
}

inline TmMachine zoo(const std::string& name) {
  return load_tm(std::string(SUCCINCT_ZOO_DIR) + "/" + name + ".json");
}

inline bool third_from_end(const Word& w) { return w.size() >= 3 && w[w.size() - 3] == "a"; }

}  // namespace succinct::testing
