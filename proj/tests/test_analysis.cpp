#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "succinct/analysis.hpp"
#include "succinct/constructions.hpp"
#include "succinct/io.hpp"
#include "succinct/tm_encodings.hpp"
#include "succinct/transforms.hpp"

using namespace succinct;
using namespace succinct::testing;

namespace {

std::optional<Word> brute_first_difference(const Dfa& a, const Dfa& b, std::size_t h) {
  std::optional<Word> out;
  for_each_word(a.alphabet, h, [&](const Word& w) {
    if (dfa_accepts(a, w) == dfa_accepts(b, w)) return true;
    out = w;
    return false;
  });
  return out;
}

}  // namespace

TEST_CASE("bounded_equiv examples") {
  const Dfa d = a_star_dfa();
  CHECK(bounded_equiv(Device(d), Device(d), {6}).equal);

  const Cfg exact = counter_cfg({4, CounterMode::kExact, {"a"}});
  const Cfg at_most = counter_cfg({4, CounterMode::kAtMost, {"a"}});
  auto r = bounded_equiv(Device(exact), Device(at_most), {6});
  REQUIRE_FALSE(r.equal);
  CHECK(*r.counterexample == Word{});
  CHECK_FALSE(r.first_accepts);

  auto ww = bounded_equiv(Device(complement_ww_cfg(3)), not_ww_oracle(3), {8});
  CHECK(ww.equal);
  CHECK(ww.words_checked == count_words_upto(2, 8));

  CHECK_THROWS_AS(bounded_equiv(Device(d), Device(d), {30}), BudgetExceeded);
  CHECK_THROWS_AS(bounded_equiv(Device(d), Device(d), {0}), DomainError);
}

TEST_CASE("bounded_equiv is symmetric and returns the length-lex first difference") {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Dfa a = random_dfa(rng, 4), b = random_dfa(rng, 4);
    auto ab = bounded_equiv(Device(a), Device(b), {6});
    auto ba = bounded_equiv(Device(b), Device(a), {6});
    CHECK(ab.equal == ba.equal);
    CHECK(ab.counterexample == ba.counterexample);
    CHECK(ab.counterexample == brute_first_difference(a, b, 6));
    if (!ab.equal) CHECK(ab.first_accepts != ba.first_accepts);
  }
}

TEST_CASE("foreign symbols are outside a language") {
  Cfg g = grammar({"S"}, {"a"}, {{"S", {"a"}}});
  Dfa d = a_star_dfa();  // over {a, b}
  auto r = bounded_equiv(Device(g), Device(d), {3});
  REQUIRE_FALSE(r.equal);
  CHECK(*r.counterexample == Word{});  // a* holds the empty word
}

TEST_CASE("emptiness and shortest members") {
  CHECK(cfg_emptiness(grammar({"S"}, {"a"}, {{"S", {"a", "S"}}})));
  CHECK_FALSE(cfg_emptiness(grammar({"S"}, {"a"}, {{"S", {"a"}}})));
  CHECK(cfg_shortest_member(grammar({"S"}, {"a", "b"}, {{"S", {"a", "S", "b"}}, {"S", {"a", "b"}}})) ==
        chars("ab"));
  CHECK(cfg_shortest_member(counter_cfg({4})) == repeat("Y", 4));
  CHECK(cfg_shortest_member(counter_cfg({1000, CounterMode::kExact, {"a"}}))->size() == 1000);
  CHECK_FALSE(cfg_shortest_member(grammar({"S"}, {"a"}, {})));
  // ties go to the alphabet order
  CHECK(cfg_shortest_member(grammar({"S"}, {"a", "b"}, {{"S", {"b"}}, {"S", {"a"}}})) == chars("a"));
  CHECK(cfg_shortest_member(grammar({"S"}, {"b", "a"}, {{"S", {"b"}}, {"S", {"a"}}})) == chars("b"));

  for (const auto* name : {"immediate_accept", "two_step", "right_runner", "parity", "right_step"}) {
    const TmMachine m = zoo(name);
    AccSpec spec;
    CHECK_FALSE(cfg_emptiness(complement_acc_cfg(m, spec, AccPolarity::kComplement)));
  }
}

TEST_CASE("shortest member agrees with exhaustive derivation on random grammars") {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Cfg g = random_cfg(rng, 3);
    const auto words = derivable_words(g, 6);
    const auto first = cfg_shortest_member(g);
    CHECK(cfg_emptiness(g) == !first.has_value());
    std::optional<Word> brute;
    for (const auto& w : words)
      if (!brute || length_lex_less(g.terminals, w, *brute)) brute = w;
    if (brute) {
      CHECK(first == brute);
    } else if (first) {
      CHECK(first->size() > 6);
    }
  }
}

TEST_CASE("device enumeration") {
  SUBCASE("one-nonterminal CNF grammars over {a}") {
    auto gs = enumerate_devices({DeviceClass::kCnfCfg, {"a"}}, 4);
    std::vector<std::vector<Rule>> rules;
    for (const auto& d : gs) rules.push_back(std::get<Cfg>(d).rules);
    CHECK(rules[0] == std::vector<Rule>{{"S", {"a"}}});
    CHECK(rules[1] == std::vector<Rule>{{"S", {"S", "S"}}});
    CHECK(rules[2] == std::vector<Rule>{{"S", {"a"}}, {"S", {"S", "S"}}});
    CHECK(size_of(gs[3]) == 2);
    CHECK(for_each_device({DeviceClass::kCnfCfg, {"a"}}, 1, [](const Device&) { return true; }) == 3);
  }
  SUBCASE("sizes ascend and runs repeat") {
    for (auto cls : {DeviceClass::kDfa, DeviceClass::kNfa, DeviceClass::kCnfCfg}) {
      auto a = enumerate_devices({cls, {"a", "b"}}, 300);
      auto b = enumerate_devices({cls, {"a", "b"}}, 300);
      for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(size_of(a[i]) <= size_of(a[i + 1]));
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(device_to_json(a[i]) == device_to_json(b[i]));
    }
  }
  SUBCASE("DFAs: one per isomorphism class of accessible automata") {
    // Brute force: every 3-state table over {a, b} with start 0, keep the
    // accessible ones and count classes under swapping states 1 and 2.
    const auto n = for_each_device({DeviceClass::kDfa, {"a", "b"}}, 3, [](const Device&) { return true; });
    std::set<std::pair<std::vector<int>, int>> full;
    for (int code = 0; code < 729; ++code) {
      std::vector<int> t(6);
      for (int i = 0, c = code; i < 6; ++i, c /= 3) t[i] = c % 3;
      std::set<int> seen{0};
      for (int pass = 0; pass < 3; ++pass)
        for (int q : std::set<int>(seen)) seen.insert({t[2 * q], t[2 * q + 1]});
      if (seen.size() != 3) continue;
      for (int acc = 0; acc < 8; ++acc) {
        std::vector<int> s(6);
        const int p[3] = {0, 2, 1};
        for (int q = 0; q < 3; ++q)
          for (int a = 0; a < 2; ++a) s[2 * p[q] + a] = p[t[2 * q + a]];
        const int sacc = (acc & 1) | ((acc >> 1 & 1) << 2) | ((acc >> 2 & 1) << 1);
        full.insert(std::min(std::pair(t, acc), std::pair(s, sacc)));
      }
    }
    CHECK(n == full.size());
  }
  SUBCASE("NFAs: canonical under renaming of non-start states") {
    // 3 states over {a}: 12 bits; orbits under swapping states 1 and 2.
    std::set<std::uint64_t> orbits;
    auto bit = [](int q, int r) { return q * 3 + r; };
    for (std::uint64_t b = 0; b < 4096; ++b) {
      std::uint64_t s = 0;
      const int p[3] = {0, 2, 1};
      for (int q = 0; q < 3; ++q) {
        for (int r = 0; r < 3; ++r)
          if ((b >> bit(q, r)) & 1) s |= std::uint64_t{1} << bit(p[q], p[r]);
        if ((b >> (9 + q)) & 1) s |= std::uint64_t{1} << (9 + p[q]);
      }
      orbits.insert(std::min(b, s));
    }
    CHECK(for_each_device({DeviceClass::kNfa, {"a"}}, 3, [](const Device&) { return true; }) ==
          orbits.size());
  }
  CHECK_THROWS_AS(enumerate_devices({DeviceClass::kDfa, {"a", "b"}}, 10'000, 100), BudgetExceeded);
}

TEST_CASE("minimal device search") {
  const Nfa l3 = third_from_end_nfa();
  SUBCASE("DFA class is exact through minimization") {
    auto r = min_device_search(Device(l3), DeviceClass::kDfa, {8});
    CHECK(r.size == 8);
    CHECK(r.exact);
    CHECK(bounded_equiv(r.witness, Device(l3), {10}).equal);
  }
  SUBCASE("NFA class finds a 4-state witness and rules out 3") {
    auto r = min_device_search(Device(l3), DeviceClass::kNfa, {8}, 50'000'000);
    CHECK(r.size == 4);
    CHECK(r.exact);
    const Dfa back = dfa_minimize(nfa_to_dfa(std::get<Nfa>(r.witness)).first);
    CHECK(back.num_states() == 8);
    CHECK(bounded_equiv(r.witness, Device(l3), {10}).equal);
  }
  SUBCASE("CNF class on {YY} is horizon bounded") {
    const Cfg yy = grammar({"S"}, {"Y"}, {{"S", {"Y", "Y"}}});
    auto r = min_device_search(Device(yy), DeviceClass::kCnfCfg, {6});
    CHECK(r.size == 2);
    CHECK_FALSE(r.exact);
    CHECK(bounded_equiv(r.witness, Device(yy), {6}).equal);
  }
  SUBCASE("a non-regular target against DFAs is horizon bounded") {
    auto r = min_device_search(not_ww_oracle(1), DeviceClass::kDfa, {3});
    CHECK_FALSE(r.exact);
    CHECK(bounded_equiv(r.witness, not_ww_oracle(1), {3}).equal);
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(min_device_search(Device(l3), DeviceClass::kNfa, {8}, 1000), BudgetExceeded);
  }
}

TEST_CASE("exact results re-check against the product method") {
  std::mt19937 rng(23);
  for (int i = 0; i < 30; ++i) {
    const Dfa d = random_dfa(rng, 3);
    auto r = min_device_search(Device(d), DeviceClass::kNfa, {6}, 5'000'000);
    REQUIRE(r.exact);
    auto [as_dfa, receipt] = nfa_to_dfa(std::get<Nfa>(r.witness));
    auto [x, rx] = dfa_product(dfa_minimize(as_dfa), dfa_complement(d), ProductOp::kAnd);
    auto [y, ry] = dfa_product(dfa_complement(dfa_minimize(as_dfa)), d, ProductOp::kAnd);
    for (const Dfa* p : {&x, &y}) {
      const Dfa m = dfa_minimize(*p);
      CHECK(std::none_of(m.accepting.begin(), m.accepting.end(), [](bool b) { return b; }));
    }
    CHECK(r.size <= dfa_minimize(d).state_names.size());
  }
}

TEST_CASE("bounding estimates") {
  auto one = bounding_estimate(DevicePair::kDfaOverNfa, 1, {8});
  // {eps} and a* come from one-state NFAs; a total DFA needs a sink for them
  CHECK(one.max == 2);
  CHECK_FALSE(one.truncated);
  std::size_t prev = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto e = bounding_estimate(DevicePair::kDfaOverNfa, n, {8});
    CHECK(e.max >= prev);
    CHECK(e.all_exact);
    prev = e.max;
  }
  auto nfa = bounding_estimate(DevicePair::kNfaOverDfa, 2, {6});
  CHECK(nfa.max <= 2);
  CHECK(nfa.failures == 0);
  auto cnf = bounding_estimate(DevicePair::kCnfOverDfa, 1, {5}, {5'000'000, 20'000, 256});
  CHECK(cnf.failures >= 1);  // the language of all words holds the empty word
  CHECK_FALSE(cnf.all_exact);
}
