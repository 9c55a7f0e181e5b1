#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "succinct/chart_parser.hpp"
#include "succinct/csg_search.hpp"
#include "succinct/devices.hpp"
#include "succinct/io.hpp"

using namespace succinct;
using namespace succinct::testing;

TEST_CASE("size_of follows the per-kind measure") {
  Pda p;
  p.state_names = {"a", "b", "c"};
  p.alphabet = {"x"};
  p.stack_names = {"Z", "A"};
  p.accepting = {false, false, true};
  CHECK(size_of(p) == 5);

  CHECK(size_of(grammar({"S"}, {"a"}, {{"S", {"a"}}})) == 1);

  Dfa d;
  d.state_names = {"0", "1", "2", "3"};
  d.alphabet = {"a"};
  d.delta = {{1}, {2}, {3}, {0}};
  d.accepting = {true, false, false, false};
  CHECK(size_of(d) == 4);
}

TEST_CASE("size_of rejects malformed devices") {
  Dfa d = a_star_dfa();
  d.delta[0][1] = 7;
  CHECK_THROWS_AS(size_of(d), ValidationError);
}

TEST_CASE("member on small grammars") {
  Cfg g = grammar({"S", "Y"}, {"a", "b"}, {{"S", {"Y", "Y"}}, {"Y", {"a"}}, {"Y", {"b"}}});
  CHECK(member(g, chars("ab")));
  CHECK(derivable_words(g, 2).count(chars("ab")) == 1);
  CHECK_FALSE(member(g, chars("a")));
  CHECK_THROWS_AS(member(g, chars("ac")), InputError);

  Cfg yy = grammar({"S"}, {"Y"}, {{"S", {"Y", "Y"}}});
  CHECK_FALSE(member(yy, {"Y"}));
  CHECK(member(yy, {"Y", "Y"}));
}

TEST_CASE("validate reports violations") {
  CHECK(validate(a_star_dfa()).empty());

  Cfg bad = grammar({"S"}, {"a"}, {{"S", {"a", "Q"}}});
  auto v = validate(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("'Q'") != std::string::npos);

  Dpda d = anbn_dpda();
  d.moves.push_back({0, 0, 0, 1, {0}});  // second move on (q0, a, Z)
  v = validate(d);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].find("determinism violation at (q0, Z)") != std::string::npos);
  CHECK(validate(pda_view(d)).empty());

  Csg c{{"S", "A"}, {"a"}, {{{"S"}, {"a", "A"}}, {{"A", "a"}, {"a"}}}, "S"};
  v = validate(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("contracting") != std::string::npos);
}

TEST_CASE("DFA membership agrees with its NFA view") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Dfa d;
    const int n = 1 + static_cast<int>(rng() % 5);
    d.alphabet = {"a", "b"};
    for (int q = 0; q < n; ++q) {
      d.state_names.push_back(std::to_string(q));
      d.delta.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
      d.accepting.push_back(rng() % 2 == 0);
    }
    const Nfa view = nfa_view(d);
    for_each_word(d.alphabet, 6, [&](const Word& w) {
      REQUIRE(dfa_accepts(d, w) == nfa_accepts(view, w));
      return true;
    });
  }
}

TEST_CASE("chart parser agrees with exhaustive derivation on random grammars") {
  std::mt19937 rng(2024);
  const Alphabet ab{"a", "b"};
  for (int trial = 0; trial < 300; ++trial) {
    Cfg g = random_cfg(rng, 4);
    const auto lang = derivable_words(g, 6);
    ChartParser parser(std::make_shared<const CompiledGrammar>(g));
    for_each_word(ab, 6, [&](const Word& w) {
      INFO("grammar\n" << format_grammar(g) << "word " << to_string(w));
      REQUIRE(parser.recognize(w) == (lang.count(w) > 0));
      return true;
    });
  }
}

TEST_CASE("chart parser prefix queries") {
  // S -> a U, U -> a U | b U | eps : every word starting with a
  Cfg g = grammar({"S", "U"}, {"a", "b"},
                  {{"S", {"a", "U"}}, {"U", {"a", "U"}}, {"U", {"b", "U"}}, {"U", {}}});
  auto cg = std::make_shared<const CompiledGrammar>(g);
  CHECK(cg->universal(1));
  ChartParser p(cg);
  CHECK(p.viable());
  CHECK_FALSE(p.all_accepted());
  p.push(cg->terminal_id("a"));
  CHECK(p.all_accepted());
  p.pop();
  p.push(cg->terminal_id("b"));
  CHECK_FALSE(p.viable());

  // Universal suffix reached through an enclosing context:
  // S -> T U, T -> a b ; U universal
  Cfg h = grammar({"S", "T", "U"}, {"a", "b"},
                  {{"S", {"T", "U"}}, {"T", {"a", "b"}}, {"U", {"a", "U"}}, {"U", {"b", "U"}}, {"U", {}}});
  ChartParser q(std::make_shared<const CompiledGrammar>(h));
  q.push(0);
  CHECK_FALSE(q.all_accepted());
  q.push(1);
  CHECK(q.all_accepted());
  CHECK(q.accepted());
}

TEST_CASE("CSG search budget is monotone-safe") {
  // a^n b^n c^n, n >= 1 (classic noncontracting grammar)
  Csg g{{"S", "B", "C"},
        {"a", "b", "c"},
        {{{"S"}, {"a", "S", "B", "C"}},
         {{"S"}, {"a", "B", "C"}},
         {{"C", "B"}, {"B", "C"}},
         {{"a", "B"}, {"a", "b"}},
         {{"b", "B"}, {"b", "b"}},
         {{"b", "C"}, {"b", "c"}},
         {{"c", "C"}, {"c", "c"}}},
        "S"};
  REQUIRE(validate(g).empty());
  const Word w = chars("aabbcc");
  CHECK_THROWS_AS(member(g, w, 3), BudgetExceeded);
  bool last = false;
  for (std::size_t budget : {50u, 500u, 5000u, 50000u}) {
    try {
      bool r = member(g, w, budget);
      CHECK((r || !last));
      last = r;
    } catch (const BudgetExceeded&) {
      CHECK_FALSE(last);
    }
  }
  CHECK(last);
  CHECK_FALSE(member(g, chars("aabbc")));
  CHECK_FALSE(member(g, chars("abcabc")));

  CsgSearch s(g, 100000);
  for_each_word({"a", "b", "c"}, 6, [&](const Word& x) {
    REQUIRE(s.derives_cached(x) == s.derives(x));
    return true;
  });
}

TEST_CASE("DPDA simulation") {
  const Dpda d = anbn_dpda();
  CHECK(dpda_accepts(d, chars("ab")));
  CHECK(dpda_accepts(d, chars("aaabbb")));
  CHECK_FALSE(dpda_accepts(d, chars("")));
  CHECK_FALSE(dpda_accepts(d, chars("aab")));
  CHECK_FALSE(dpda_accepts(d, chars("abb")));
  CHECK_FALSE(dpda_accepts(d, chars("ba")));

  const Pda view = pda_view(d);
  for_each_word(d.alphabet, 8, [&](const Word& w) {
    REQUIRE(dpda_accepts(d, w) == member(view, w));
    return true;
  });
}

TEST_CASE("DPDA epsilon loops terminate") {
  // (q0, Z) pushes forever after reading one a; (q1, Z) cycles q1 <-> q2 in
  // place; q2 is accepting, so "b" is accepted by the loop.
  Dpda d;
  d.state_names = {"q0", "qpush", "q1", "q2"};
  d.alphabet = {"a", "b"};
  d.stack_names = {"Z"};
  d.accepting = {false, false, false, true};
  d.moves = {
      {0, 0, 0, 1, {0}},
      {1, std::nullopt, 0, 1, {0, 0}},
      {0, 1, 0, 2, {0}},
      {2, std::nullopt, 0, 3, {0}},
      {3, std::nullopt, 0, 2, {0}},
  };
  REQUIRE(validate(d).empty());
  CHECK_FALSE(dpda_accepts(d, chars("a")));
  CHECK_FALSE(dpda_accepts(d, chars("aa")));
  CHECK(dpda_accepts(d, chars("b")));
  CHECK_FALSE(dpda_accepts(d, chars("ba")));
  CHECK_FALSE(dpda_accepts(d, chars("")));
  const Pda view = pda_view(d);
  for_each_word(d.alphabet, 5, [&](const Word& w) {
    REQUIRE(dpda_accepts(d, w) == member(view, w));
    return true;
  });
}

TEST_CASE("grammar text round-trips") {
  const std::string text =
      "# comment\n"
      "S -> Y Y | _eps_\n"
      "Y -> a | b   # trailing\n";
  Cfg g = parse_cfg(text);
  CHECK(g.start == "S");
  CHECK(g.nonterminals == std::vector<Symbol>{"S", "Y"});
  CHECK(g.terminals == std::vector<Symbol>{"a", "b"});
  REQUIRE(g.rules.size() == 4);
  CHECK(g.rules[1].rhs.empty());
  Cfg again = parse_cfg(format_grammar(g));
  CHECK(again.rules == g.rules);
  CHECK(again.nonterminals == g.nonterminals);
  CHECK(format_grammar(again) == format_grammar(g));

  CHECK_THROWS_AS(parse_cfg("S a b\n"), ParseError);
  CHECK_THROWS_AS(parse_cfg("S -> a | | b\n"), ParseError);
}

TEST_CASE("automaton JSON round-trips") {
  for (const Device& d : {Device{a_star_dfa()}, Device{third_from_end_nfa()}, Device{anbn_dpda()}}) {
    auto j = automaton_to_json(d);
    Device back = automaton_from_json(j);
    CHECK(kind_name(back) == kind_name(d));
    CHECK(automaton_to_json(back) == j);
  }
  CHECK_THROWS_AS(automaton_from_json(nlohmann::json{{"kind", "DFA"}}), ParseError);
}
