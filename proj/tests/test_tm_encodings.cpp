#include <doctest.h>

#include "acc_sweeps.hpp"
#include "fixtures.hpp"
#include "succinct/tm_encodings.hpp"

using namespace succinct;
using namespace succinct::testing;

namespace {

Word names_of(const TmMachine& m, const std::vector<int>& cells) {
  const Alphabet a = encoding_alphabet(m);
  Word w;
  for (int c : cells) w.push_back(a[c]);
  return w;
}

Word block(const TmMachine& m, const TmConfig& c, bool reversed) {
  auto cells = config_cells(CellCodec(m), c);
  if (reversed) std::reverse(cells.begin(), cells.end());
  return names_of(m, cells);
}

Word join(const std::vector<Word>& blocks) {
  Word w{"$"};
  for (const auto& b : blocks) {
    w.insert(w.end(), b.begin(), b.end());
    w.push_back("$");
  }
  return w;
}

Word accepted_encoding(const TmMachine& m, const Word& x) {
  auto r = run_trace(m, x);
  REQUIRE(r.trace);
  REQUIRE(r.trace->accepted);
  return encode_trace(m, *r.trace);
}

}  // namespace

TEST_CASE("machine JSON and validation") {
  const TmMachine m = zoo("two_step");
  CHECK(validate(m).empty());
  CHECK(m.num_states() == 4);
  const TmMachine back = tm_from_json(tm_to_json(m));
  CHECK(tm_to_json(back) == tm_to_json(m));

  auto j = tm_to_json(m);
  j["transitions"].erase(0);
  CHECK_THROWS_AS(tm_from_json(j), ParseError);  // (q0, a) missing
  j = tm_to_json(m);
  j["transitions"][0][4] = "S";
  CHECK_THROWS_AS(tm_from_json(j), ParseError);
  j = tm_to_json(m);
  j["tapeAlphabet"].push_back("$");
  CHECK_THROWS_AS(tm_from_json(j), ParseError);
  CHECK_THROWS_AS(load_tm("/nonexistent/machine.json"), ParseError);
}

TEST_CASE("run_trace examples") {
  SUBCASE("immediate accept pads to two configs") {
    const TmMachine m = zoo("immediate_accept");
    auto r = run_trace(m, {});
    REQUIRE(r.trace);
    CHECK(r.trace->configs.size() == 2);
    CHECK(r.trace->configs[0] == r.trace->configs[1]);
    CHECK(r.trace->accepted);
    CHECK(r.trace->steps == 0);
  }
  SUBCASE("right runner diverges on space") {
    auto r = run_trace(zoo("right_runner"), chars("a"), {10'000, 50});
    CHECK_FALSE(r.trace);
    CHECK(r.diverged == Divergence::kSpace);
  }
  SUBCASE("a machine looping in place diverges on steps") {
    TmMachine m = zoo("two_step");
    m.delta[0][1] = TmAction{0, 1, Move::kLeft};
    auto r = run_trace(m, chars("a"), {100, 50});
    CHECK(r.diverged == Divergence::kSteps);
  }
  SUBCASE("two steps give three configs padded to four") {
    auto r = run_trace(zoo("two_step"), chars("a"));
    REQUIRE(r.trace);
    CHECK(r.trace->steps == 2);
    CHECK(r.trace->configs.size() == 4);
    CHECK(r.trace->configs[2] == r.trace->configs[3]);
  }
  SUBCASE("width covers the head excursion") {
    auto r = run_trace(zoo("right_step"), chars("a"));
    REQUIRE(r.trace);
    CHECK(r.trace->width == 2);
    CHECK(r.trace->configs[1].head == 1);
    auto p = run_trace(zoo("parity"), chars("aa"));
    REQUIRE(p.trace);
    CHECK(p.trace->width == 3);
    CHECK(p.trace->accepted);
    CHECK_FALSE(run_trace(zoo("parity"), chars("a")).trace->accepted);
  }
  SUBCASE("foreign input") {
    CHECK_THROWS_AS(run_trace(zoo("parity"), chars("b")), InputError);
  }
}

TEST_CASE("succ semantics") {
  const TmMachine m = zoo("right_step");
  const TmConfig c = initial_config(m, chars("a"), 1);
  CHECK_FALSE(succ(m, c));  // right move off the end
  const TmConfig wide = initial_config(m, chars("a"), 2);
  auto n = succ(m, wide);
  REQUIRE(n);
  CHECK(n->head == 1);
  CHECK(n->state == m.accept);
  CHECK(succ(m, *n) == n);  // halted is its own successor

  const TmMachine two = zoo("two_step");
  auto s = succ(two, initial_config(two, chars("a"), 1));
  REQUIRE(s);
  CHECK(s->head == 0);  // left move at the left end stays
}

TEST_CASE("encoding examples") {
  const TmMachine m = zoo("right_step");
  auto r = run_trace(m, chars("a"));
  REQUIRE(r.trace);
  const auto& c = r.trace->configs;
  CHECK(encode_trace(m, *r.trace) == join({block(m, c[0], false), block(m, c[1], true)}));
  CHECK(to_string(encode_trace(m, *r.trace)) == "$ (q0,a) _ $ (acc,_) a $");

  const TmMachine imm = zoo("immediate_accept");
  auto t = run_trace(imm, chars("aa"));
  REQUIRE(t.trace);
  const Word w = encode_trace(imm, *t.trace);
  const Word b1(w.begin() + 1, w.begin() + 3), b2(w.begin() + 4, w.begin() + 6);
  CHECK(b2 == Word(b1.rbegin(), b1.rend()));

  CHECK_FALSE(decode_configs(m, parse_word("$ a $")));
  CHECK_FALSE(decode_configs(m, parse_word("$ (q0,a) (q0,a) $")));
  CHECK_FALSE(decode_configs(m, parse_word("(q0,a) $")));
  CHECK_FALSE(decode_configs(m, parse_word("$ b $")));
}

TEST_CASE("decode inverts encode on random traces") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 4);
  int done = 0;
  while (done < 50) {
    const TmMachine m = random_tm(rng, 3);
    const Word x = repeat("a", len(rng));
    auto r = run_trace(m, x, {200, 50});
    if (!r.trace) continue;
    auto back = decode_configs(m, encode_trace(m, *r.trace));
    REQUIRE(back);
    CHECK(*back == r.trace->configs);
    ++done;
  }
}

TEST_CASE("oracle examples") {
  const TmMachine m = zoo("two_step");
  const Word x = chars("a");
  const Word enc = accepted_encoding(m, x);
  CHECK(acc_oracle(m, AccLanguage::kAcc, x, enc));
  CHECK(acc_oracle(m, AccLanguage::kAccAll, x, enc));
  CHECK(acc_oracle(m, AccLanguage::kOddAcc, x, enc));
  CHECK(acc_oracle(m, AccLanguage::kEvenAcc, x, enc));

  auto r = run_trace(m, x);
  auto configs = r.trace->configs;
  {  // flip the tape symbol in C3
    auto bad = configs;
    bad[2].tape[0] = 0;
    CHECK_FALSE(acc_oracle(m, AccLanguage::kAcc, x, encode_configs(m, bad)));
  }
  {  // odd pairs step correctly, the C2 -> C3 boundary does not
    auto split = configs;
    TmConfig halted{{0}, 0, m.accept};
    split[2] = halted;
    split[3] = halted;
    const Word w = encode_configs(m, split);
    CHECK(acc_oracle(m, AccLanguage::kOddAcc, x, w));
    CHECK_FALSE(acc_oracle(m, AccLanguage::kAcc, x, w));
    CHECK_FALSE(acc_oracle(m, AccLanguage::kEvenAcc, x, w));
  }
  {  // an odd number of blocks, and a non-accepting last block
    Word three = enc;
    three.resize(enc.size() - 2);
    CHECK_FALSE(acc_oracle(m, AccLanguage::kAcc, x, three));
    std::vector<TmConfig> two(configs.begin(), configs.begin() + 2);
    CHECK_FALSE(acc_oracle(m, AccLanguage::kOddAcc, x, encode_configs(m, two)));
  }
  CHECK_FALSE(acc_oracle(m, AccLanguage::kAcc, chars("aa"), enc));  // wrong input
  CHECK_FALSE(acc_oracle(m, AccLanguage::kAcc, x, {}));
  CHECK_THROWS_AS(acc_oracle(m, AccLanguage::kAcc, x, {"b"}), InputError);

  SUBCASE("per-input ACC has one member when the run accepts, none otherwise") {
    const AccOracle acc(m, spec_of(AccVariant::kAcc, true, x));
    CHECK(acc.accepts(enc));
    CHECK(acc.pinned_width() == 1);
    const AccOracle rejected(m, spec_of(AccVariant::kAcc, true, {}));
    CHECK(rejected.prefix_dead({}));
    const AccOracle looping(zoo("right_runner"), spec_of(AccVariant::kAcc, true, {}));
    CHECK(looping.prefix_dead({}));
  }
}

TEST_CASE("prefix_dead is sound on members and exact for per-input acc") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 3);
  int done = 0;
  while (done < 40) {
    const TmMachine m = random_tm(rng, 2);
    const Word x = repeat("a", len(rng));
    auto r = run_trace(m, x, {200, 20});
    if (!r.trace || !r.trace->accepted) continue;
    ++done;
    const Word enc = encode_trace(m, *r.trace);
    for (auto v : {AccVariant::kAcc, AccVariant::kOddAcc, AccVariant::kEvenAcc}) {
      for (bool per_input : {true, false}) {
        const AccOracle o(m, spec_of(v, per_input, x));
        REQUIRE(o.accepts(enc));
        for (std::size_t k = 0; k <= enc.size(); ++k)
          CHECK_FALSE(o.prefix_dead(Word(enc.begin(), enc.begin() + k)));
      }
    }
    // Per-input acc: every one-symbol deviation from the encoding is dead.
    const AccOracle exact(m, spec_of(AccVariant::kAcc, true, x));
    for (std::size_t k = 0; k < enc.size(); ++k) {
      Word p(enc.begin(), enc.begin() + k);
      for (const auto& s : exact.alphabet()) {
        if (s == enc[k]) continue;
        p.push_back(s);
        CHECK(exact.prefix_dead(p));
        p.pop_back();
      }
    }
  }
}

TEST_CASE("oddacc and evenacc intersect to acc") {
  for (const auto* name : {"immediate_accept", "two_step", "right_step", "parity"}) {
    CAPTURE(name);
    const TmMachine m = zoo(name);
    const AccOracle odd(m, spec_of(AccVariant::kOddAcc, false));
    const AccOracle even(m, spec_of(AccVariant::kEvenAcc, false));
    const AccOracle acc(m, spec_of(AccVariant::kAcc, false));
    IntersectionHooks hooks(odd, even, acc);
    auto r = prefix_sweep(odd.alphabet(), 9, hooks);
    CHECK_FALSE(r.counterexample);
  }
}

TEST_CASE("complement grammars match the oracles") {
  SUBCASE("per-input acc on zoo runs") {
    for (auto [name, x] : std::vector<std::pair<const char*, const char*>>{
             {"immediate_accept", ""}, {"immediate_accept", "a"}, {"two_step", "a"},
             {"two_step", ""}, {"right_step", "a"}, {"parity", ""}, {"parity", "a"},
             {"right_runner", ""}}) {
      CAPTURE(name);
      CAPTURE(x);
      const TmMachine m = zoo(name);
      const AccOracle o(m, spec_of(AccVariant::kAcc, true, chars(x)));
      const Cfg g = complement_acc_cfg(m, o.spec(), AccPolarity::kComplement);
      GrammarOracleHooks hooks(g, o, true);
      auto r = prefix_sweep(o.alphabet(), 9, hooks);
      CHECK_FALSE(r.counterexample);
    }
  }
  SUBCASE("all variants and scopes on small machines") {
    for (const auto* name : {"immediate_accept", "right_step"}) {
      const TmMachine m = zoo(name);
      for (auto v : {AccVariant::kAcc, AccVariant::kOddAcc, AccVariant::kEvenAcc}) {
        for (bool per_input : {true, false}) {
          const AccOracle o(m, spec_of(v, per_input, chars("a")));
          CAPTURE(describe(o.spec()));
          const Cfg g = complement_acc_cfg(m, o.spec(), AccPolarity::kComplement);
          GrammarOracleHooks hooks(g, o, true);
          CHECK_FALSE(prefix_sweep(o.alphabet(), 7, hooks).counterexample);
        }
      }
    }
  }
  SUBCASE("random machines") {
    std::mt19937 rng(5);
    for (int i = 0; i < 15; ++i) {
      const TmMachine m = random_tm(rng, 2);
      const Word x = repeat("a", rng() % 3);
      const AccOracle o(m, spec_of(AccVariant::kAcc, true, x));
      const Cfg g = complement_acc_cfg(m, o.spec(), AccPolarity::kComplement);
      GrammarOracleHooks hooks(g, o, true);
      CHECK_FALSE(prefix_sweep(o.alphabet(), 7, hooks).counterexample);
    }
  }
}

TEST_CASE("positive pair grammars match the oracles") {
  for (const auto* name : {"immediate_accept", "two_step", "right_step", "parity"}) {
    const TmMachine m = zoo(name);
    for (auto v : {AccVariant::kOddAcc, AccVariant::kEvenAcc}) {
      for (bool per_input : {true, false}) {
        const AccOracle o(m, spec_of(v, per_input, chars("a")));
        CAPTURE(name);
        CAPTURE(describe(o.spec()));
        const Cfg g = complement_acc_cfg(m, o.spec(), AccPolarity::kPositivePair);
        GrammarOracleHooks hooks(g, o, false);
        CHECK_FALSE(prefix_sweep(o.alphabet(), 8, hooks).counterexample);
      }
    }
  }
  CHECK_THROWS_AS(complement_acc_cfg(zoo("parity"), spec_of(AccVariant::kAcc, true),
                                     AccPolarity::kPositivePair),
                  DomainError);
}
