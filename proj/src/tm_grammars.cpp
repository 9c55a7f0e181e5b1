// Grammars for the complements of the ACC family (a union of defect
// grammars) and for ODDACC / EVENACC themselves (chains of successor pairs).
//
// Step and length defects are matched around the separator between the two
// blocks of a pair: in "C $ D^R" (odd pairs) and "C^R $ D" (even pairs) the
// cells next to the $ are aligned, so nested T1 ... T1 brackets reach any
// position. Every defect family ends in the universal [Any] as soon as the
// defect is witnessed, which lets prefix sweeps stop early.

#include <functional>
#include <map>
#include <set>

#include "succinct/tm_encodings.hpp"
#include "succinct/transforms.hpp"

namespace succinct {
namespace {

constexpr int kBoundary = 0;
constexpr int kNone = 1;  // classes >= 2 encode Into(p) as 2 + p
constexpr int kUndefined = -1;

class Local {
 public:
  Local(const TmMachine& m, bool reversed) : m_(m), codec_(m), reversed_(reversed) {}

  // Class of a cell seen as the config-left / config-right neighbour.
  int as_left(int c) const { return into(c, Move::kRight); }
  int as_right(int c) const { return into(c, Move::kLeft); }
  // Written orientation: the written-previous cell is config-left for
  // forward blocks and config-right for reversed ones.
  int prev_class(int c) const { return reversed_ ? as_right(c) : as_left(c); }
  int next_class(int c) const { return reversed_ ? as_left(c) : as_right(c); }

  int step(int pc, int y, int nc) const { return reversed_ ? f(nc, y, pc) : f(pc, y, nc); }

  // Cell below y in the successor, from the classes of its config neighbours.
  int f(int lc, int y, int rc) const {
    if (!codec_.is_composite(y)) {
      if (lc >= 2) return codec_.composite(lc - 2, y);
      if (rc >= 2) return codec_.composite(rc - 2, y);
      return y;
    }
    const int q = codec_.state_of(y), s = codec_.symbol_of(y);
    if (m_.halting(q)) return y;
    const TmAction& a = *m_.delta[q][s];
    if (a.move == Move::kLeft)
      return lc == kBoundary ? codec_.composite(a.to, a.write) : a.write;
    return rc == kBoundary ? kUndefined : a.write;
  }

  int num_classes() const { return 2 + m_.num_states(); }

 private:
  int into(int c, Move dir) const {
    if (!codec_.is_composite(c)) return kNone;
    const int q = codec_.state_of(c);
    if (m_.halting(q)) return kNone;
    const TmAction& a = *m_.delta[q][codec_.symbol_of(c)];
    return a.move == dir ? 2 + a.to : kNone;
  }

  const TmMachine& m_;
  CellCodec codec_;
  bool reversed_;
};

class Builder {
 public:
  explicit Builder(const TmMachine& m) : m_(m), codec_(m), names_(encoding_alphabet(m)) {
    g_.terminals = names_;
    g_.start = nt("S");
  }

  Symbol nt(const std::string& name) {
    Symbol s = "[" + name + "]";
    if (known_.insert(s).second) g_.nonterminals.push_back(s);
    return s;
  }
  void rule(const Symbol& lhs, std::vector<Symbol> rhs) { g_.rules.push_back({lhs, std::move(rhs)}); }
  const Symbol& t(int cell) const { return names_[cell]; }
  const Symbol& dollar() const { return names_[codec_.dollar()]; }
  int cells() const { return codec_.dollar(); }  // non-$ cell ids are 0..cells()-1
  const CellCodec& codec() const { return codec_; }
  const TmMachine& machine() const { return m_; }

  Cfg finish() {
    std::set<Symbol> ts(g_.terminals.begin(), g_.terminals.end());
    for (const auto& n : g_.nonterminals)
      if (ts.count(n)) throw DomainError("nonterminal name " + n + " clashes with a tape symbol");
    return std::move(g_);
  }

  // Shared building blocks.
  Symbol t1() {
    Symbol n = nt("T1");
    if (once("T1"))
      for (int c = 0; c < cells(); ++c) rule(n, {t(c)});
    return n;
  }
  Symbol any() {
    Symbol n = nt("Any");
    if (once("Any")) {
      rule(n, {});
      for (int c = 0; c <= cells(); ++c) rule(n, {t(c), n});
    }
    return n;
  }
  Symbol blk() {
    Symbol n = nt("Blk");
    if (once("Blk")) {
      rule(n, {});
      for (int c = 0; c < cells(); ++c) rule(n, {t(c), n});
    }
    return n;
  }
  // $ (Blk $ Blk $)*: the next block has odd index.
  Symbol pfx_odd() {
    Symbol n = nt("PfxOdd");
    if (once("PfxOdd")) {
      rule(n, {dollar()});
      rule(n, {n, blk(), dollar(), blk(), dollar()});
    }
    return n;
  }
  Symbol pfx_even() {
    Symbol n = nt("PfxEven");
    if (once("PfxEven")) rule(n, {pfx_odd(), blk(), dollar()});
    return n;
  }
  // T1^k $ T1^k
  Symbol mirror() {
    Symbol n = nt("M");
    if (once("M")) {
      rule(n, {dollar()});
      rule(n, {t1(), n, t1()});
    }
    return n;
  }
  Symbol not_v(int v) {
    if (v == kUndefined) return t1();
    Symbol n = nt("NotV:" + t(v));
    if (once(n))
      for (int c = 0; c < cells(); ++c)
        if (c != v) rule(n, {t(c)});
    return n;
  }
  // Cells whose written-previous (or written-next) class is `cls`.
  Symbol with_class(const Local& loc, const std::string& tag, bool prev, int cls) {
    Symbol n = nt(tag + (prev ? ":X" : ":Z") + std::to_string(cls));
    if (once(n))
      for (int c = 0; c < cells(); ++c)
        if ((prev ? loc.prev_class(c) : loc.next_class(c)) == cls) rule(n, {t(c)});
    return n;
  }

  bool once(const std::string& key) { return built_.insert(key).second; }

 private:
  const TmMachine& m_;
  CellCodec codec_;
  Alphabet names_;
  Cfg g_;
  std::set<Symbol> known_;
  std::set<std::string> built_;
};

// ---- regular defects -----------------------------------------------------

// Key of the regular-shape automaton. Block counts are folded to
// 0, 1, even >= 2, odd >= 3.
struct ShapeKey {
  bool started = false;
  int blocks = 0;
  int composites = 0;
  int first = 0;  // per input: cells of C1 matched; otherwise initial-shape state
  bool cur_acc = false;
  bool last_acc = false;
  bool at_start = false;
  auto tie() const { return std::tuple(started, blocks, composites, first, cur_acc, last_acc, at_start); }
  bool operator<(const ShapeKey& o) const { return tie() < o.tie(); }
};

// DFA for the regular conditions: $-block shape with exactly one composite
// per block and an even number (>= 2) of blocks, the first-block condition,
// and an accepting last block.
Dfa regular_conditions(const TmMachine& m, const AccSpec& spec, const std::vector<int>& init) {
  const CellCodec codec(m);
  const int dollar = codec.dollar();
  const bool check_first = spec.variant != AccVariant::kEvenAcc;
  auto is_input = [&](int c) {
    return !codec.is_composite(c) && c != m.blank &&
           std::find(m.input.begin(), m.input.end(), m.tape[c]) != m.input.end();
  };

  // first-shape states for all-inputs scope: 0 expect (q0,s), 1 input run, 2 blank run
  auto first_step = [&](int st, int c) -> int {
    if (spec.per_input) {
      return st < static_cast<int>(init.size()) && init[st] == c ? st + 1 : -1;
    }
    if (st == 0) {
      if (!codec.is_composite(c) || codec.state_of(c) != m.start) return -1;
      const int s = codec.symbol_of(c);
      if (s == m.blank) return 2;
      return is_input(s) ? 1 : -1;
    }
    if (c == m.blank) return 2;
    return st == 1 && is_input(c) ? 1 : -1;
  };
  auto first_done = [&](int st) {
    return spec.per_input ? st == static_cast<int>(init.size()) : st != 0;
  };

  auto next = [&](const ShapeKey& k, int c) -> std::optional<ShapeKey> {
    ShapeKey n = k;
    if (!k.started) {
      if (c != dollar) return std::nullopt;
      n.started = true;
      n.at_start = true;
      return n;
    }
    if (c == dollar) {
      if (k.composites != 1) return std::nullopt;
      if (check_first && k.blocks == 0 && !first_done(k.first)) return std::nullopt;
      n.blocks = k.blocks == 0 ? 1 : k.blocks == 1 ? 2 : k.blocks == 2 ? 3 : 2;
      n.last_acc = k.cur_acc;
      n.cur_acc = false;
      n.composites = 0;
      n.first = 0;
      n.at_start = true;
      return n;
    }
    n.at_start = false;
    if (codec.is_composite(c)) {
      if (++n.composites > 1) return std::nullopt;
      n.cur_acc = codec.state_of(c) == m.accept;
    }
    if (check_first && k.blocks == 0) {
      n.first = first_step(k.first, c);
      if (n.first < 0) return std::nullopt;
    }
    return n;
  };

  Dfa d;
  d.alphabet = encoding_alphabet(m);
  std::map<ShapeKey, int> ids;
  std::vector<ShapeKey> keys;
  auto id_of = [&](const std::optional<ShapeKey>& k) {
    if (!k) return 0;  // state 0 is the dead state
    auto [it, fresh] = ids.emplace(*k, static_cast<int>(keys.size()) + 1);
    if (fresh) keys.push_back(*k);
    return it->second;
  };
  d.start = id_of(ShapeKey{});
  d.delta.push_back(std::vector<int>(d.alphabet.size(), 0));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::vector<int> row(d.alphabet.size());
    for (int c = 0; c <= dollar; ++c) {
      const ShapeKey k = keys[i];
      row[c] = id_of(next(k, c));
    }
    d.delta.push_back(std::move(row));
  }
  d.accepting.assign(d.delta.size(), false);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const ShapeKey& k = keys[i];
    d.accepting[i + 1] = k.started && k.at_start && k.blocks == 2 && k.last_acc;
  }
  for (std::size_t i = 0; i < d.delta.size(); ++i) d.state_names.push_back(std::to_string(i));
  return d;
}

// Right-linear grammar for a DFA, restricted to states that can reach
// acceptance. Returns the nonterminal for the start state, or nullopt for
// the empty language.
std::optional<Symbol> add_right_linear(Builder& b, const Dfa& d, const std::string& tag) {
  const int n = d.num_states();
  std::vector<bool> live(d.accepting.begin(), d.accepting.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < n; ++q) {
      if (live[q]) continue;
      for (int to : d.delta[q])
        if (live[to]) { live[q] = changed = true; break; }
    }
  }
  if (!live[d.start]) return std::nullopt;
  auto name = [&](int q) { return b.nt(tag + std::to_string(q)); };
  for (int q = 0; q < n; ++q) {
    if (!live[q]) continue;
    if (d.accepting[q]) b.rule(name(q), {});
    for (std::size_t a = 0; a < d.alphabet.size(); ++a)
      if (live[d.delta[q][a]]) b.rule(name(q), {d.alphabet[a], name(d.delta[q][a])});
  }
  return name(d.start);
}

// ---- length and step defects ---------------------------------------------

// Some pair of the given parity has blocks of different lengths.
Symbol length_defects(Builder& b, bool odd) {
  Symbol n = b.nt(odd ? "LenOdd" : "LenEven");
  Symbol pfx = odd ? b.pfx_odd() : b.pfx_even();
  b.rule(n, {pfx, b.blk(), b.t1(), b.mirror(), b.dollar(), b.any()});  // first block longer
  b.rule(n, {pfx, b.mirror(), b.t1(), b.any()});                        // second block longer
  return n;
}

// Some pair of the given parity where a cell of the second block differs
// from the successor cell computed from the window above it.
Symbol step_defects(Builder& b, bool odd) {
  const Local loc(b.machine(), !odd);
  const std::string tag = odd ? "Fwd" : "Rev";
  Symbol n = b.nt(odd ? "StepOdd" : "StepEven");
  Symbol pfx = odd ? b.pfx_odd() : b.pfx_even();
  for (int y = 0; y < b.cells(); ++y) {
    // single cell
    {
      const int v = loc.step(kBoundary, y, kBoundary);
      b.rule(n, {pfx, b.t(y), b.dollar(), b.not_v(v), b.any()});
    }
    for (int rc = kNone; rc < loc.num_classes(); ++rc) {  // written-left end
      const int v = loc.step(kBoundary, y, rc);
      Symbol z = b.with_class(loc, tag, false, rc);
      b.rule(n, {pfx, b.t(y), z, b.mirror(), b.t1(), b.not_v(v), b.any()});
    }
    for (int lc = kNone; lc < loc.num_classes(); ++lc) {
      Symbol x = b.with_class(loc, tag, true, lc);
      {  // written-right end
        const int v = loc.step(lc, y, kBoundary);
        b.rule(n, {pfx, b.blk(), x, b.t(y), b.dollar(), b.not_v(v), b.any()});
      }
      for (int rc = kNone; rc < loc.num_classes(); ++rc) {
        const int v = loc.step(lc, y, rc);
        Symbol z = b.with_class(loc, tag, false, rc);
        b.rule(n, {pfx, b.blk(), x, b.t(y), z, b.mirror(), b.t1(), b.not_v(v), b.any()});
      }
    }
  }
  return n;
}

// ---- positive pair grammars ------------------------------------------------

// Small automaton over the cells of the first block of a pair.
struct Filter {
  int start = 0;
  std::function<int(int, int)> step;  // -1 rejects
  std::function<bool(int)> final;
  std::string tag;
};

Filter one_composite(const CellCodec& codec) {
  return {0, [&codec](int st, int c) { return codec.is_composite(c) ? (st == 0 ? 1 : -1) : st; },
          [](int st) { return st == 1; }, "c"};
}

// One composite whose successor state is the accept state.
Filter leads_to_accept(const TmMachine& m, const CellCodec& codec) {
  return {0,
          [&m, &codec](int st, int c) {
            if (!codec.is_composite(c)) return st;
            if (st != 0) return -1;
            const int q = codec.state_of(c);
            const int to = m.halting(q) ? q : m.delta[q][codec.symbol_of(c)]->to;
            return to == m.accept ? 1 : -1;
          },
          [](int st) { return st == 1; }, "a"};
}

// (q0,s) followed by input symbols, then blanks.
Filter initial_shape(const TmMachine& m, const CellCodec& codec) {
  auto is_input = [&m, &codec](int c) {
    return !codec.is_composite(c) && c != m.blank &&
           std::find(m.input.begin(), m.input.end(), m.tape[c]) != m.input.end();
  };
  return {0,
          [&m, &codec, is_input](int st, int c) {
            if (st == 0) {
              if (!codec.is_composite(c) || codec.state_of(c) != m.start) return -1;
              const int s = codec.symbol_of(c);
              return s == m.blank ? 2 : is_input(s) ? 1 : -1;
            }
            if (c == m.blank) return 2;
            return st == 1 && is_input(c) ? 1 : -1;
          },
          [](int st) { return st != 0; }, "i"};
}

Filter both(const Filter& a, const Filter& b) {
  constexpr int kWidth = 8;
  return {a.start * kWidth + b.start,
          [a, b](int st, int c) {
            const int x = a.step(st / kWidth, c), y = b.step(st % kWidth, c);
            return x < 0 || y < 0 ? -1 : x * kWidth + y;
          },
          [a, b](int st) { return a.final(st / kWidth) && b.final(st % kWidth); }, a.tag + b.tag};
}

// "C $ D^R" (forward) or "C^R $ D" (reversed) with D = succ(C), C accepted by
// the filter.
Symbol pair_grammar(Builder& b, bool reversed, const Filter& filter) {
  const Local loc(b.machine(), reversed);
  const std::string tag = std::string(reversed ? "EPair" : "OPair") + ":" + filter.tag;
  Symbol entry = b.nt(tag);
  if (!b.once(entry)) return entry;
  auto name = [&](int pc, int y, int fs) {
    return b.nt(tag + ":" + std::to_string(pc) + ":" + b.t(y) + ":" + std::to_string(fs));
  };
  std::set<std::tuple<int, int, int>> done;
  std::vector<std::tuple<int, int, int>> todo;
  auto want = [&](int pc, int y, int fs) {
    if (done.insert({pc, y, fs}).second) todo.emplace_back(pc, y, fs);
    return name(pc, y, fs);
  };
  for (int y = 0; y < b.cells(); ++y)
    if (filter.step(filter.start, y) >= 0) b.rule(entry, {want(kBoundary, y, filter.start)});
  while (!todo.empty()) {
    auto [pc, y, fs] = todo.back();
    todo.pop_back();
    const Symbol lhs = name(pc, y, fs);
    const int fs2 = filter.step(fs, y);
    if (fs2 < 0) continue;
    if (filter.final(fs2)) {
      const int d = loc.step(pc, y, kBoundary);
      if (d != kUndefined) b.rule(lhs, {b.t(y), b.dollar(), b.t(d)});
    }
    for (int z = 0; z < b.cells(); ++z) {
      if (filter.step(fs2, z) < 0) continue;
      const int d = loc.step(pc, y, loc.next_class(z));
      if (d == kUndefined) continue;
      b.rule(lhs, {b.t(y), want(loc.prev_class(y), z, fs2), b.t(d)});
    }
  }
  return entry;
}

// Plain* K Plain* where K ranges over composites accepted by `keep`.
Symbol config_block(Builder& b, const std::string& tag, const std::function<bool(int)>& keep) {
  Symbol n = b.nt(tag), tail = b.nt(tag + ":tail"), plain = b.nt("Plain*");
  if (b.once("Plain*")) {
    b.rule(plain, {});
    for (int c = 0; c < b.codec().tape; ++c) b.rule(plain, {b.t(c), plain});
  }
  for (int c = 0; c < b.codec().tape; ++c) b.rule(n, {b.t(c), n});
  for (int c = b.codec().tape; c < b.cells(); ++c)
    if (keep(c)) b.rule(n, {b.t(c), tail});
  b.rule(tail, {plain});
  return n;
}

Cfg positive_grammar(const TmMachine& m, const AccSpec& spec, const TmBounds& bounds) {
  Builder b(m);
  const CellCodec& codec = b.codec();
  const Symbol S = b.nt("S");
  if (spec.variant == AccVariant::kOddAcc) {
    // Tail -> OPair $ Tail | OPairAcc $
    const Symbol tail = b.nt("Tail");
    const Symbol pair = pair_grammar(b, false, one_composite(codec));
    const Symbol pair_acc = pair_grammar(b, false, leads_to_accept(m, codec));
    b.rule(tail, {pair, b.dollar(), tail});
    b.rule(tail, {pair_acc, b.dollar()});
    if (spec.per_input) {
      const RunResult run = run_trace(m, spec.x, bounds);
      const std::size_t width = run.trace ? run.trace->width : std::max<std::size_t>(spec.x.size(), 1);
      const TmConfig c1 = initial_config(m, spec.x, width);
      const auto c2 = succ(m, c1);
      if (c2) {
        std::vector<Symbol> first{b.dollar()};
        for (int c : config_cells(codec, c1)) first.push_back(b.t(c));
        first.push_back(b.dollar());
        auto back = config_cells(codec, *c2);
        for (auto it = back.rbegin(); it != back.rend(); ++it) first.push_back(b.t(*it));
        first.push_back(b.dollar());
        if (c2->state == m.accept) b.rule(S, first);
        first.push_back(tail);
        b.rule(S, first);
      }
    } else {
      const Filter init = initial_shape(m, codec);
      b.rule(S, {b.dollar(), pair_grammar(b, false, both(one_composite(codec), init)), b.dollar(), tail});
      b.rule(S, {b.dollar(), pair_grammar(b, false, both(leads_to_accept(m, codec), init)), b.dollar()});
    }
  } else {
    // S -> $ Cfg $ Tail2;  Tail2 -> EPair $ Tail2 | AccCfg $
    const Symbol tail = b.nt("Tail2");
    const Symbol cfg = config_block(b, "Cfg", [](int) { return true; });
    const Symbol acc = config_block(b, "AccCfg", [&](int c) { return codec.state_of(c) == m.accept; });
    b.rule(S, {b.dollar(), cfg, b.dollar(), tail});
    b.rule(tail, {pair_grammar(b, true, one_composite(codec)), b.dollar(), tail});
    b.rule(tail, {acc, b.dollar()});
  }
  return b.finish();
}

}  // namespace

Cfg complement_acc_cfg(const TmMachine& m, const AccSpec& spec, AccPolarity polarity,
                       const TmBounds& bounds) {
  auto v = validate(m);
  if (!v.empty()) throw ValidationError(v.front());
  if (polarity == AccPolarity::kPositivePair) {
    if (spec.variant == AccVariant::kAcc)
      throw DomainError("acc has no positive-pair grammar: ACC is not context-free in general");
    return positive_grammar(m, spec, bounds);
  }

  Builder b(m);
  const Symbol S = b.nt("S");
  std::vector<int> init;
  if (spec.per_input) {
    const RunResult run = run_trace(m, spec.x, bounds);
    const std::size_t width = run.trace ? run.trace->width : std::max<std::size_t>(spec.x.size(), 1);
    init = config_cells(b.codec(), initial_config(m, spec.x, width));
  }
  const Dfa broken = dfa_minimize(dfa_complement(regular_conditions(m, spec, init)));
  if (auto r = add_right_linear(b, broken, "R")) b.rule(S, {*r});
  const bool odd = spec.variant != AccVariant::kEvenAcc;
  const bool even = spec.variant != AccVariant::kOddAcc;
  if (odd) {
    b.rule(S, {length_defects(b, true)});
    b.rule(S, {step_defects(b, true)});
  }
  if (even) {
    b.rule(S, {length_defects(b, false)});
    b.rule(S, {step_defects(b, false)});
  }
  return b.finish();
}

}  // namespace succinct
