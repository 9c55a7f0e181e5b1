#include "succinct/analysis.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "succinct/transforms.hpp"

namespace succinct {

Alphabet subject_alphabet(const Subject& s) {
  if (const auto* d = std::get_if<Device>(&s)) return alphabet_of(*d);
  return std::get<PredicateOracle>(s).alphabet;
}

std::string subject_label(const Subject& s) {
  if (const auto* d = std::get_if<Device>(&s)) return kind_name(*d);
  return std::get<PredicateOracle>(s).label;
}

namespace {

Alphabet merged(const Alphabet& a, const Alphabet& b) {
  Alphabet out = a;
  for (const auto& s : b)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

Recognizer recognizer(const Subject& s) {
  if (const auto* d = std::get_if<Device>(&s)) return Recognizer(*d);
  return Recognizer(std::get<PredicateOracle>(s));
}

// Membership that treats foreign symbols as rejection.
class Guarded {
 public:
  explicit Guarded(const Subject& s) : rec_(recognizer(s)) {
    const Alphabet a = subject_alphabet(s);
    own_.insert(a.begin(), a.end());
  }
  bool operator()(const Word& w) const {
    for (const auto& x : w)
      if (!own_.count(x)) return false;
    return rec_(w);
  }

 private:
  Recognizer rec_;
  std::set<Symbol> own_;
};

Alphabet horizon_alphabet(const Horizon& h, const Alphabet& fallback) {
  return h.alphabet.empty() ? fallback : h.alphabet;
}

void require_budget(std::size_t k, std::size_t len, std::uint64_t budget) {
  const std::uint64_t n = count_words_upto(k, len);
  if (n > budget)
    throw BudgetExceeded("horizon has " + std::to_string(n) + " words, budget is " +
                         std::to_string(budget));
}

}  // namespace

EquivResult bounded_equiv(const Subject& a, const Subject& b, const Horizon& h,
                          std::uint64_t budget) {
  if (h.max_length < 1) throw DomainError("horizon must be at least 1");
  EquivResult r;
  r.horizon = h.max_length;
  r.alphabet = horizon_alphabet(h, merged(subject_alphabet(a), subject_alphabet(b)));
  require_budget(r.alphabet.size(), h.max_length, budget);
  const Guarded fa(a), fb(b);
  for_each_word(r.alphabet, h.max_length, [&](const Word& w) {
    ++r.words_checked;
    const bool x = fa(w);
    if (x == fb(w)) return true;
    r.equal = false;
    r.counterexample = w;
    r.first_accepts = x;
    return false;
  });
  return r;
}

// ---- emptiness and first members ------------------------------------------

bool cfg_emptiness(const Cfg& g) { return !cfg_shortest_member(g).has_value(); }

std::optional<Word> cfg_shortest_member(const Cfg& g) {
  auto v = validate(Device(g));
  if (!v.empty()) throw ValidationError(v.front());
  const std::set<Symbol> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::map<Symbol, Word> best;
  // Length-lex minima compose: a shortest word of a rule uses shortest words
  // of its parts, and among equal lengths the concatenation of minima is
  // minimal. Values only decrease, so the fixpoint is reached.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      Word cand;
      bool ok = true;
      for (const auto& s : r.rhs) {
        if (!nts.count(s)) {
          cand.push_back(s);
          continue;
        }
        auto it = best.find(s);
        if (it == best.end()) {
          ok = false;
          break;
        }
        cand.insert(cand.end(), it->second.begin(), it->second.end());
      }
      if (!ok) continue;
      auto it = best.find(r.lhs);
      if (it == best.end() || length_lex_less(g.terminals, cand, it->second)) {
        best[r.lhs] = std::move(cand);
        changed = true;
      }
    }
  }
  auto it = best.find(g.start);
  if (it == best.end()) return std::nullopt;
  return it->second;
}

std::string class_name(DeviceClass c) {
  switch (c) {
    case DeviceClass::kDfa: return "DFA";
    case DeviceClass::kNfa: return "NFA";
    case DeviceClass::kCnfCfg: return "CNF-CFG";
  }
  return "?";
}

std::string pair_name(DevicePair p) {
  switch (p) {
    case DevicePair::kDfaOverNfa: return "(DFA,NFA)";
    case DevicePair::kNfaOverDfa: return "(NFA,DFA)";
    case DevicePair::kCnfOverDfa: return "(CNF-CFG,DFA)";
  }
  return "?";
}

namespace {

// ---- compact automata -----------------------------------------------------

struct SmallDfa {
  int n = 0, k = 0;
  std::vector<int> delta;  // n * k
  std::uint32_t accept = 0;
  int at(int q, int a) const { return delta[q * k + a]; }
  bool acc(int q) const { return (accept >> q) & 1u; }
};

struct SmallNfa {
  int n = 0, k = 0;
  std::uint64_t bits = 0;  // edges (q*k + a)*n + r, then accepting states
  std::uint32_t targets(int q, int a) const {
    return static_cast<std::uint32_t>((bits >> ((q * k + a) * n)) & ((1u << n) - 1));
  }
  bool acc(int q) const { return (bits >> (n * n * k + q)) & 1u; }
};

int nfa_bits(int n, int k) { return n * n * k + n; }

SmallDfa small_of(const Dfa& d) {
  SmallDfa s;
  s.n = d.num_states();
  s.k = static_cast<int>(d.alphabet.size());
  if (s.n > 32) throw DomainError("automaton too large for the compact search path");
  // renumber so the start state is 0
  std::vector<int> id(s.n);
  std::iota(id.begin(), id.end(), 0);
  std::swap(id[0], id[d.start]);
  s.delta.resize(s.n * s.k);
  for (int q = 0; q < s.n; ++q) {
    for (int a = 0; a < s.k; ++a) s.delta[id[q] * s.k + a] = id[d.delta[q][a]];
    if (d.accepting[q]) s.accept |= 1u << id[q];
  }
  return s;
}

Dfa device_of(const SmallDfa& s, const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  for (int q = 0; q < s.n; ++q) {
    d.state_names.push_back("q" + std::to_string(q));
    d.delta.push_back(std::vector<int>(s.delta.begin() + q * s.k, s.delta.begin() + (q + 1) * s.k));
    d.accepting.push_back(s.acc(q));
  }
  return d;
}

Nfa device_of(const SmallNfa& s, const Alphabet& alphabet) {
  Nfa n;
  n.alphabet = alphabet;
  n.delta.resize(s.n, std::vector<std::vector<int>>(s.k));
  n.epsilon.resize(s.n);
  for (int q = 0; q < s.n; ++q) {
    n.state_names.push_back("q" + std::to_string(q));
    n.accepting.push_back(s.acc(q));
    for (int a = 0; a < s.k; ++a)
      for (int r = 0; r < s.n; ++r)
        if ((s.targets(q, a) >> r) & 1u) n.delta[q][a].push_back(r);
  }
  return n;
}

// Minimal DFA in breadth-first numbering: equal languages give equal values.
SmallDfa minimal(const SmallDfa& d) {
  // reachable part
  std::vector<int> order{0}, seen(d.n, -1);
  seen[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < d.k; ++a) {
      const int t = d.at(order[i], a);
      if (seen[t] < 0) {
        seen[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const int n = static_cast<int>(order.size());
  std::vector<int> cls(n), next(n);
  for (int i = 0; i < n; ++i) cls[i] = d.acc(order[i]) ? 1 : 0;
  for (;;) {
    std::map<std::vector<int>, int> sig;
    for (int i = 0; i < n; ++i) {
      std::vector<int> key{cls[i]};
      for (int a = 0; a < d.k; ++a) key.push_back(cls[seen[d.at(order[i], a)]]);
      next[i] = sig.emplace(std::move(key), static_cast<int>(sig.size())).first->second;
    }
    const int before = *std::max_element(cls.begin(), cls.end()) + 1;
    const int after = static_cast<int>(sig.size());
    cls.swap(next);
    if (after == before) break;
  }
  // breadth-first renumbering of the classes from the start class
  std::vector<int> rep(n, -1), num(n, -1);
  for (int i = 0; i < n; ++i)
    if (rep[cls[i]] < 0) rep[cls[i]] = i;
  std::vector<int> bfs{cls[0]};
  num[cls[0]] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int a = 0; a < d.k; ++a) {
      const int c = cls[seen[d.at(order[rep[bfs[i]]], a)]];
      if (num[c] < 0) {
        num[c] = static_cast<int>(bfs.size());
        bfs.push_back(c);
      }
    }
  SmallDfa m;
  m.n = static_cast<int>(bfs.size());
  m.k = d.k;
  m.delta.resize(m.n * m.k);
  for (int i = 0; i < m.n; ++i) {
    const int q = order[rep[bfs[i]]];
    for (int a = 0; a < d.k; ++a) m.delta[i * m.k + a] = num[cls[seen[d.at(q, a)]]];
    if (d.acc(q)) m.accept |= 1u << i;
  }
  return m;
}

SmallDfa determinize(const SmallNfa& s) {
  SmallDfa d;
  d.k = s.k;
  std::unordered_map<std::uint32_t, int> id;
  std::vector<std::uint32_t> sets{1u};
  id[1u] = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int a = 0; a < s.k; ++a) {
      std::uint32_t t = 0;
      for (std::uint32_t m = sets[i]; m; m &= m - 1) t |= s.targets(std::countr_zero(m), a);
      auto [it, fresh] = id.emplace(t, static_cast<int>(sets.size()));
      if (fresh) sets.push_back(t);
      d.delta.push_back(it->second);
    }
  }
  d.n = static_cast<int>(sets.size());
  for (int i = 0; i < d.n; ++i) {
    bool acc = false;
    for (std::uint32_t m = sets[i]; m; m &= m - 1) acc |= s.acc(std::countr_zero(m));
    if (acc) d.accept |= 1u << i;
  }
  return d;
}

std::string key_of(const SmallDfa& d) {
  std::string k = std::to_string(d.n) + ":" + std::to_string(d.accept) + ":";
  for (int t : d.delta) k += std::to_string(t) + ",";
  return k;
}

// Exact language equality of an NFA with a DFA by exploring reachable pairs
// (subset, state).
bool nfa_equals(const SmallNfa& s, const SmallDfa& t) {
  std::vector<std::pair<std::uint32_t, int>> todo{{1u, 0}};
  std::vector<char> seen((std::size_t{1} << s.n) * t.n, 0);
  seen[std::size_t{1} * t.n] = 1;
  while (!todo.empty()) {
    auto [set, q] = todo.back();
    todo.pop_back();
    bool acc = false;
    for (std::uint32_t m = set; m; m &= m - 1) acc |= s.acc(std::countr_zero(m));
    if (acc != t.acc(q)) return false;
    for (int a = 0; a < s.k; ++a) {
      std::uint32_t nx = 0;
      for (std::uint32_t m = set; m; m &= m - 1) nx |= s.targets(std::countr_zero(m), a);
      const int to = t.at(q, a);
      char& mark = seen[std::size_t{nx} * t.n + to];
      if (!mark) {
        mark = 1;
        todo.emplace_back(nx, to);
      }
    }
  }
  return true;
}

// ---- enumerations ---------------------------------------------------------

// Accessible DFAs with breadth-first numbering: scanning the table row by
// row, new states appear in increasing order and each row's state has
// appeared before the row is reached.
template <class Visit>
bool for_each_small_dfa(int n, int k, Visit&& visit) {
  SmallDfa d;
  d.n = n;
  d.k = k;
  d.delta.assign(n * k, 0);
  std::function<bool(int, int)> fill = [&](int pos, int top) -> bool {
    if (pos == n * k) {
      if (top != n - 1) return true;
      for (std::uint32_t acc = 0; acc < (1u << n); ++acc) {
        d.accept = acc;
        if (!visit(d)) return false;
      }
      return true;
    }
    if (pos % k == 0 && pos / k > top) return true;  // row of an unreached state
    for (int t = 0; t <= std::min(top + 1, n - 1); ++t) {
      d.delta[pos] = t;
      if (!fill(pos + 1, std::max(top, t))) return false;
    }
    return true;
  };
  return fill(0, 0);
}

// Canonical under renaming of states 1..n-1: the bit vector is numerically
// smallest among its renamings.
bool nfa_canonical(const SmallNfa& s) {
  if (s.n < 3) return true;
  std::vector<int> perm(s.n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin() + 1, perm.end())) {
    std::uint64_t b = 0;
    for (int q = 0; q < s.n; ++q) {
      for (int a = 0; a < s.k; ++a) {
        const std::uint32_t t = s.targets(q, a);
        for (int r = 0; r < s.n; ++r)
          if ((t >> r) & 1u) b |= std::uint64_t{1} << ((perm[q] * s.k + a) * s.n + perm[r]);
      }
      if (s.acc(q)) b |= std::uint64_t{1} << (s.n * s.n * s.k + perm[q]);
    }
    if (b < s.bits) return false;
  }
  return true;
}

template <class Visit>
bool for_each_small_nfa(int n, int k, Visit&& visit) {
  const int L = nfa_bits(n, k);
  if (L > 63) throw DomainError("NFA enumeration supports at most 63 transition bits");
  SmallNfa s;
  s.n = n;
  s.k = k;
  const std::uint64_t limit = std::uint64_t{1} << L;
  for (int p = 0; p <= L; ++p) {
    std::uint64_t b = p == 0 ? 0 : (std::uint64_t{1} << p) - 1;
    for (;;) {
      s.bits = b;
      if (nfa_canonical(s) && !visit(s)) return false;
      if (b == 0) break;
      const std::uint64_t c = b & (~b + 1), r = b + c;  // next with the same popcount
      b = (((r ^ b) >> 2) / c) | r;
      if (b >= limit) break;
    }
  }
  return true;
}

struct SmallCnf {
  int n = 0, t = 0;
  std::vector<std::uint32_t> masks;  // per nonterminal: t terminal bits, then n*n pair bits
  int slots() const { return t + n * n; }
};

std::vector<std::string> nonterminal_names(int n, const Alphabet& terminals) {
  std::vector<std::string> out;
  const std::set<Symbol> ts(terminals.begin(), terminals.end());
  for (int i = 0; i < n; ++i) {
    std::string s = i == 0 ? "S" : std::string(1, static_cast<char>('A' + (i - 1) % 18));
    if (i > 18) s += std::to_string(i);
    while (ts.count(s)) s += "'";
    out.push_back(s);
  }
  return out;
}

Cfg device_of(const SmallCnf& c, const Alphabet& alphabet) {
  Cfg g;
  g.terminals = alphabet;
  g.nonterminals = nonterminal_names(c.n, alphabet);
  g.start = g.nonterminals[0];
  for (int x = 0; x < c.n; ++x) {
    for (int s = 0; s < c.slots(); ++s) {
      if (!((c.masks[x] >> s) & 1u)) continue;
      if (s < c.t) {
        g.rules.push_back({g.nonterminals[x], {alphabet[s]}});
      } else {
        const int p = s - c.t;
        g.rules.push_back({g.nonterminals[x], {g.nonterminals[p / c.n], g.nonterminals[p % c.n]}});
      }
    }
  }
  return g;
}

bool cnf_canonical(const SmallCnf& c) {
  std::vector<int> perm(c.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> other(c.n);
  while (std::next_permutation(perm.begin() + 1, perm.end())) {
    for (int x = 0; x < c.n; ++x) {
      std::uint32_t m = c.masks[x] & ((1u << c.t) - 1);
      for (int p = 0; p < c.n * c.n; ++p)
        if ((c.masks[x] >> (c.t + p)) & 1u) m |= 1u << (c.t + perm[p / c.n] * c.n + perm[p % c.n]);
      other[perm[x]] = m;
    }
    if (other < c.masks) return false;
  }
  return true;
}

// Rule-set tuples in lexicographic order (start symbol's set most
// significant), every set nonempty.
template <class Visit>
bool for_each_small_cnf(int n, int t, Visit&& visit) {
  SmallCnf c;
  c.n = n;
  c.t = t;
  if (c.slots() > 31) throw DomainError("CNF enumeration supports at most 31 rule slots");
  const std::uint32_t top = (1u << c.slots()) - 1;
  c.masks.assign(n, 1);
  for (;;) {
    if (cnf_canonical(c) && !visit(c)) return false;
    int i = n - 1;
    while (i >= 0 && c.masks[i] == top) c.masks[i--] = 1;
    if (i < 0) return true;
    ++c.masks[i];
  }
}

bool cnf_derives(const SmallCnf& c, const std::vector<int>& w) {
  const int len = static_cast<int>(w.size());
  if (len == 0) return false;
  // table[i][l]: nonterminals deriving w[i .. i+l]
  std::vector<std::uint32_t> tab(len * len, 0);
  auto at = [&](int i, int l) -> std::uint32_t& { return tab[i * len + l]; };
  for (int i = 0; i < len; ++i)
    for (int x = 0; x < c.n; ++x)
      if ((c.masks[x] >> w[i]) & 1u) at(i, 0) |= 1u << x;
  for (int l = 1; l < len; ++l)
    for (int i = 0; i + l < len; ++i)
      for (int split = 0; split < l; ++split) {
        const std::uint32_t left = at(i, split), right = at(i + split + 1, l - split - 1);
        if (!left || !right) continue;
        for (int x = 0; x < c.n; ++x) {
          if ((at(i, l) >> x) & 1u) continue;
          for (std::uint32_t lm = left; lm; lm &= lm - 1) {
            const int b = std::countr_zero(lm);
            const std::uint32_t pairs = (c.masks[x] >> (c.t + b * c.n)) & ((1u << c.n) - 1);
            if (pairs & right) {
              at(i, l) |= 1u << x;
              break;
            }
          }
        }
      }
  return at(0, len - 1) & 1u;
}

// Target verdicts on every word of the horizon, in length-lex order.
struct Table {
  std::vector<std::vector<int>> words;
  std::vector<char> verdict;
};

Table table_of(const Subject& target, const Alphabet& alphabet, std::size_t len,
               std::uint64_t budget) {
  require_budget(alphabet.size(), len, budget);
  const Guarded f(target);
  Table t;
  std::map<Symbol, int> ids;
  for (std::size_t i = 0; i < alphabet.size(); ++i) ids[alphabet[i]] = static_cast<int>(i);
  for_each_word(alphabet, len, [&](const Word& w) {
    std::vector<int> v;
    for (const auto& s : w) v.push_back(ids[s]);
    t.words.push_back(std::move(v));
    t.verdict.push_back(f(w));
    return true;
  });
  return t;
}

template <class Accepts>
bool agrees(const Table& t, Accepts&& accepts) {
  for (std::size_t i = 0; i < t.words.size(); ++i)
    if (accepts(t.words[i]) != static_cast<bool>(t.verdict[i])) return false;
  return true;
}

bool dfa_run(const SmallDfa& d, const std::vector<int>& w) {
  int q = 0;
  for (int a : w) q = d.at(q, a);
  return d.acc(q);
}

bool nfa_run(const SmallNfa& s, const std::vector<int>& w) {
  std::uint32_t set = 1;
  for (int a : w) {
    std::uint32_t nx = 0;
    for (std::uint32_t m = set; m; m &= m - 1) nx |= s.targets(std::countr_zero(m), a);
    set = nx;
    if (!set) return false;
  }
  for (std::uint32_t m = set; m; m &= m - 1)
    if (s.acc(std::countr_zero(m))) return true;
  return false;
}

std::optional<Dfa> regular_target(const Subject& s) {
  const auto* d = std::get_if<Device>(&s);
  if (!d) return std::nullopt;
  if (const auto* x = std::get_if<Dfa>(d)) return *x;
  if (const auto* x = std::get_if<Nfa>(d)) return nfa_to_dfa(*x).first;
  return std::nullopt;
}

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_)
      throw BudgetExceeded("candidate budget of " + std::to_string(limit_) + " exhausted");
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_, used_ = 0;
};

std::string describe(const SmallNfa& s) {
  return "nfa" + std::to_string(s.n) + ":" + std::to_string(s.bits);
}

std::string describe(const SmallDfa& d) {
  std::string out = "dfa" + std::to_string(d.n) + ":";
  for (int t : d.delta) out += std::to_string(t);
  return out + ":acc" + std::to_string(d.accept);
}

}  // namespace

// ---- public enumeration ---------------------------------------------------

std::uint64_t for_each_device(const SizeEnumeration& e, std::size_t size,
                              const std::function<bool(const Device&)>& visit) {
  if (size < 1) throw DomainError("device sizes start at 1");
  if (e.alphabet.empty()) throw DomainError("enumeration needs a nonempty alphabet");
  const int n = static_cast<int>(size), k = static_cast<int>(e.alphabet.size());
  std::uint64_t count = 0;
  switch (e.cls) {
    case DeviceClass::kDfa:
      for_each_small_dfa(n, k, [&](const SmallDfa& d) {
        ++count;
        return visit(device_of(d, e.alphabet));
      });
      break;
    case DeviceClass::kNfa:
      for_each_small_nfa(n, k, [&](const SmallNfa& s) {
        ++count;
        return visit(device_of(s, e.alphabet));
      });
      break;
    case DeviceClass::kCnfCfg:
      for_each_small_cnf(n, k, [&](const SmallCnf& c) {
        ++count;
        return visit(device_of(c, e.alphabet));
      });
      break;
  }
  return count;
}

std::vector<Device> enumerate_devices(const SizeEnumeration& e, std::size_t count,
                                      std::uint64_t budget) {
  if (count < 1) throw DomainError("count must be at least 1");
  std::vector<Device> out;
  Budget b(budget);
  for (std::size_t size = 1; out.size() < count; ++size) {
    for_each_device(e, size, [&](const Device& d) {
      b.tick();
      out.push_back(d);
      return out.size() < count;
    });
  }
  return out;
}

// ---- minimal devices ------------------------------------------------------

MinSearchResult min_device_search(const Subject& target, DeviceClass cls, const Horizon& h,
                                  std::uint64_t budget, std::size_t max_size) {
  if (budget < 1) throw DomainError("budget must be positive");
  MinSearchResult r;
  r.horizon = h.max_length;
  const auto regular = regular_target(target);

  if (regular && cls == DeviceClass::kDfa) {
    Dfa m = dfa_minimize(*regular);
    r.size = static_cast<std::size_t>(m.num_states());
    r.witness = std::move(m);
    r.exact = true;
    r.method = "minimization";
    r.candidates = 1;
    return r;
  }

  Budget b(budget);
  if (regular && cls == DeviceClass::kNfa) {
    const SmallDfa t = minimal(small_of(*regular));
    const int k = static_cast<int>(regular->alphabet.size());
    for (std::size_t size = 1; size <= max_size; ++size) {
      std::optional<SmallNfa> hit;
      for_each_small_nfa(static_cast<int>(size), k, [&](const SmallNfa& s) {
        b.tick();
        if (!nfa_equals(s, t)) return true;
        hit = s;
        return false;
      });
      if (hit) {
        r.size = size;
        r.witness = device_of(*hit, regular->alphabet);
        r.exact = true;
        r.method = "exhaustive enumeration, exact product check";
        r.candidates = b.used();
        return r;
      }
    }
    throw BudgetExceeded("no NFA up to size " + std::to_string(max_size));
  }

  const Alphabet alphabet = horizon_alphabet(h, subject_alphabet(target));
  const Table table = table_of(target, alphabet, h.max_length, kDefaultWordBudget);
  const int k = static_cast<int>(alphabet.size());
  r.method = "enumeration, agreement up to the horizon";
  for (std::size_t size = 1; size <= max_size; ++size) {
    const int n = static_cast<int>(size);
    std::optional<Device> hit;
    switch (cls) {
      case DeviceClass::kDfa:
        for_each_small_dfa(n, k, [&](const SmallDfa& d) {
          b.tick();
          if (!agrees(table, [&](const std::vector<int>& w) { return dfa_run(d, w); })) return true;
          hit = device_of(d, alphabet);
          return false;
        });
        break;
      case DeviceClass::kNfa:
        for_each_small_nfa(n, k, [&](const SmallNfa& s) {
          b.tick();
          if (!agrees(table, [&](const std::vector<int>& w) { return nfa_run(s, w); })) return true;
          hit = device_of(s, alphabet);
          return false;
        });
        break;
      case DeviceClass::kCnfCfg:
        for_each_small_cnf(n, k, [&](const SmallCnf& c) {
          b.tick();
          if (!agrees(table, [&](const std::vector<int>& w) { return cnf_derives(c, w); })) return true;
          hit = device_of(c, alphabet);
          return false;
        });
        break;
    }
    if (hit) {
      r.size = size;
      r.witness = std::move(*hit);
      r.candidates = b.used();
      return r;
    }
  }
  throw BudgetExceeded("no " + class_name(cls) + " up to size " + std::to_string(max_size));
}

// ---- bounding estimate ----------------------------------------------------

BoundingEstimate bounding_estimate(DevicePair pair, std::size_t n, const Horizon& h,
                                   const EstimateOptions& options) {
  if (n < 1) throw DomainError("n must be at least 1");
  BoundingEstimate est;
  est.pair = pair;
  est.n = n;
  est.horizon = h;
  if (est.horizon.alphabet.empty()) est.horizon.alphabet = {"a", "b"};
  const Alphabet& alphabet = est.horizon.alphabet;
  const int k = static_cast<int>(alphabet.size());

  std::map<std::string, EstimateRow> by_language;
  auto record = [&](const std::string& lang, EstimateRow row) {
    auto [it, fresh] = by_language.emplace(lang, row);
    if (!fresh) return;
    ++est.distinct_languages;
    if (!row.min_size) {
      ++est.failures;
    } else {
      est.all_exact = est.all_exact && row.exact;
      if (!est.max_witness || *row.min_size > est.max) {
        est.max = *row.min_size;
        est.max_witness = row;
      }
    }
    if (est.rows.size() < options.max_rows) est.rows.push_back(std::move(row));
  };

  Budget b(options.enumeration_budget);
  try {
    for (std::size_t size = 1; size <= n; ++size) {
      const int s = static_cast<int>(size);
      if (pair == DevicePair::kDfaOverNfa) {
        for_each_small_nfa(s, k, [&](const SmallNfa& nfa) {
          b.tick();
          const SmallDfa m = minimal(determinize(nfa));
          const std::string lang = key_of(m);
          if (by_language.count(lang)) return true;
          record(lang, {b.used() - 1, describe(nfa), size, static_cast<std::size_t>(m.n), true, {}});
          return true;
        });
        continue;
      }
      for_each_small_dfa(s, k, [&](const SmallDfa& dfa) {
        b.tick();
        const SmallDfa m = minimal(dfa);
        const std::string lang = key_of(m);
        if (by_language.count(lang)) return true;
        EstimateRow row{b.used() - 1, describe(dfa), size, std::nullopt, false, {}};
        const Dfa target = device_of(m, alphabet);
        const DeviceClass cls = pair == DevicePair::kNfaOverDfa ? DeviceClass::kNfa : DeviceClass::kCnfCfg;
        if (cls == DeviceClass::kCnfCfg && m.acc(0)) {
          row.failure = "contains the empty word, which CNF grammars cannot derive";
        } else {
          try {
            auto found = min_device_search(Device(target), cls, est.horizon, options.search_budget);
            row.min_size = found.size;
            row.exact = found.exact;
          } catch (const BudgetExceeded& e) {
            row.failure = e.what();
          }
        }
        record(lang, std::move(row));
        return true;
      });
    }
  } catch (const BudgetExceeded&) {
    est.truncated = true;
  }
  est.devices = std::min(b.used(), options.enumeration_budget);
  return est;
}

}  // namespace succinct
