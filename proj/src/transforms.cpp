#include "succinct/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "succinct/dpda_sim.hpp"
#include "succinct/pda_grammar.hpp"

namespace succinct {
namespace {

void require_valid(const Device& d) {
  auto v = validate(d);
  if (!v.empty()) throw ValidationError(v.front());
}

ConversionReceipt receipt(std::string conversion, std::size_t in, std::size_t out,
                          std::string bound, double value) {
  return {std::move(conversion), in, out, std::move(bound), value,
          static_cast<double>(out) <= value, {}};
}

std::string fresh(std::string base, const std::set<std::string>& used) {
  while (used.count(base)) base += "'";
  return base;
}

std::vector<int> epsilon_closure(const Nfa& n, std::vector<int> set) {
  std::vector<bool> in(n.num_states(), false);
  for (int q : set) in[q] = true;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (n.epsilon.empty()) break;
    for (int r : n.epsilon[set[i]]) {
      if (!in[r]) {
        in[r] = true;
        set.push_back(r);
      }
    }
  }
  std::vector<int> out;
  for (int q = 0; q < n.num_states(); ++q)
    if (in[q]) out.push_back(q);
  return out;
}

// Keeps the states reachable from the start, renumbered in BFS order.
Dfa reachable_part(const Dfa& d) {
  std::vector<int> index(d.num_states(), -1);
  std::vector<int> order{d.start};
  index[d.start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int t : d.delta[order[i]]) {
      if (index[t] < 0) {
        index[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  Dfa out;
  out.alphabet = d.alphabet;
  for (int q : order) {
    out.state_names.push_back(d.state_names[q]);
    out.accepting.push_back(d.accepting[q]);
    std::vector<int> row;
    for (int t : d.delta[q]) row.push_back(index[t]);
    out.delta.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::pair<Dfa, ConversionReceipt> nfa_to_dfa(const Nfa& n) {
  require_valid(n);
  const int k = static_cast<int>(n.alphabet.size());
  Dfa d;
  d.alphabet = n.alphabet;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> s) {
    auto [it, added] = index.emplace(s, static_cast<int>(subsets.size()));
    if (added) subsets.push_back(std::move(s));
    return it->second;
  };
  intern(epsilon_closure(n, {n.start}));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<int> row;
    for (int a = 0; a < k; ++a) {
      std::set<int> next;
      for (int q : subsets[i])
        for (int r : n.delta[q][a]) next.insert(r);
      row.push_back(intern(epsilon_closure(n, {next.begin(), next.end()})));
    }
    d.delta.push_back(std::move(row));
  }
  for (const auto& s : subsets) {
    std::string name = "{";
    bool acc = false;
    for (std::size_t j = 0; j < s.size(); ++j) {
      name += (j ? "," : "") + n.state_names[s[j]];
      acc = acc || n.accepting[s[j]];
    }
    d.state_names.push_back(name + "}");
    d.accepting.push_back(acc);
  }
  const std::size_t in = size_of(n);
  auto r = receipt("nfa_to_dfa", in, size_of(d), "2^n", std::pow(2.0, static_cast<double>(in)));
  return {std::move(d), std::move(r)};
}

Dfa dfa_complement(const Dfa& d) {
  require_valid(d);
  Dfa out = d;
  out.accepting.flip();
  return out;
}

std::pair<Dfa, ConversionReceipt> dfa_product(const Dfa& a, const Dfa& b, ProductOp op) {
  require_valid(a);
  require_valid(b);
  if (a.alphabet != b.alphabet) throw DomainError("product of DFAs over different alphabets");
  const int k = static_cast<int>(a.alphabet.size());
  Dfa d;
  d.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto [it, added] = index.emplace(std::pair{p, q}, static_cast<int>(pairs.size()));
    if (added) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(a.start, b.start);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    std::vector<int> row;
    for (int s = 0; s < k; ++s) row.push_back(intern(a.delta[p][s], b.delta[q][s]));
    d.delta.push_back(std::move(row));
    d.state_names.push_back("(" + a.state_names[p] + "," + b.state_names[q] + ")");
    d.accepting.push_back(op == ProductOp::kAnd ? a.accepting[p] && b.accepting[q]
                                                : a.accepting[p] || b.accepting[q]);
  }
  const std::size_t n = size_of(a), m = size_of(b);
  auto r = receipt(op == ProductOp::kAnd ? "dfa_product(and)" : "dfa_product(or)", n + m,
                   size_of(d), "n*m", static_cast<double>(n * m));
  r.note = "sizes " + std::to_string(n) + " and " + std::to_string(m) +
           "; the product bound is n*m; a 2n bound (equal sizes n) is not asserted";
  return {std::move(d), std::move(r)};
}

Dfa dfa_minimize(const Dfa& input) {
  require_valid(input);
  const Dfa d = reachable_part(input);
  const int n = d.num_states();
  const int k = static_cast<int>(d.alphabet.size());
  std::vector<int> cls(n);
  for (int q = 0; q < n; ++q) cls[q] = d.accepting[q] ? 1 : 0;
  for (int classes = -1;;) {
    std::map<std::vector<int>, int> sig_index;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      for (int a = 0; a < k; ++a) sig.push_back(cls[d.delta[q][a]]);
      next[q] = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size())).first->second;
    }
    cls = std::move(next);
    if (static_cast<int>(sig_index.size()) == classes) break;
    classes = static_cast<int>(sig_index.size());
  }
  // Quotient, then BFS renumbering for a canonical form.
  Dfa q;
  q.alphabet = d.alphabet;
  const int m = *std::max_element(cls.begin(), cls.end()) + 1;
  q.state_names.resize(m);
  q.accepting.resize(m);
  q.delta.assign(m, {});
  for (int s = 0; s < n; ++s) {
    if (!q.delta[cls[s]].empty()) continue;
    q.state_names[cls[s]] = d.state_names[s];
    q.accepting[cls[s]] = d.accepting[s];
    for (int a = 0; a < k; ++a) q.delta[cls[s]].push_back(cls[d.delta[s][a]]);
  }
  q.start = cls[d.start];
  Dfa out = reachable_part(q);
  for (int s = 0; s < out.num_states(); ++s) out.state_names[s] = "m" + std::to_string(s);
  return out;
}

std::pair<Pda, ConversionReceipt> cfg_to_pda(const Cfg& g) {
  require_valid(g);
  Pda p;
  p.state_names = {"start", "loop", "accept"};
  p.alphabet = g.terminals;
  std::map<Symbol, int> stack_id;
  for (const auto& s : g.nonterminals) stack_id[s] = static_cast<int>(stack_id.size());
  for (const auto& s : g.terminals) stack_id[s] = static_cast<int>(stack_id.size());
  p.stack_names.resize(stack_id.size());
  for (const auto& [s, i] : stack_id) p.stack_names[i] = s;
  std::set<std::string> used(p.stack_names.begin(), p.stack_names.end());
  const int bottom = static_cast<int>(p.stack_names.size());
  p.stack_names.push_back(fresh("#", used));
  p.start = 0;
  p.initial_stack = bottom;
  p.accepting = {false, false, true};
  p.moves.push_back({0, std::nullopt, bottom, 1, {stack_id[g.start], bottom}});
  for (const auto& r : g.rules) {
    std::vector<int> push;
    for (const auto& s : r.rhs) push.push_back(stack_id[s]);
    p.moves.push_back({1, std::nullopt, stack_id[r.lhs], 1, std::move(push)});
  }
  for (int a = 0; a < static_cast<int>(g.terminals.size()); ++a) {
    p.moves.push_back({1, a, stack_id[g.terminals[a]], 1, {}});
  }
  p.moves.push_back({1, std::nullopt, bottom, 2, {bottom}});
  const std::size_t in = size_of(g);
  auto r = receipt("cfg_to_pda", in, size_of(p), "n + |terminals| + 4",
                   static_cast<double>(in + g.terminals.size() + kCfgToPdaOverhead));
  return {std::move(p), std::move(r)};
}

std::pair<Cfg, ConversionReceipt> pda_to_cfg(const Pda& p) {
  require_valid(p);
  TripleGrammar t = triple_construction(p);
  const double bound =
      static_cast<double>(t.adapted_states * t.adapted_states * t.adapted_stack + 1);
  auto r = receipt("pda_to_cfg", size_of(p), size_of(t.grammar), "|Q'|^2*|G'| + 1", bound);
  r.note = "|Q'|=" + std::to_string(t.adapted_states) + " |G'|=" + std::to_string(t.adapted_stack) +
           ", " + std::to_string(t.triples_generated) + " triples generated before trimming";
  return {std::move(t.grammar), std::move(r)};
}

std::pair<Dpda, ConversionReceipt> dpda_complement(const Dpda& d) {
  require_valid(d);
  const DpdaTables t = dpda_tables(d);
  const int n = d.num_states(), m = d.num_stack();
  const int k = static_cast<int>(d.alphabet.size());

  // Stage 1: a complete machine without divergent epsilon loops.
  PushdownAutomaton full;
  std::set<std::string> names(d.state_names.begin(), d.state_names.end());
  const int s0 = n, rej = n + 1, acc = n + 2;
  full.state_names = d.state_names;
  for (const char* base : {"start", "reject", "accept"}) {
    full.state_names.push_back(fresh(base, names));
    names.insert(full.state_names.back());
  }
  full.alphabet = d.alphabet;
  full.stack_names = d.stack_names;
  std::set<std::string> stack_used(d.stack_names.begin(), d.stack_names.end());
  const int bottom = m;
  full.stack_names.push_back(fresh("#", stack_used));
  full.accepting = d.accepting;
  full.accepting.insert(full.accepting.end(), {false, false, true});
  full.start = s0;
  full.initial_stack = bottom;
  full.moves.push_back({s0, std::nullopt, bottom, d.start, {d.initial_stack, bottom}});
  for (int q = 0; q <= n; ++q) {
    for (int x = 0; x <= m; ++x) {
      if (q == s0) {
        // Only the bottom is ever under s0; the other tops just need totality.
        if (x == bottom) continue;
        for (int a = 0; a < k; ++a) full.moves.push_back({q, a, x, rej, {x}});
        continue;
      }
      const int e = x < m ? t.eps_move(q, x) : -1;
      if (e >= 0) {
        const ChainSummary c = epsilon_chain(d, t, q, x);
        if (c.outcome == ChainOutcome::kDiverges) {
          full.moves.push_back({q, std::nullopt, x, c.visits_accepting ? acc : rej, {x}});
        } else {
          full.moves.push_back(d.moves[e]);
        }
        continue;
      }
      for (int a = 0; a < k; ++a) {
        const int i = x < m ? t.input_move(q, x, a) : -1;
        if (i >= 0) {
          full.moves.push_back(d.moves[i]);
        } else {
          full.moves.push_back({q, a, x, rej, {x}});
        }
      }
    }
  }
  for (int sink : {rej, acc}) {
    for (int x = 0; x <= m; ++x)
      for (int a = 0; a < k; ++a) full.moves.push_back({sink, a, x, rej, {x}});
  }
  const DpdaTables ft = dpda_tables(full);

  // Stage 2: states (p, f). f = 1 once an accepting state was seen since the
  // last input symbol; f = 2 marks "blocked with no accepting visit", the only
  // accepting states of the complement.
  Dpda out;
  out.alphabet = d.alphabet;
  out.stack_names = full.stack_names;
  out.initial_stack = bottom;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> states;
  auto intern = [&](int p, int f) {
    auto [it, added] = index.emplace(std::pair{p, f}, static_cast<int>(states.size()));
    if (added) states.emplace_back(p, f);
    return it->second;
  };
  auto flag_after = [&](int f, int p) { return (f == 1 || full.accepting[p]) ? 1 : 0; };
  out.start = intern(s0, full.accepting[s0] ? 1 : 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [p, f] = states[i];
    const int from = static_cast<int>(i);
    for (int x = 0; x <= m; ++x) {
      const int e = ft.eps_move(p, x);
      if (e >= 0) {
        if (f == 2) continue;  // (p, 2) is entered only on blocked tops
        const PdaMove& mv = full.moves[e];
        out.moves.push_back({from, std::nullopt, x, intern(mv.to, flag_after(f, mv.to)), mv.push});
        continue;
      }
      if (f == 0) {
        out.moves.push_back({from, std::nullopt, x, intern(p, 2), {x}});
        continue;
      }
      for (int a = 0; a < k; ++a) {
        const PdaMove& mv = full.moves[ft.input_move(p, x, a)];
        out.moves.push_back({from, a, x, intern(mv.to, full.accepting[mv.to] ? 1 : 0), mv.push});
      }
    }
  }
  for (const auto& [p, f] : states) {
    out.state_names.push_back(full.state_names[p] + "|" + std::to_string(f));
    out.accepting.push_back(f == 2);
  }
  const std::size_t in = size_of(d);
  auto r = receipt("dpda_complement", in, size_of(out), "3n + 10", 3.0 * in + 10);
  return {std::move(out), std::move(r)};
}

}  // namespace succinct
