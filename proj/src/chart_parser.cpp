#include "succinct/chart_parser.hpp"

#include <algorithm>

namespace succinct {

CompiledGrammar::CompiledGrammar(const Cfg& g, const Alphabet& extra_terminals) {
  std::unordered_map<Symbol, int> nt_ids;
  for (const auto& n : g.nonterminals) {
    nt_ids.emplace(n, static_cast<int>(nt_ids.size()));
  }
  auto add_terminal = [&](const Symbol& t) {
    if (terminal_ids_.count(t) || nt_ids.count(t)) return;
    terminal_ids_.emplace(t, static_cast<int>(terminals_.size()));
    terminals_.push_back(t);
  };
  for (const auto& t : g.terminals) add_terminal(t);
  for (const auto& t : extra_terminals) add_terminal(t);

  const int n = static_cast<int>(nt_ids.size());
  std::vector<CRule> all;
  all.reserve(g.rules.size());
  for (const auto& r : g.rules) {
    auto lhs = nt_ids.find(r.lhs);
    if (lhs == nt_ids.end()) throw ValidationError("rule LHS not a nonterminal: " + r.lhs);
    CRule cr{lhs->second, {}};
    for (const auto& s : r.rhs) {
      if (auto it = nt_ids.find(s); it != nt_ids.end()) {
        cr.rhs.push_back(it->second);
      } else if (auto tt = terminal_ids_.find(s); tt != terminal_ids_.end()) {
        cr.rhs.push_back(-(tt->second + 1));
      } else {
        throw ValidationError("undeclared symbol on rule RHS: " + s);
      }
    }
    all.push_back(std::move(cr));
  }

  // generating fixpoint
  std::vector<bool> gen(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : all) {
      if (gen[r.lhs]) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(),
                      [&](int s) { return s < 0 || gen[s]; })) {
        gen[r.lhs] = true;
        changed = true;
      }
    }
  }
  for (auto& r : all) {
    if (gen[r.lhs] && std::all_of(r.rhs.begin(), r.rhs.end(),
                                  [&](int s) { return s < 0 || gen[s]; })) {
      rules_.push_back(std::move(r));
    }
  }
  by_lhs_.assign(n, {});
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    by_lhs_[rules_[i].lhs].push_back(static_cast<int>(i));
  }

  nullable_.assign(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules_) {
      if (nullable_[r.lhs]) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(),
                      [&](int s) { return s >= 0 && nullable_[s]; })) {
        nullable_[r.lhs] = true;
        changed = true;
      }
    }
  }

  // Syntactic universality: N -> eps and N -> t N for every terminal t.
  universal_.assign(n, false);
  for (int a = 0; a < n; ++a) {
    bool eps = false;
    std::vector<bool> loops(terminals_.size(), false);
    for (int ri : by_lhs_[a]) {
      const auto& rhs = rules_[ri].rhs;
      if (rhs.empty()) eps = true;
      if (rhs.size() == 2 && rhs[0] < 0 && rhs[1] == a) loops[-rhs[0] - 1] = true;
    }
    universal_[a] =
        eps && std::all_of(loops.begin(), loops.end(), [](bool b) { return b; });
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules_) {
      if (universal_[r.lhs] || r.rhs.empty()) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(),
                      [&](int s) { return s >= 0 && universal_[s]; })) {
        universal_[r.lhs] = true;
        changed = true;
      }
    }
  }

  if (auto it = nt_ids.find(g.start); it != nt_ids.end() && gen[it->second]) {
    start_ = it->second;
  }
}

int CompiledGrammar::terminal_id(const Symbol& s) const {
  auto it = terminal_ids_.find(s);
  return it == terminal_ids_.end() ? -1 : it->second;
}

ChartParser::ChartParser(std::shared_ptr<const CompiledGrammar> g) : g_(std::move(g)) {
  reset();
}

void ChartParser::reset() {
  columns_.clear();
  columns_.emplace_back();
  if (g_->start_generating()) {
    for (int ri : g_->rules_of(g_->start())) {
      add(columns_[0], Item{static_cast<std::uint32_t>(ri), 0, 0});
    }
    close(0);
  }
}

void ChartParser::add(Column& col, Item it) {
  const std::uint64_t key = (static_cast<std::uint64_t>(it.rule) << 40) |
                            (static_cast<std::uint64_t>(it.dot) << 24) | it.origin;
  if (col.seen.insert(key).second) col.items.push_back(it);
}

void ChartParser::close(std::size_t k) {
  const auto& rules = g_->rules();
  for (std::size_t i = 0; i < columns_[k].items.size(); ++i) {
    const Item it = columns_[k].items[i];
    const auto& rule = rules[it.rule];
    if (it.dot < rule.rhs.size()) {
      const int sym = rule.rhs[it.dot];
      if (sym < 0) continue;
      auto& waiting = columns_[k].waiting[sym];
      const bool first = waiting.empty();
      waiting.push_back(static_cast<std::uint32_t>(i));
      if (first) {
        for (int ri : g_->rules_of(sym)) {
          add(columns_[k], Item{static_cast<std::uint32_t>(ri), 0,
                                static_cast<std::uint32_t>(k)});
        }
      }
      if (g_->nullable(sym)) add(columns_[k], Item{it.rule, it.dot + 1, it.origin});
    } else if (it.origin != k) {
      auto wit = columns_[it.origin].waiting.find(rule.lhs);
      if (wit == columns_[it.origin].waiting.end()) continue;
      for (std::uint32_t pi : wit->second) {
        const Item p = columns_[it.origin].items[pi];
        add(columns_[k], Item{p.rule, p.dot + 1, p.origin});
      }
    }
  }
}

void ChartParser::push(int terminal) {
  columns_.emplace_back();
  const std::size_t k = columns_.size() - 1;
  if (terminal < 0) return;
  const int code = -(terminal + 1);
  const auto& rules = g_->rules();
  for (const Item& it : columns_[k - 1].items) {
    const auto& rhs = rules[it.rule].rhs;
    if (it.dot < rhs.size() && rhs[it.dot] == code) {
      add(columns_[k], Item{it.rule, it.dot + 1, it.origin});
    }
  }
  close(k);
}

void ChartParser::pop() {
  if (columns_.size() > 1) columns_.pop_back();
}

bool ChartParser::accepted() const {
  const auto& rules = g_->rules();
  for (const Item& it : columns_.back().items) {
    const auto& r = rules[it.rule];
    if (it.origin == 0 && it.dot == r.rhs.size() && r.lhs == g_->start()) return true;
  }
  return false;
}

bool ChartParser::viable() const { return !columns_.back().items.empty(); }

ChartParser::Ctx ChartParser::combine(const std::vector<int>& tail, std::size_t from,
                                      Ctx c) const {
  if (c == kNone) return kNone;
  bool any_universal = false;
  for (std::size_t i = from; i < tail.size(); ++i) {
    const int s = tail[i];
    if (s < 0 || !g_->nullable(s)) return kNone;
    any_universal = any_universal || g_->universal(s);
  }
  return any_universal ? kUniversal : c;
}

const std::vector<ChartParser::Ctx>& ChartParser::contexts(std::size_t k) {
  if (columns_[k].ctx_done) return columns_[k].ctx;
  for (std::size_t j = 0; j < k; ++j) contexts(j);
  const auto& rules = g_->rules();
  std::vector<Ctx> ctx(g_->num_nonterminals(), kNone);
  if (k == 0 && g_->start_generating()) ctx[g_->start()] = kNullable;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Item& it : columns_[k].items) {
      const auto& r = rules[it.rule];
      if (it.dot >= r.rhs.size() || r.rhs[it.dot] < 0) continue;
      const Ctx parent = it.origin == k ? ctx[r.lhs] : columns_[it.origin].ctx[r.lhs];
      const Ctx v = combine(r.rhs, it.dot + 1, parent);
      Ctx& slot = ctx[r.rhs[it.dot]];
      if (v > slot) {
        slot = v;
        changed = true;
      }
    }
  }
  columns_[k].ctx = std::move(ctx);
  columns_[k].ctx_done = true;
  return columns_[k].ctx;
}

bool ChartParser::all_accepted() {
  const std::size_t k = columns_.size() - 1;
  Column& col = columns_[k];
  if (col.all_accepted >= 0) return col.all_accepted == 1;
  contexts(k);
  const auto& rules = g_->rules();
  bool result = false;
  for (const Item& it : columns_[k].items) {
    const auto& r = rules[it.rule];
    const Ctx c = columns_[it.origin].ctx[r.lhs];
    if (combine(r.rhs, it.dot, c) == kUniversal) {
      result = true;
      break;
    }
  }
  columns_[k].all_accepted = result ? 1 : 0;
  return result;
}

bool ChartParser::recognize(const Word& w) {
  reset();
  for (const auto& s : w) {
    push(g_->terminal_id(s));
    if (!viable()) return false;
  }
  return accepted();
}

}  // namespace succinct
