#include "succinct/csg_search.hpp"

#include <deque>

namespace succinct {

CsgSearch::CsgSearch(const Csg& g, std::size_t budget) : budget_(budget) {
  auto add = [&](const Symbol& s, bool terminal) {
    if (ids_.count(s)) return;
    ids_.emplace(s, static_cast<char16_t>(symbols_.size() + 1));
    symbols_.push_back(s);
    is_terminal_.push_back(terminal);
  };
  for (const auto& n : g.nonterminals) add(n, false);
  for (const auto& t : g.terminals) add(t, true);
  auto enc = [&](const std::vector<Symbol>& v) {
    Form f;
    for (const auto& s : v) {
      auto it = ids_.find(s);
      if (it == ids_.end()) throw ValidationError("undeclared CSG symbol: " + s);
      f.push_back(it->second);
    }
    return f;
  };
  start_ = enc({g.start})[0];
  for (const auto& r : g.rules) {
    if (r.lhs.size() == 1 && r.lhs[0] == g.start && r.rhs.empty()) {
      start_eps_ = true;
      continue;
    }
    rules_.emplace_back(enc(r.lhs), enc(r.rhs));
  }
}

CsgSearch::Form CsgSearch::encode(const Word& w) const {
  Form f;
  for (const auto& s : w) {
    auto it = ids_.find(s);
    if (it == ids_.end() || !is_terminal_[it->second - 1]) {
      throw InputError("symbol not a terminal of the grammar: " + s);
    }
    f.push_back(it->second);
  }
  return f;
}

bool CsgSearch::derives(const Word& w) const {
  if (w.empty()) return start_eps_;
  const Form target = encode(w);
  const std::size_t limit = target.size();
  std::unordered_set<Form> visited{Form(1, start_)};
  std::deque<Form> queue{Form(1, start_)};
  while (!queue.empty()) {
    Form f = std::move(queue.front());
    queue.pop_front();
    if (f == target) return true;
    for (const auto& [lhs, rhs] : rules_) {
      if (f.size() - lhs.size() + rhs.size() > limit) continue;
      for (auto pos = f.find(lhs); pos != Form::npos; pos = f.find(lhs, pos + 1)) {
        Form next = f.substr(0, pos) + rhs + f.substr(pos + lhs.size());
        if (next == target) return true;
        if (visited.insert(next).second) {
          if (visited.size() > budget_) {
            throw BudgetExceeded("CSG search passed its budget of " +
                                 std::to_string(budget_) + " sentential forms");
          }
          queue.push_back(std::move(next));
        }
      }
    }
  }
  return false;
}

void CsgSearch::enumerate(std::size_t max_length) {
  std::unordered_set<Form> visited{Form(1, start_)};
  std::deque<Form> queue{Form(1, start_)};
  cached_words_.clear();
  while (!queue.empty()) {
    Form f = std::move(queue.front());
    queue.pop_front();
    bool terminal = true;
    for (char16_t c : f) terminal = terminal && is_terminal_[c - 1];
    if (terminal) cached_words_.insert(f);
    for (const auto& [lhs, rhs] : rules_) {
      if (f.size() - lhs.size() + rhs.size() > max_length) continue;
      for (auto pos = f.find(lhs); pos != Form::npos; pos = f.find(lhs, pos + 1)) {
        Form next = f.substr(0, pos) + rhs + f.substr(pos + lhs.size());
        if (visited.insert(next).second) {
          if (visited.size() > budget_) {
            throw BudgetExceeded("CSG search passed its budget of " +
                                 std::to_string(budget_) + " sentential forms");
          }
          queue.push_back(std::move(next));
        }
      }
    }
  }
  last_visited_ = visited.size();
  cached_length_ = max_length;
  cached_ = true;
}

bool CsgSearch::derives_cached(const Word& w) {
  if (w.empty()) return start_eps_;
  const Form target = encode(w);
  if (!cached_ || target.size() > cached_length_) enumerate(target.size());
  return cached_words_.count(target) > 0;
}

}  // namespace succinct
