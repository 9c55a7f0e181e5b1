#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>

#include "succinct/devices.hpp"

namespace succinct {

/// Breadth-first search over sentential forms of a noncontracting grammar.
/// A word of length L can only be derived through forms of length <= L, so
/// the search space is finite. `budget` caps the number of distinct forms
/// visited by a single search; passing it throws BudgetExceeded.
class CsgSearch {
 public:
  CsgSearch(const Csg& g, std::size_t budget);

  /// True iff the grammar derives `w` (early exit on the first hit).
  bool derives(const Word& w) const;

  /// Same answer as derives(), served from a memoized enumeration of every
  /// terminal word of length <= |w|. Sweeps over many words should use this.
  bool derives_cached(const Word& w);

  /// Number of forms visited by the most recent full enumeration.
  std::size_t last_visited() const { return last_visited_; }

 private:
  using Form = std::u16string;
  Form encode(const Word& w) const;
  void enumerate(std::size_t max_length);

  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, char16_t> ids_;
  std::vector<bool> is_terminal_;
  std::vector<std::pair<Form, Form>> rules_;
  char16_t start_ = 0;
  bool start_eps_ = false;
  std::size_t budget_;

  std::size_t cached_length_ = 0;
  bool cached_ = false;
  std::unordered_set<Form> cached_words_;
  std::size_t last_visited_ = 0;
};

}  // namespace succinct
