#pragma once

// Transformation-free Earley recognizer for arbitrary CFGs (epsilon and unit
// rules included), usable incrementally: push one terminal at a time, pop to
// backtrack. Besides acceptance each chart column answers two prefix
// questions used by the exhaustive sweeps:
//   viable()        some extension of the prefix is in the language
//   all_accepted()  every extension of the prefix is in the language
// all_accepted() is sound but not complete: it recognizes the case where the
// rest of the input can be absorbed by "universal" nonterminals (those with
// N -> eps and N -> t N for every terminal t, closed under N -> U1..Uk).

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "succinct/devices.hpp"

namespace succinct {

class CompiledGrammar {
 public:
  /// Compiles `g` after removing non-generating symbols. `extra_terminals`
  /// widens the terminal set (words may mention symbols the grammar never
  /// produces; those words are simply rejected).
  explicit CompiledGrammar(const Cfg& g, const Alphabet& extra_terminals = {});

  struct CRule {
    int lhs;
    std::vector<int> rhs;  // >= 0 nonterminal, < 0 terminal -(t+1)
  };

  int num_nonterminals() const { return static_cast<int>(nullable_.size()); }
  int num_terminals() const { return static_cast<int>(terminals_.size()); }
  const Alphabet& terminals() const { return terminals_; }
  /// -1 when the symbol is not a terminal of this grammar.
  int terminal_id(const Symbol& s) const;
  int start() const { return start_; }
  bool start_generating() const { return start_ >= 0; }
  const std::vector<CRule>& rules() const { return rules_; }
  const std::vector<int>& rules_of(int nt) const { return by_lhs_[nt]; }
  bool nullable(int nt) const { return nullable_[nt]; }
  bool universal(int nt) const { return universal_[nt]; }

 private:
  Alphabet terminals_;
  std::unordered_map<Symbol, int> terminal_ids_;
  std::vector<CRule> rules_;
  std::vector<std::vector<int>> by_lhs_;
  std::vector<bool> nullable_;
  std::vector<bool> universal_;
  int start_ = -1;
};

class ChartParser {
 public:
  explicit ChartParser(std::shared_ptr<const CompiledGrammar> g);

  /// Appends a terminal (id from CompiledGrammar::terminal_id; -1 kills the
  /// column).
  void push(int terminal);
  void pop();
  void reset();
  std::size_t length() const { return columns_.size() - 1; }

  bool accepted() const;
  bool viable() const;
  /// Lazily computed and cached per column, hence non-const.
  bool all_accepted();

  /// Whole-word convenience; resets the parser.
  bool recognize(const Word& w);

 private:
  struct Item {
    std::uint32_t rule;
    std::uint32_t dot;
    std::uint32_t origin;
  };
  // Context strength of a nonterminal predicted in a column: what the rest of
  // the enclosing derivation can absorb after it completes.
  enum Ctx : std::uint8_t { kNone = 0, kNullable = 1, kUniversal = 2 };
  struct Column {
    std::vector<Item> items;
    std::unordered_set<std::uint64_t> seen;
    // nonterminal -> indices of items whose dot is before it
    std::unordered_map<int, std::vector<std::uint32_t>> waiting;
    std::vector<Ctx> ctx;  // indexed by nonterminal, filled lazily
    bool ctx_done = false;
    int all_accepted = -1;
  };

  void add(Column& col, Item it);
  void close(std::size_t k);
  const std::vector<Ctx>& contexts(std::size_t k);
  Ctx combine(const std::vector<int>& tail, std::size_t from, Ctx c) const;

  std::shared_ptr<const CompiledGrammar> g_;
  std::vector<Column> columns_;
};

}  // namespace succinct
