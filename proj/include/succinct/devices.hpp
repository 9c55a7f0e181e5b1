#pragma once

// Device representations, their size measures and membership engines.
//
// Automata are index based: states are 0..n-1 (names kept for I/O), input
// symbols are indices into `alphabet`. Grammars are name based.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "succinct/word.hpp"

namespace succinct {

struct Dfa {
  std::vector<std::string> state_names;
  Alphabet alphabet;
  /// delta[state][symbol] -> state; total.
  std::vector<std::vector<int>> delta;
  int start = 0;
  std::vector<bool> accepting;

  int num_states() const { return static_cast<int>(state_names.size()); }
};

struct Nfa {
  std::vector<std::string> state_names;
  Alphabet alphabet;
  /// delta[state][symbol] -> successor states
  std::vector<std::vector<std::vector<int>>> delta;
  /// epsilon[state] -> successor states
  std::vector<std::vector<int>> epsilon;
  int start = 0;
  std::vector<bool> accepting;

  int num_states() const { return static_cast<int>(state_names.size()); }
};

/// One pushdown move: in `from` with `top` on the stack, optionally reading
/// `input`, replace `top` by `push` (push[0] becomes the new top) and go to
/// `to`.
struct PdaMove {
  int from = 0;
  std::optional<int> input;  // nullopt = epsilon move
  int top = 0;
  int to = 0;
  std::vector<int> push;

  friend bool operator==(const PdaMove&, const PdaMove&) = default;
};

/// Shared layout of PDAs and DPDAs. Acceptance is by final state: a word is
/// accepted when some configuration reached after consuming all of it is in
/// an accepting state.
struct PushdownAutomaton {
  std::vector<std::string> state_names;
  Alphabet alphabet;
  std::vector<std::string> stack_names;
  std::vector<PdaMove> moves;
  int start = 0;
  int initial_stack = 0;
  std::vector<bool> accepting;

  int num_states() const { return static_cast<int>(state_names.size()); }
  int num_stack() const { return static_cast<int>(stack_names.size()); }
};

struct Pda : PushdownAutomaton {};
/// Deterministic: for every (state, stack top) either exactly one epsilon move
/// and no input moves, or at most one move per input symbol.
struct Dpda : PushdownAutomaton {};

struct Rule {
  Symbol lhs;
  std::vector<Symbol> rhs;  // empty = epsilon

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Cfg {
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  std::vector<Rule> rules;
  Symbol start;
};

struct CsgRule {
  std::vector<Symbol> lhs;
  std::vector<Symbol> rhs;
};

/// Noncontracting grammar; `start -> epsilon` is allowed when start never
/// occurs on a right-hand side.
struct Csg {
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  std::vector<CsgRule> rules;
  Symbol start;
};

using Device = std::variant<Dfa, Nfa, Dpda, Pda, Cfg, Csg>;

/// Reference semantics given as a total decision procedure.
struct PredicateOracle {
  std::string label;
  Alphabet alphabet;
  std::function<bool(const Word&)> accepts;
};

std::string kind_name(const Device& d);

/// The size measure: states for DFA/NFA, states + stack symbols for
/// DPDA/PDA, nonterminals for CFG/CSG. Throws ValidationError on a malformed
/// device.
std::size_t size_of(const Device& d);

/// Every invariant violation, empty when the device is well formed.
std::vector<std::string> validate(const Device& d);

/// Input alphabet (terminals for grammars).
Alphabet alphabet_of(const Device& d);

inline constexpr std::size_t kDefaultCsgBudget = 2'000'000;

/// Decides word membership. Throws InputError for foreign symbols,
/// ValidationError for malformed devices and BudgetExceeded when a CSG search
/// passes `csg_budget` sentential forms.
bool member(const Device& d, const Word& w,
            std::size_t csg_budget = kDefaultCsgBudget);

/// Reusable membership predicate. Compiles the device once (chart-parser
/// tables, PDA->CFG conversion, CSG derivation cache), so repeated queries are
/// cheap. Not thread-safe; make one per thread.
class Recognizer {
 public:
  explicit Recognizer(const Device& d, std::size_t csg_budget = kDefaultCsgBudget);
  explicit Recognizer(PredicateOracle oracle);
  ~Recognizer();
  Recognizer(Recognizer&&) noexcept;
  Recognizer& operator=(Recognizer&&) noexcept;

  bool operator()(const Word& w) const;
  const Alphabet& alphabet() const;
  const std::string& label() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The DFA read as an NFA with singleton transitions and no epsilon moves.
Nfa nfa_view(const Dfa& d);
/// The DPDA read as a PDA.
Pda pda_view(const Dpda& d);

// Direct engines, exposed for tests and for the analysis module.
bool dfa_accepts(const Dfa& d, const Word& w);
bool nfa_accepts(const Nfa& n, const Word& w);
bool dpda_accepts(const Dpda& d, const Word& w);

/// Index of a symbol in an alphabet; throws InputError when absent.
int symbol_index(const Alphabet& alphabet, const Symbol& s);

}  // namespace succinct
