#pragma once

// Deterministic Turing machines, bounded runs, the $-separated encoding of
// computations with alternately reversed configurations, decision procedures
// for the ACC / ODDACC / EVENACC languages, and grammars for their
// complements (and for ODDACC / EVENACC themselves).
//
// A configuration of width W is W cells; exactly one cell is the composite
// symbol "(q,s)" marking the head position and state. The successor of a
// configuration moves the head inside the same width: a left move at the left
// end stays in place, a right move off the right end has no successor, and a
// halted configuration is its own successor.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "succinct/devices.hpp"

namespace succinct {

enum class Move { kLeft, kRight };

struct TmAction {
  int to = 0;
  int write = 0;
  Move move = Move::kRight;
};

struct TmMachine {
  std::vector<std::string> states;
  Alphabet tape;  // includes the blank
  int blank = 0;
  Alphabet input;  // subset of tape without the blank
  /// delta[q][s]; required for every non-halting q
  std::vector<std::vector<std::optional<TmAction>>> delta;
  int start = 0, accept = 1, reject = 2;

  bool halting(int q) const { return q == accept || q == reject; }
  int num_states() const { return static_cast<int>(states.size()); }
  int num_tape() const { return static_cast<int>(tape.size()); }
};

std::vector<std::string> validate(const TmMachine& m);

/// TM JSON: {states, tapeAlphabet, blank, inputAlphabet,
/// transitions: [[q, s, p, t, "L"|"R"], ...], start, accept, reject}.
TmMachine tm_from_json(const nlohmann::json& j);
nlohmann::json tm_to_json(const TmMachine& m);
TmMachine load_tm(const std::string& path);

struct TmConfig {
  std::vector<int> tape;
  int head = 0;
  int state = 0;
  friend bool operator==(const TmConfig&, const TmConfig&) = default;
};

TmConfig initial_config(const TmMachine& m, const Word& x, std::size_t width);
/// nullopt when the head would leave the right end.
std::optional<TmConfig> succ(const TmMachine& m, const TmConfig& c);

struct TmBounds {
  std::size_t steps = 10'000;
  std::size_t space = 1'000;
};

struct TmTrace {
  Word input;
  std::vector<TmConfig> configs;  // even count, common width
  std::size_t steps = 0;          // machine steps before halting
  std::size_t width = 0;
  bool accepted = false;
};

enum class Divergence { kNone, kSteps, kSpace };

struct RunResult {
  std::optional<TmTrace> trace;
  Divergence diverged = Divergence::kNone;
};

/// Runs m on x. On halting returns the trace padded to the maximum head
/// excursion + 1 (at least |x|, at least 1) with a duplicated final
/// configuration when the configuration count is odd.
RunResult run_trace(const TmMachine& m, const Word& x, const TmBounds& bounds = {});

/// Encoding alphabet: tape symbols, then composites (q,s) in state-major
/// order, then "$".
Alphabet encoding_alphabet(const TmMachine& m);
std::string composite_name(const TmMachine& m, int q, int s);

/// Cell ids used by the encoding: 0..|tape|-1 plain, then composites.
struct CellCodec {
  explicit CellCodec(const TmMachine& m);
  int plain(int s) const { return s; }
  int composite(int q, int s) const { return tape + q * tape + s; }
  bool is_composite(int cell) const { return cell >= tape; }
  int state_of(int cell) const { return (cell - tape) / tape; }
  int symbol_of(int cell) const { return is_composite(cell) ? (cell - tape) % tape : cell; }
  int dollar() const { return tape + states * tape; }
  int size() const { return dollar() + 1; }
  int tape = 0, states = 0;
};

std::vector<int> config_cells(const CellCodec& codec, const TmConfig& c);
/// nullopt unless exactly one composite cell.
std::optional<TmConfig> config_from_cells(const CellCodec& codec, const std::vector<int>& cells);

/// $C1$C2^R$C3$C4^R$...$Cs^R$
Word encode_trace(const TmMachine& m, const TmTrace& t);
Word encode_configs(const TmMachine& m, const std::vector<TmConfig>& configs);
/// Inverse of encode_configs; nullopt on any structural defect.
std::optional<std::vector<TmConfig>> decode_configs(const TmMachine& m, const Word& w);

enum class AccVariant { kAcc, kOddAcc, kEvenAcc };

/// Which member of the family: variant plus scope (one input x, or the union
/// over all inputs).
struct AccSpec {
  AccVariant variant = AccVariant::kAcc;
  bool per_input = true;
  Word x;
};

std::string describe(const AccSpec& spec);

/// Decision procedures for the ACC family. Per-input scope pins the
/// configuration width to the width of the bounded run on x (max(|x|, 1)
/// when that run does not halt), which makes ACC(x) a single string for a
/// halting accepting run up to the next admissible length.
///
///   acc:     s even, all widths equal, C1 initial, C(i+1) = succ(Ci) for all
///            i, Cs accepting
///   oddacc:  s even, |Ci| = |C(i+1)| and C(i+1) = succ(Ci) for odd i,
///            C1 initial, Cs accepting
///   evenacc: s even, the same for even i, no condition on C1 (so the
///            per-input and all-inputs languages coincide), Cs accepting
///
/// "C1 initial" means C1 = init(x, W) per input, and otherwise C1 has the
/// shape (q0,s1) s2 .. sk _ .. _ for some input s1..sk (or (q0,_) _ .. _).
class AccOracle {
 public:
  AccOracle(const TmMachine& m, AccSpec spec, const TmBounds& bounds = {});

  bool accepts(const Word& w) const;
  /// True only if no extension of `prefix` is accepted. Sound, and exact for
  /// per-input acc.
  bool prefix_dead(const Word& prefix) const;

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t pinned_width() const { return width_; }
  const TmMachine& machine() const { return m_; }
  const AccSpec& spec() const { return spec_; }
  PredicateOracle as_predicate() const;

 private:
  bool check(const std::vector<std::vector<int>>& blocks) const;
  bool initial_shaped(const std::vector<int>& cells) const;
  bool initial_shape_prefix(const std::vector<int>& cells) const;
  std::optional<std::vector<int>> expected_block(const std::vector<std::vector<int>>& done,
                                                 std::size_t index) const;

  TmMachine m_;
  AccSpec spec_;
  CellCodec codec_;
  Alphabet alphabet_;
  std::map<Symbol, int> ids_;
  std::size_t width_ = 0;
  std::vector<int> init_cells_;
  // per-input acc: the infinite encoding, materialized lazily
  bool chain_accepts_ = false;
  mutable Word chain_word_;
  mutable std::optional<TmConfig> chain_last_;
  mutable std::size_t chain_blocks_ = 0;
  std::size_t chain_steps_ = 0;
};

/// The six variants named by the oracle operation.
enum class AccLanguage { kAcc, kAccAll, kOddAcc, kOddAccAll, kEvenAcc, kEvenAccAll };
bool acc_oracle(const TmMachine& m, AccLanguage language, const Word& x, const Word& w,
                const TmBounds& bounds = {});

enum class AccPolarity { kComplement, kPositivePair };

/// For kComplement: a grammar for the complement of the spec's language as a
/// union of defect grammars (regular defects, length defects between
/// adjacent blocks, step defects at odd or even block pairs). For
/// kPositivePair with oddacc / evenacc: a grammar for the language itself as
/// a concatenation of successor-pair blocks. Throws DomainError for acc with
/// kPositivePair.
Cfg complement_acc_cfg(const TmMachine& m, const AccSpec& spec, AccPolarity polarity,
                       const TmBounds& bounds = {});

}  // namespace succinct
