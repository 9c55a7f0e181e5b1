#pragma once

// Decidable building blocks: bounded equivalence, CFG emptiness and first
// members, canonical size enumeration, minimal-device search and the
// finite-horizon bounding-function estimator.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "succinct/devices.hpp"

namespace succinct {

/// A language given either by a device or by a decision procedure.
using Subject = std::variant<Device, PredicateOracle>;

Alphabet subject_alphabet(const Subject& s);
std::string subject_label(const Subject& s);

/// All words of length <= max_length over `alphabet`. An empty alphabet means
/// "the union of the alphabets involved".
struct Horizon {
  std::size_t max_length = 8;
  Alphabet alphabet;
};

inline constexpr std::uint64_t kDefaultWordBudget = 50'000'000;

struct EquivResult {
  bool equal = true;
  std::optional<Word> counterexample;  // first disagreement in length-lex order
  bool first_accepts = false;          // verdict of the first subject on it
  std::uint64_t words_checked = 0;
  std::size_t horizon = 0;
  Alphabet alphabet;
};

/// Compares two languages on every word of the horizon in length-lex order.
/// Words with symbols outside a subject's alphabet are outside its language.
/// Throws BudgetExceeded when the horizon holds more than `budget` words.
EquivResult bounded_equiv(const Subject& a, const Subject& b, const Horizon& h,
                          std::uint64_t budget = kDefaultWordBudget);

/// True when L(g) is empty (the start symbol does not generate).
bool cfg_emptiness(const Cfg& g);

/// The length-lex smallest member (terminal order as in g.terminals), or
/// nullopt for the empty language.
std::optional<Word> cfg_shortest_member(const Cfg& g);

enum class DeviceClass { kDfa, kNfa, kCnfCfg };
std::string class_name(DeviceClass c);

/// DFA: accessible total DFAs with states numbered in breadth-first order,
/// then every accepting set. NFA: no epsilon moves, start state 0, ordered by
/// the number of transitions plus accepting states, one representative per
/// renaming of the non-start states. CNF-CFG: rules A -> BC and A -> a only,
/// every nonterminal with at least one rule, one representative per renaming
/// of the non-start nonterminals.
struct SizeEnumeration {
  DeviceClass cls = DeviceClass::kDfa;
  Alphabet alphabet;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 5'000'000;

/// Visits the devices of exactly `size` in canonical order until `visit`
/// returns false. Returns the number of devices visited.
std::uint64_t for_each_device(const SizeEnumeration& e, std::size_t size,
                              const std::function<bool(const Device&)>& visit);

/// The first `count` devices in ascending size. Throws BudgetExceeded when
/// more than `budget` candidates are generated on the way.
std::vector<Device> enumerate_devices(const SizeEnumeration& e, std::size_t count,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

struct MinSearchResult {
  std::size_t size = 0;
  Device witness;
  /// True for a language-equivalence minimum; false when agreement was only
  /// checked up to `horizon`.
  bool exact = false;
  std::string method;
  std::uint64_t candidates = 0;
  std::size_t horizon = 0;
};

/// Smallest device of `cls` agreeing with the target. DFA class with a
/// regular target: minimization. NFA class with a regular target: ascending
/// enumeration with an exact product check. Every other combination:
/// ascending enumeration checked on the horizon. Throws BudgetExceeded when
/// more than `budget` candidates are examined or `max_size` is passed.
MinSearchResult min_device_search(const Subject& target, DeviceClass cls, const Horizon& h,
                                  std::uint64_t budget = kDefaultEnumerationBudget,
                                  std::size_t max_size = 12);

/// Device pairs (M, M'): for every M'-device of size <= n, the minimal
/// agreeing M-device.
enum class DevicePair { kDfaOverNfa, kNfaOverDfa, kCnfOverDfa };
std::string pair_name(DevicePair p);

struct EstimateRow {
  std::uint64_t index = 0;  // position in the enumeration
  std::string device;       // compact description
  std::size_t device_size = 0;
  std::optional<std::size_t> min_size;
  bool exact = false;
  std::string failure;  // set when the per-device search gave up
};

struct BoundingEstimate {
  DevicePair pair = DevicePair::kDfaOverNfa;
  std::size_t n = 0;
  Horizon horizon;
  std::size_t max = 0;
  std::optional<EstimateRow> max_witness;
  std::vector<EstimateRow> rows;  // one per distinct language, capped
  std::uint64_t devices = 0;
  std::uint64_t distinct_languages = 0;
  std::uint64_t failures = 0;
  bool truncated = false;  // enumeration budget hit: MAX is a lower bound
  bool all_exact = true;
};

struct EstimateOptions {
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  std::uint64_t search_budget = 200'000;  // per device
  std::size_t max_rows = 256;
};

BoundingEstimate bounding_estimate(DevicePair pair, std::size_t n, const Horizon& h,
                                   const EstimateOptions& options = {});

}  // namespace succinct
