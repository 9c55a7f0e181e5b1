#pragma once

// Desk-scale diagonal language A_n over a one-letter alphabet: inputs a^s are
// decided by looking back at smaller inputs, finding the least requirement
// R_i (A_n differs from L(P_i)) not yet acted on, and answering the opposite
// of P_i on a^s. P_1, P_2, ... is the canonical CNF-CFG enumeration.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "succinct/analysis.hpp"

namespace succinct {

/// g(n, s) with a declared point from which g(n, .) no longer changes.
struct LimitApproximation {
  std::function<std::size_t(std::size_t n, std::size_t s)> g;
  std::function<std::size_t(std::size_t n)> stable_from;
  std::string label;

  std::size_t limit(std::size_t n) const { return g(n, stable_from(n)); }
};

LimitApproximation constant_schedule(std::size_t value);
/// Piecewise constant in s: each (from, value) holds until the next `from`.
/// The first `from` must be 0 and the list strictly increasing.
LimitApproximation step_schedule(std::vector<std::pair<std::size_t, std::size_t>> steps);

enum class Lookback { kFull, kLgStar };

struct DiagConfig {
  std::size_t n = 1;
  SizeEnumeration enumeration{DeviceClass::kCnfCfg, {"a"}};
  LimitApproximation g = constant_schedule(1);
  Lookback lookback = Lookback::kFull;
  bool space_cap = false;
  std::size_t max_s = 64;
};

/// Iterated binary logarithm: applications of log2 until the value is <= 1.
std::size_t lg_star(std::size_t s);

/// Largest k < s inspected while deciding a^s, or nullopt for s = 0.
std::optional<std::size_t> lookback_limit(Lookback l, std::size_t s);

/// Throws DomainError when the enumeration is not CNF-CFG over one symbol.
void validate(const DiagConfig& cfg);

/// Is a^s in A_n? Throws DomainError when s > cfg.max_s.
bool diag_member(const DiagConfig& cfg, std::size_t s);

/// Same answer without the memo table: every looked-back input is decided
/// again from scratch. Exponential under full lookback.
bool diag_member_unmemoized(const DiagConfig& cfg, std::size_t s);

/// What the decision procedure did on one input.
struct DiagStep {
  enum class Outcome { kAllSatisfied, kCapReject, kActed };
  std::size_t s = 0;
  std::size_t t = 0;
  std::vector<std::size_t> seen;  // requirements <= t acted on in the window
  Outcome outcome = Outcome::kAllSatisfied;
  std::size_t acted_on = 0;  // requirement index when kActed
  bool member = false;
};

struct RequirementStatus {
  std::size_t index = 0;
  std::string device;                      // P_i as grammar text
  std::optional<std::size_t> acted_at;     // input where step 5 targeted R_i
  std::optional<std::size_t> witness;      // least s with A_n(a^s) != P_i(a^s)
  bool satisfied = false;
  std::string reason;  // "max_s" or "space_cap" when unsatisfied
};

struct DiagProfile {
  std::size_t n = 0;
  std::size_t max_s = 0;
  std::size_t limit = 0;
  std::vector<bool> bits;  // A_n on a^0 .. a^max_s
  std::vector<DiagStep> steps;
  std::vector<RequirementStatus> requirements;  // R_1 .. R_limit
  std::vector<std::size_t> cap_rejections;
};

DiagProfile diag_profile(const DiagConfig& cfg);

/// {"n", "max_s", "lookback": "full"|"lg*", "space_cap",
///  "schedule": [[from, value], ...]} or "constant": value.
/// Throws ParseError on malformed input.
DiagConfig diag_config_from_json(const nlohmann::json& j);
DiagConfig load_diag_config(const std::string& path);
nlohmann::json diag_profile_to_json(const DiagProfile& p);

}  // namespace succinct
