#pragma once

// Text and JSON formats for devices.
//
// Grammar text: one rule per line, `LHS -> RHS1 | RHS2`, symbols separated by
// whitespace, `_eps_` for the empty string, `#` starts a comment. The first
// rule's LHS is the start symbol. Optional directives (always written on
// output so files round-trip exactly):
//   %kind cfg|csg
//   %start S
//   %nonterminals S A B
//   %terminals a b
// Without %nonterminals a CFG's nonterminals are its LHS symbols. A CSG
// (multi-symbol left-hand sides) needs the directive.
//
// Automata JSON: {kind, states, alphabet, stackAlphabet, transitions, start,
// initialStackSymbol, accepting}; transitions are records
// {from, symbol, to} for DFA/NFA (symbol "_eps_" for an NFA epsilon move) and
// {from, input, top, to, push} for PDA/DPDA (input "_eps_" or null).

#include <string>

#include <json.hpp>

#include "succinct/devices.hpp"

namespace succinct {

inline constexpr const char* kEpsilonToken = "_eps_";

Cfg parse_cfg(const std::string& text);
Csg parse_csg(const std::string& text);
/// CFG or CSG depending on %kind / the shape of the rules.
Device parse_grammar(const std::string& text);

std::string format_grammar(const Cfg& g);
std::string format_grammar(const Csg& g);

nlohmann::json automaton_to_json(const Device& d);
/// Throws ParseError on malformed input.
Device automaton_from_json(const nlohmann::json& j);

/// Device as JSON for reports: automata natively, grammars as {kind, text}.
nlohmann::json device_to_json(const Device& d);

/// Loads a device from a file: `.json` files hold automata, anything else is
/// grammar text.
Device load_device(const std::string& path);
void save_device(const Device& d, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace succinct
