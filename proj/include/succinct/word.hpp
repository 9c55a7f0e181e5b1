#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace succinct {

/// A terminal or nonterminal name. Multi-character names such as "(q0,a)"
/// are atomic symbols.
using Symbol = std::string;
using Word = std::vector<Symbol>;
/// Ordered alphabet; the order fixes length-lexicographic enumeration.
using Alphabet = std::vector<Symbol>;

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A word contains a symbol outside the device alphabet.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A search gave up because it ran past its configured budget. This is not a
/// negative answer.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A builder was called outside its parameter domain (e.g. n < 2).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Splits a string into one-character symbols: "ab$" -> {"a","b","$"}.
Word chars(std::string_view s);

/// Renders a word. Single-character symbols are concatenated; otherwise the
/// symbols are space separated. The empty word renders as "" .
std::string to_string(const Word& w);

/// Parses a word written either as space-separated symbols or, when it
/// contains no spaces, as one symbol per character.
Word parse_word(std::string_view s);

Word repeat(const Symbol& s, std::size_t n);

/// Number of words of length <= max_length over k symbols.
std::uint64_t count_words_upto(std::size_t k, std::size_t max_length);

/// Visits every word of length <= max_length in length-lexicographic order
/// (shorter first, then by alphabet order). Stops early when `fn` returns
/// false; returns false iff stopped early.
bool for_each_word(const Alphabet& alphabet, std::size_t max_length,
                   const std::function<bool(const Word&)>& fn);

/// Length-lexicographic comparison under the given alphabet order.
bool length_lex_less(const Alphabet& alphabet, const Word& a, const Word& b);

}  // namespace succinct
