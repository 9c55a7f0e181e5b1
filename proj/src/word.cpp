#include "succinct/word.hpp"

#include <algorithm>
#include <sstream>

namespace succinct {

Word chars(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) w.emplace_back(1, c);
  return w;
}

std::string to_string(const Word& w) {
  bool single = std::all_of(w.begin(), w.end(),
                            [](const Symbol& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += ' ';
    out += w[i];
  }
  return out;
}

Word parse_word(std::string_view s) {
  if (s.find(' ') == std::string_view::npos) return chars(s);
  Word w;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) w.push_back(tok);
  return w;
}

Word repeat(const Symbol& s, std::size_t n) { return Word(n, s); }

std::uint64_t count_words_upto(std::size_t k, std::size_t max_length) {
  std::uint64_t total = 0, layer = 1;
  for (std::size_t len = 0; len <= max_length; ++len) {
    total += layer;
    layer *= k;
  }
  return total;
}

bool for_each_word(const Alphabet& alphabet, std::size_t max_length,
                   const std::function<bool(const Word&)>& fn) {
  const std::size_t k = alphabet.size();
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<std::size_t> digits(len, 0);
    Word w(len, k ? alphabet[0] : Symbol{});
    if (len > 0 && k == 0) break;
    while (true) {
      if (!fn(w)) return false;
      // odometer increment, rightmost digit fastest
      std::size_t pos = len;
      while (pos > 0) {
        --pos;
        if (++digits[pos] < k) {
          w[pos] = alphabet[digits[pos]];
          break;
        }
        digits[pos] = 0;
        w[pos] = alphabet[0];
        if (pos == 0) {
          pos = len + 1;  // overflow marker
          break;
        }
      }
      if (len == 0 || pos == len + 1) break;
    }
  }
  return true;
}

bool length_lex_less(const Alphabet& alphabet, const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto rank = [&](const Symbol& s) {
    return std::find(alphabet.begin(), alphabet.end(), s) - alphabet.begin();
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ra = rank(a[i]), rb = rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

}  // namespace succinct
