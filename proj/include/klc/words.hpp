#pragma once
/*
 * Words over the two-letter alphabet {A, B}, acting as operator monomials.
 * Two words are equivalent when they differ by trailing A's; the canonical
 * class representative is empty or ends in B.
 */

#include <string>
#include <string_view>
#include <vector>

namespace klc {

struct Word {
  std::string letters;  // each 'A' or 'B'; index 0 is the leftmost letter C_1

  Word() = default;
  explicit Word(std::string_view s);

  std::int64_t degree() const { return static_cast<std::int64_t>(letters.size()); }
  bool empty() const { return letters.empty(); }
  char at(std::int64_t i) const { return letters[static_cast<std::size_t>(i - 1)]; }  // 1-based

  // Strip trailing A's: the canonical representative of the class.
  Word canonical() const;
  bool is_canonical() const { return empty() || letters.back() == 'B'; }

  Word extended(std::int64_t extra_as) const;  // append A's

  friend bool operator==(const Word& x, const Word& y) {
    return x.letters == y.letters;
  }
  friend bool operator<(const Word& x, const Word& y) {
    return x.letters < y.letters;
  }
};

inline Word operator+(const Word& x, const Word& y) {
  return Word(x.letters + y.letters);
}

// All canonical words (empty or ending in B) of degree <= maxdeg.
std::vector<Word> canonical_words_upto(std::int64_t maxdeg);

}  // namespace klc
