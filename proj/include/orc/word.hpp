#pragma once

// Exact arithmetic on freely and cyclically reduced words over the basis of a
// free group: free/cyclic reduction, the shortlex order, occurrence counts and
// power-root decomposition.  Everything here is an immutable value; all
// operations are pure functions.

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstdlib>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace orc {

// A letter is a nonzero signed generator index: +g is the g-th basis element,
// -g its inverse.  The integer order -r < ... < -1 < 1 < ... < r coincides
// with the base order a_r^-1 < ... < a_1^-1 < a_1 < ... < a_r, so letters
// compare directly as integers in every shortlex comparison.
using Letter = std::int8_t;

inline constexpr int kMaxRank = 8;

// Sentinel for infinite values (imprimitivity rank of primitives, girth of a
// forest).
inline constexpr int kInfinity = std::numeric_limits<int>::max();

// Inline capacity sized so that desk-scale words (and images of words under a
// single Whitehead automorphism, at most 3x longer) stay off the heap.
using Letters = boost::container::small_vector<Letter, 56>;

constexpr Letter inverse(Letter a) noexcept { return static_cast<Letter>(-a); }
constexpr int generator_of(Letter a) noexcept { return a < 0 ? -a : a; }

// Number of basis elements of the ambient free group.
class Rank {
 public:
  explicit Rank(int r) : r_(r) {
    if (r < 1 || r > kMaxRank)
      throw std::invalid_argument("rank must be in [1," +
                                  std::to_string(kMaxRank) + "], got " +
                                  std::to_string(r));
  }
  constexpr operator int() const noexcept { return r_; }

 private:
  int r_;
};

constexpr bool letter_valid(Letter a, int rank) noexcept {
  int g = generator_of(a);
  return g >= 1 && g <= rank;
}

// Position of a letter in the base order, 0 .. 2r-1.
constexpr int letter_to_digit(Letter a, int rank) noexcept {
  return a < 0 ? a + rank : a + rank - 1;
}
constexpr Letter digit_to_letter(int d, int rank) noexcept {
  return static_cast<Letter>(d < rank ? d - rank : d - rank + 1);
}

// Rank-independent dense index used for letter-indexed tables: a=0, A=1, b=2,
// B=3, ...
constexpr int letter_index(Letter a) noexcept {
  return (generator_of(a) - 1) * 2 + (a < 0 ? 1 : 0);
}
constexpr Letter index_letter(int idx) noexcept {
  int g = idx / 2 + 1;
  return static_cast<Letter>(idx % 2 ? -g : g);
}

inline void free_reduce_into(std::span<const Letter> raw, Letters& out) {
  out.clear();
  for (Letter a : raw) {
    if (!out.empty() && out.back() == inverse(a))
      out.pop_back();
    else
      out.push_back(a);
  }
}

inline bool is_freely_reduced(std::span<const Letter> w) noexcept {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse(w[i - 1])) return false;
  return true;
}

inline bool is_cyclically_reduced(std::span<const Letter> w) noexcept {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != inverse(w.back());
}

// Shortlex: shorter first, equal lengths letterwise by the base order.
inline std::strong_ordering shortlex(std::span<const Letter> u,
                                     std::span<const Letter> v) noexcept {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) return u[i] <=> v[i];
  return std::strong_ordering::equal;
}

// Index of the shortlex-least rotation of a cyclically reduced word.
inline std::size_t least_rotation_index(std::span<const Letter> w) noexcept {
  const std::size_t n = w.size();
  if (n < 2) return 0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter a = w[(i + k) % n], b = w[(best + k) % n];
      if (a != b) {
        if (a < b) best = i;
        break;
      }
    }
  }
  return best;
}

// A freely reduced word.
class Word {
 public:
  Word() = default;

  // Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw) {
    Word w;
    free_reduce_into(raw, w.letters_);
    return w;
  }

  // Caller guarantees the sequence is already freely reduced.
  static Word from_reduced(Letters letters) {
    assert(is_freely_reduced(letters));
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  const Letters& letters() const noexcept { return letters_; }
  std::span<const Letter> span() const noexcept {
    return {letters_.data(), letters_.size()};
  }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }

  Word inverted() const {
    Letters inv(letters_.rbegin(), letters_.rend());
    for (Letter& a : inv) a = inverse(a);
    return from_reduced(std::move(inv));
  }

  friend Word operator*(const Word& u, const Word& v) {
    Letters cat(u.letters_);
    cat.insert(cat.end(), v.letters_.begin(), v.letters_.end());
    return reduce(cat);
  }

  Word pow(int k) const {
    Word r;
    Word base = k < 0 ? inverted() : *this;
    for (int i = 0; i < std::abs(k); ++i) r = r * base;
    return r;
  }

  bool operator==(const Word&) const = default;
  std::strong_ordering operator<=>(const Word& o) const noexcept {
    return shortlex(span(), o.span());
  }

 private:
  Letters letters_;
};

// A cyclically reduced word held in its canonical (shortlex-least) rotation,
// standing for a conjugacy class / cyclic subgroup generator.
class CyclicWord {
 public:
  CyclicWord() = default;

  // Cyclic reduction plus canonical rotation of an arbitrary word.
  static CyclicWord of(const Word& w);

  // Caller guarantees canonical form.
  static CyclicWord from_canonical(Letters letters) {
    assert(is_cyclically_reduced(letters));
    assert(least_rotation_index(letters) == 0);
    CyclicWord w;
    w.letters_ = std::move(letters);
    return w;
  }

  const Letters& letters() const noexcept { return letters_; }
  std::span<const Letter> span() const noexcept {
    return {letters_.data(), letters_.size()};
  }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  Letter at_mod(std::size_t i) const noexcept {
    return letters_[i % letters_.size()];
  }

  Word to_word() const { return Word::from_reduced(letters_); }

  CyclicWord inverted() const { return of(to_word().inverted()); }

  // The rotation starting at position i, as a plain word.
  Word rotation(std::size_t i) const {
    Letters rot;
    rot.reserve(letters_.size());
    for (std::size_t k = 0; k < letters_.size(); ++k)
      rot.push_back(at_mod(i + k));
    return Word::from_reduced(std::move(rot));
  }

  bool operator==(const CyclicWord&) const = default;
  std::strong_ordering operator<=>(const CyclicWord& o) const noexcept {
    return shortlex(span(), o.span());
  }

 private:
  Letters letters_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // input = conjugator * core * conjugator^-1
};

inline CyclicReduction cyclic_reduce(const Word& w) {
  std::span<const Letter> s = w.span();
  std::size_t lo = 0, hi = s.size();
  while (hi - lo >= 2 && s[lo] == inverse(s[hi - 1])) {
    ++lo;
    --hi;
  }
  Letters core(s.begin() + lo, s.begin() + hi);
  std::size_t rot = least_rotation_index(core);
  Letters conj(s.begin(), s.begin() + lo);
  // Rotating the core by rot conjugates by its length-rot prefix; no
  // cancellation is possible at either junction.
  conj.insert(conj.end(), core.begin(), core.begin() + rot);
  std::rotate(core.begin(), core.begin() + rot, core.end());
  return {CyclicWord::from_canonical(std::move(core)),
          Word::from_reduced(std::move(conj))};
}

inline CyclicWord CyclicWord::of(const Word& w) {
  return cyclic_reduce(w).core;
}

// Spec'd operation name; validates letters against the rank.
inline Word free_reduce(std::span<const Letter> raw, Rank rank) {
  for (Letter a : raw)
    if (!letter_valid(a, rank))
      throw std::invalid_argument("letter outside rank " +
                                  std::to_string(int(rank)));
  return Word::reduce(raw);
}

// Total occurrences of the generator and its inverse.
inline int occurrence_count(std::span<const Letter> w, int generator) noexcept {
  int n = 0;
  for (Letter a : w) n += generator_of(a) == generator;
  return n;
}
inline int occurrence_count(const Word& w, int generator) noexcept {
  return occurrence_count(w.span(), generator);
}

// Number of distinct generators occurring.
inline int support_size(std::span<const Letter> w) noexcept {
  unsigned mask = 0;
  for (Letter a : w) mask |= 1u << generator_of(a);
  return std::popcount(mask);
}

struct PowerDecomposition {
  Word root;     // not itself a proper power
  int exponent;  // maximal: input = root^exponent
};

// Maximal root of a nonempty word; handles non-cyclically-reduced input by
// conjugating the root of the cyclic core.
inline PowerDecomposition power_decompose(const Word& w) {
  if (w.empty())
    throw std::invalid_argument("power_decompose: trivial word has no root");
  CyclicReduction cr = cyclic_reduce(w);
  std::span<const Letter> v = cr.core.span();
  const std::size_t n = v.size();
  std::size_t period = n;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = v[i] == v[i - d];
    if (ok) {
      period = d;
      break;
    }
  }
  if (n == 0) throw std::invalid_argument("power_decompose: trivial word");
  Letters root(cr.conjugator.letters());
  root.insert(root.end(), v.begin(), v.begin() + period);
  const Letters& c = cr.conjugator.letters();
  for (auto it = c.rbegin(); it != c.rend(); ++it) root.push_back(inverse(*it));
  // Periodicity of the core makes every junction reduced.
  return {Word::from_reduced(std::move(root)), static_cast<int>(n / period)};
}

inline bool is_proper_power(const Word& w) {
  return !w.empty() && power_decompose(w).exponent >= 2;
}

// --- ASCII encoding ---------------------------------------------------------
// Generators 1..4 render as a,b,c,d and inverses as A,B,C,D; higher ranks fall
// back to x5,X5,...  One word per line, empty line = trivial word.

inline std::string render_letter(Letter a) {
  int g = generator_of(a);
  if (g <= 4) {
    char c = static_cast<char>((a > 0 ? 'a' : 'A') + g - 1);
    return std::string(1, c);
  }
  return (a > 0 ? "x" : "X") + std::to_string(g);
}

inline std::string to_string(std::span<const Letter> w) {
  std::string s;
  s.reserve(w.size());
  for (Letter a : w) s += render_letter(a);
  return s;
}
inline std::string to_string(const Word& w) { return to_string(w.span()); }
inline std::string to_string(const CyclicWord& w) {
  return to_string(w.span());
}

// Parses the ASCII encoding into a raw letter sequence (no reduction).
inline Letters parse_letters(std::string_view s, Rank rank) {
  Letters out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    Letter a;
    if (c >= 'a' && c <= 'd') {
      a = static_cast<Letter>(c - 'a' + 1);
      ++i;
    } else if (c >= 'A' && c <= 'D') {
      a = static_cast<Letter>(-(c - 'A' + 1));
      ++i;
    } else if (c == 'x' || c == 'X') {
      if (i + 1 >= s.size() || s[i + 1] < '1' || s[i + 1] > '8')
        throw std::invalid_argument("bad generator index after '" +
                                    std::string(1, c) + "'");
      int g = s[i + 1] - '0';
      a = static_cast<Letter>(c == 'x' ? g : -g);
      i += 2;
    } else {
      throw std::invalid_argument("unexpected character '" +
                                  std::string(1, c) + "' in word");
    }
    if (!letter_valid(a, rank))
      throw std::invalid_argument("generator index exceeds rank in '" +
                                  std::string(s) + "'");
    out.push_back(a);
  }
  return out;
}

// Parses and freely reduces.
inline Word parse_word(std::string_view s, Rank rank) {
  return Word::reduce(parse_letters(s, rank));
}

inline std::size_t hash_letters(std::span<const Letter> w) noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter a : w) {
    h ^= static_cast<unsigned char>(a);
    h *= 1099511628211ull;
  }
  return h;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return hash_letters(w.span());
  }
};
struct CyclicWordHash {
  std::size_t operator()(const CyclicWord& w) const noexcept {
    return hash_letters(w.span());
  }
};

}  // namespace orc
