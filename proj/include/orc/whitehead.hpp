#pragma once

// Whitehead automorphisms of both kinds, greedy Whitehead minimization,
// primitivity testing, minimal-free-factor rank, and the (reduced) Whitehead
// graph shared with the small-cancellation checks.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "word.hpp"

namespace orc {

// First kind: x_i -> x_{perm[i]}^{sign[i]}.  Length-preserving on all words.
struct WhiteheadFirstKind {
  int rank = 1;
  std::array<std::int8_t, kMaxRank + 1> perm{};  // indexed by generator
  std::array<std::int8_t, kMaxRank + 1> sign{};  // +1 or -1

  static WhiteheadFirstKind identity(Rank r) {
    WhiteheadFirstKind a;
    a.rank = r;
    for (int g = 1; g <= r; ++g) {
      a.perm[g] = static_cast<std::int8_t>(g);
      a.sign[g] = 1;
    }
    return a;
  }

  Letter apply(Letter x) const noexcept {
    int g = generator_of(x);
    Letter img = static_cast<Letter>(perm[g] * sign[g]);
    return x > 0 ? img : inverse(img);
  }

  // Letterwise image; injectivity on letters keeps it reduced.
  Word apply(const Word& w) const {
    Letters out;
    out.reserve(w.size());
    for (Letter a : w.span()) out.push_back(apply(a));
    return Word::from_reduced(std::move(out));
  }

  std::string to_string() const;
  bool operator==(const WhiteheadFirstKind&) const = default;
};

// Second kind: given a multiplier x and Z not containing x or x^-1, fixes x
// and maps y to xy / yx^-1 / xyx^-1 according to which of y, y^-1 lie in Z.
struct WhiteheadSecondKind {
  int rank = 1;
  Letter multiplier = 1;
  std::uint16_t zset = 0;  // bit letter_index(y) set iff y in Z

  bool z_contains(Letter y) const noexcept {
    return (zset >> letter_index(y)) & 1u;
  }
  bool is_identity() const noexcept { return zset == 0; }

  // The inverse automorphism has the inverse multiplier and the same set.
  WhiteheadSecondKind inverted() const noexcept {
    return {rank, inverse(multiplier), zset};
  }

  void apply_into(std::span<const Letter> w, Letters& out) const {
    out.clear();
    auto push = [&out](Letter a) {
      if (!out.empty() && out.back() == inverse(a))
        out.pop_back();
      else
        out.push_back(a);
    };
    const int gx = generator_of(multiplier);
    for (Letter y : w) {
      if (generator_of(y) == gx) {
        push(y);
        continue;
      }
      if (z_contains(y)) push(multiplier);
      push(y);
      if (z_contains(inverse(y))) push(inverse(multiplier));
    }
  }

  Word apply(const Word& w) const {
    Letters out;
    apply_into(w.span(), out);
    return Word::from_reduced(std::move(out));
  }

  std::string to_string() const;
  bool operator==(const WhiteheadSecondKind&) const = default;
};

using WhiteheadAutomorphism =
    std::variant<WhiteheadFirstKind, WhiteheadSecondKind>;

inline Word apply(const WhiteheadAutomorphism& aut, const Word& w) {
  return std::visit([&](const auto& a) { return a.apply(w); }, aut);
}

// Applies an automorphism of either kind after checking the rank context.
inline Word apply_checked(const WhiteheadAutomorphism& aut, const Word& w,
                          Rank rank) {
  int ar = std::visit([](const auto& a) { return a.rank; }, aut);
  if (ar != int(rank))
    throw std::invalid_argument("automorphism rank mismatch");
  for (Letter a : w.span())
    if (!letter_valid(a, rank))
      throw std::invalid_argument("word letter outside rank");
  return apply(aut, w);
}

// All 2r * 2^(2r-2) second-kind automorphisms: multipliers in base order,
// subsets by binary counter over the allowed letters in base order.
inline std::vector<WhiteheadSecondKind> enumerate_second_kind(Rank rank) {
  std::vector<WhiteheadSecondKind> out;
  const int r = rank;
  out.reserve(static_cast<std::size_t>(2 * r) << (2 * r - 2));
  for (int d = 0; d < 2 * r; ++d) {
    Letter x = digit_to_letter(d, r);
    std::vector<int> allowed;  // letter_index values, base order
    for (int e = 0; e < 2 * r; ++e) {
      Letter y = digit_to_letter(e, r);
      if (generator_of(y) != generator_of(x)) allowed.push_back(letter_index(y));
    }
    for (std::uint32_t c = 0; c < (1u << allowed.size()); ++c) {
      std::uint16_t z = 0;
      for (std::size_t j = 0; j < allowed.size(); ++j)
        if ((c >> j) & 1u) z |= static_cast<std::uint16_t>(1u << allowed[j]);
      out.push_back({r, x, z});
    }
  }
  return out;
}

// All r! * 2^r first-kind automorphisms (intended for small ranks / tests).
inline std::vector<WhiteheadFirstKind> enumerate_first_kind(Rank rank) {
  const int r = rank;
  std::vector<int> p(r);
  std::iota(p.begin(), p.end(), 1);
  std::vector<WhiteheadFirstKind> out;
  do {
    for (std::uint32_t s = 0; s < (1u << r); ++s) {
      WhiteheadFirstKind a;
      a.rank = r;
      for (int g = 1; g <= r; ++g) {
        a.perm[g] = static_cast<std::int8_t>(p[g - 1]);
        a.sign[g] = ((s >> (g - 1)) & 1u) ? -1 : 1;
      }
      out.push_back(a);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// --- cyclic length change under a second-kind automorphism ------------------
//
// For a cyclically reduced word, the image's cyclic length is determined by
// the multiset of cyclic adjacencies: at the junction u->v the automorphism
// (x, Z) inserts x^-1 after u iff u^-1 in Z and x before v iff v in Z.  Equal
// flags cancel or insert nothing; a lone x^-1 eats an original x (v == x) and
// a lone x eats an original x^-1 (u == x^-1).  No further cancellation can
// occur, so the change is a sum over adjacency counts.

struct AdjacencyCounts {
  int rank = 1;
  struct Entry {
    Letter from, to;
    std::uint8_t count;
  };
  boost::container::small_vector<Entry, 32> entries;
};

inline AdjacencyCounts adjacency_counts(const CyclicWord& w, Rank rank) {
  AdjacencyCounts ac;
  ac.rank = rank;
  const std::size_t n = w.size();
  std::array<std::uint8_t, 4 * kMaxRank * kMaxRank> table{};
  for (std::size_t i = 0; i < n; ++i) {
    Letter u = w[i], v = w.at_mod(i + 1);
    ++table[letter_index(u) * 2 * kMaxRank + letter_index(v)];
  }
  for (int iu = 0; iu < 2 * int(rank); ++iu)
    for (int iv = 0; iv < 2 * int(rank); ++iv)
      if (auto c = table[iu * 2 * kMaxRank + iv])
        ac.entries.push_back({index_letter(iu), index_letter(iv), c});
  return ac;
}

inline int cyclic_length_change(const AdjacencyCounts& ac,
                                const WhiteheadSecondKind& aut) noexcept {
  int delta = 0;
  const Letter x = aut.multiplier;
  for (const auto& e : ac.entries) {
    bool after = aut.z_contains(inverse(e.from));  // x^-1 inserted after u
    bool before = aut.z_contains(e.to);            // x inserted before v
    if (after == before) continue;
    int d;
    if (after)
      d = e.to == x ? -1 : 1;
    else
      d = e.from == inverse(x) ? -1 : 1;
    delta += d * int(e.count);
  }
  return delta;
}

// True if no single second-kind automorphism shortens the cyclic word.
// (First-kind automorphisms never change length.)
inline bool is_whitehead_minimal(const CyclicWord& w, Rank rank) {
  if (w.size() <= 1) return true;
  const AdjacencyCounts ac = adjacency_counts(w, rank);
  const int r = rank;
  for (int d = 0; d < 2 * r; ++d) {
    Letter x = digit_to_letter(d, r);
    std::array<int, 16> allowed;
    int na = 0;
    for (int e = 0; e < 2 * r; ++e) {
      Letter y = digit_to_letter(e, r);
      if (generator_of(y) != generator_of(x)) allowed[na++] = letter_index(y);
    }
    WhiteheadSecondKind aut{r, x, 0};
    for (std::uint32_t c = 0; c < (1u << na); ++c) {
      std::uint16_t z = 0;
      for (int j = 0; j < na; ++j)
        if ((c >> j) & 1u) z |= static_cast<std::uint16_t>(1u << allowed[j]);
      aut.zset = z;
      if (cyclic_length_change(ac, aut) < 0) return false;
    }
  }
  return true;
}

// Certificate of a minimization path, second-kind steps only.
struct AutomorphismChain {
  std::vector<WhiteheadAutomorphism> steps;
  std::string to_string() const;
};

struct MinimizationResult {
  CyclicWord minimal;
  AutomorphismChain chain;
};

// Greedy descent: repeatedly apply the first strictly shortening second-kind
// automorphism in the fixed enumeration order; Whitehead's first fact
// guarantees this reaches the orbit minimum.
inline MinimizationResult whitehead_minimize(const Word& w, Rank rank) {
  MinimizationResult res;
  res.minimal = CyclicWord::of(w);
  Letters buf;
  while (res.minimal.size() > 1) {
    const AdjacencyCounts ac = adjacency_counts(res.minimal, rank);
    const int r = rank;
    bool improved = false;
    for (int d = 0; d < 2 * r && !improved; ++d) {
      Letter x = digit_to_letter(d, r);
      std::array<int, 16> allowed;
      int na = 0;
      for (int e = 0; e < 2 * r; ++e) {
        Letter y = digit_to_letter(e, r);
        if (generator_of(y) != generator_of(x)) allowed[na++] = letter_index(y);
      }
      WhiteheadSecondKind aut{r, x, 0};
      for (std::uint32_t c = 0; c < (1u << na); ++c) {
        std::uint16_t z = 0;
        for (int j = 0; j < na; ++j)
          if ((c >> j) & 1u) z |= static_cast<std::uint16_t>(1u << allowed[j]);
        aut.zset = z;
        if (cyclic_length_change(ac, aut) < 0) {
          aut.apply_into(res.minimal.span(), buf);
          res.minimal = CyclicWord::of(Word::from_reduced(Letters(buf)));
          res.chain.steps.emplace_back(aut);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
  return res;
}

// A word is primitive iff it Whitehead-reduces to cyclic length 1.
inline bool is_primitive(const Word& w, Rank rank) {
  if (w.empty()) return false;
  return whitehead_minimize(w, rank).minimal.size() == 1;
}

// Number of distinct generators in the Whitehead-minimal form; this equals
// the rank of the smallest free factor containing the word.
inline int minimal_free_factor_rank(const Word& w, Rank rank) {
  if (w.empty()) return 0;
  return support_size(whitehead_minimize(w, rank).minimal.span());
}

// --- Whitehead graph ---------------------------------------------------------
// Vertices are the 2r signed letters; each cyclic adjacency u.v contributes an
// edge {u^-1, v}.  Under this convention the commutator's graph is a 4-cycle.

struct WhiteheadGraph {
  int rank = 1;
  bool reduced = false;
  // Symmetric multiplicity table indexed by letter_index.
  std::array<std::uint16_t, 4 * kMaxRank * kMaxRank> mult{};

  std::uint16_t multiplicity(Letter a, Letter b) const noexcept {
    return mult[letter_index(a) * 2 * kMaxRank + letter_index(b)];
  }
  bool has_edge(Letter a, Letter b) const noexcept {
    return multiplicity(a, b) > 0;
  }
  int total_edge_multiplicity() const noexcept {
    int t = 0;
    for (int i = 0; i < 2 * rank; ++i)
      for (int j = i; j < 2 * rank; ++j)
        t += mult[i * 2 * kMaxRank + j];
    return t;
  }

  // Girth of the underlying simple graph; kInfinity for a forest.
  int girth() const {
    const int n = 2 * rank;
    int best = kInfinity;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        if (!mult[i * 2 * kMaxRank + j]) continue;
        if (i == j) return 1;  // loop (cannot arise from a reduced word)
        // shortest i-j path avoiding this edge
        std::array<int, 2 * kMaxRank> dist;
        dist.fill(-1);
        dist[i] = 0;
        std::array<int, 2 * kMaxRank> queue;
        int qh = 0, qt = 0;
        queue[qt++] = i;
        while (qh < qt) {
          int u = queue[qh++];
          for (int v = 0; v < n; ++v) {
            if (!mult[u * 2 * kMaxRank + v] || dist[v] >= 0) continue;
            if (u == i && v == j) continue;
            if (u == j && v == i) continue;
            dist[v] = dist[u] + 1;
            queue[qt++] = v;
          }
        }
        if (dist[j] >= 0) best = std::min(best, dist[j] + 1);
      }
    }
    return best;
  }
};

inline WhiteheadGraph whitehead_graph(const CyclicWord& w, Rank rank,
                                      bool reduced) {
  if (w.empty())
    throw std::invalid_argument("whitehead_graph: empty word");
  WhiteheadGraph g;
  g.rank = rank;
  g.reduced = reduced;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    Letter a = inverse(w[i]);
    Letter b = w.at_mod(i + 1);
    int ia = letter_index(a), ib = letter_index(b);
    if (reduced) {
      g.mult[ia * 2 * kMaxRank + ib] = 1;
      g.mult[ib * 2 * kMaxRank + ia] = 1;
    } else {
      ++g.mult[ia * 2 * kMaxRank + ib];
      if (ia != ib) ++g.mult[ib * 2 * kMaxRank + ia];
    }
  }
  return g;
}

// --- text renderings ---------------------------------------------------------

inline std::string WhiteheadFirstKind::to_string() const {
  std::string s = "W1[";
  for (int g = 1; g <= rank; ++g) {
    if (g > 1) s += ' ';
    s += std::to_string(int(perm[g]));
  }
  s += ';';
  for (int g = 1; g <= rank; ++g) s += sign[g] > 0 ? '+' : '-';
  s += ']';
  return s;
}

inline std::string WhiteheadSecondKind::to_string() const {
  std::string s = "W2[" + render_letter(multiplier) + ";{";
  bool first = true;
  for (int d = 0; d < 2 * rank; ++d) {
    Letter y = digit_to_letter(d, rank);
    if (!z_contains(y)) continue;
    if (!first) s += ',';
    s += render_letter(y);
    first = false;
  }
  s += "}]";
  return s;
}

inline std::string AutomorphismChain::to_string() const {
  std::string s;
  for (const auto& step : steps) {
    if (!s.empty()) s += ' ';
    s += std::visit([](const auto& a) { return a.to_string(); }, step);
  }
  return s;
}

}  // namespace orc
