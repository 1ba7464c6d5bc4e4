#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordspace/cone.hpp"
#include "ordspace/free_word.hpp"
#include "ordspace/rational.hpp"

namespace ordspace {

/// Truncated series in noncommuting variables X_1..X_n with integer
/// coefficients.  coef[d] holds all degree-d monomials, indexed by
/// their digit string read left to right in base n (lexicographic
/// order within a degree).
struct MagnusSeries {
  int rank = 0;
  int degree = 0;
  std::vector<std::vector<Int>> coef;

  static MagnusSeries one(int rank, int degree) {
    MagnusSeries s;
    s.rank = rank;
    s.degree = degree;
    s.coef.resize(degree + 1);
    std::size_t sz = 1;
    for (int d = 0; d <= degree; ++d) {
      charge_budget(sz, "magnus expansion");
      s.coef[d].assign(sz, 0);
      if (d < degree) sz *= rank;
    }
    s.coef[0][0] = 1;
    return s;
  }

  /// Right-multiplies by the expansion of x_i^e (e = +-1):
  /// x_i -> 1 + X_i, x_i^-1 -> sum_j (-X_i)^j.
  void mul_gen(int i, int e) {
    int g = i - 1;
    auto old = coef;
    if (e > 0) {
      // S * (1 + X_i): append one X_i
      for (int d = 0; d + 1 <= degree; ++d)
        for (std::size_t m = 0; m < old[d].size(); ++m) {
          if (old[d][m] == 0) continue;
          coef[d + 1][m * rank + g] += old[d][m];
        }
    } else {
      // S * sum_{j>=1} (-1)^j X_i^j: append powers of X_i
      for (int d = 0; d <= degree; ++d)
        for (std::size_t m = 0; m < old[d].size(); ++m) {
          if (old[d][m] == 0) continue;
          std::size_t idx = m;
          int sign = 1;
          for (int j = 1; d + j <= degree; ++j) {
            idx = idx * rank + g;
            sign = -sign;
            coef[d + j][idx] += sign * old[d][m];
          }
        }
    }
  }

  /// First nonzero coefficient of (this - 1) in degree-then-lex order.
  std::optional<std::pair<int, Int>> leading() const {
    for (int d = 0; d <= degree; ++d)
      for (std::size_t m = 0; m < coef[d].size(); ++m) {
        Int c = coef[d][m];
        if (d == 0) c -= 1;
        if (c != 0) return std::make_pair(d, c);
      }
    return std::nullopt;
  }
};

inline MagnusSeries magnus_expansion(const FreeWord& w, int rank, int degree) {
  MagnusSeries s = MagnusSeries::one(rank, degree);
  for (int l : w.letters) {
    if (l > rank || l < -rank)
      throw family_error("word uses a generator beyond the Magnus rank");
    s.mul_gen(l > 0 ? l : -l, l > 0 ? 1 : -1);
  }
  return s;
}

namespace detail {

struct MagnusCache {
  int rank;
  std::map<std::vector<int>, MagnusSeries> memo;

  const MagnusSeries& at_degree(const FreeWord& w, int degree) {
    auto it = memo.find(w.letters);
    if (it != memo.end() && it->second.degree >= degree) return it->second;
    MagnusSeries s = magnus_expansion(w, rank, degree);
    return memo.insert_or_assign(w.letters, std::move(s)).first->second;
  }
};

// Sign of the first degree-then-lex difference coef(g) - coef(h),
// raising the truncation until one appears (never for equal words,
// which the caller excludes).
inline int magnus_diff_sign(MagnusCache& cache, const FreeWord& g,
                            const FreeWord& h, int d0) {
  // Start small and double: the leading term sits at the lower-central
  // depth, which is far below the word length for iterated commutators.
  int degree = std::max(d0, 1);
  for (;;) {
    const MagnusSeries& sg = cache.at_degree(g, degree);
    const MagnusSeries& sh = cache.at_degree(h, degree);
    for (int d = 0; d <= degree; ++d)
      for (std::size_t m = 0; m < sg.coef[d].size(); ++m) {
        int c = sg.coef[d][m].compare(sh.coef[d][m]);
        if (c != 0) return c;
      }
    degree *= 2;
    charge_budget(std::size_t(1) << std::min(degree, 62), "magnus compare");
  }
}

}  // namespace detail

/// The Magnus bi-order on F_n: positive iff the first nonzero
/// coefficient of expansion(w) - 1 (degree-then-lex) is positive.
/// Truncation starts at max(D0, |w|) and doubles until decisive.
inline Cone<FreeWord> magnus_cone(int n, int d0 = 2) {
  if (n < 1) throw usage_error("magnus rank must be >= 1");
  auto cache = std::make_shared<detail::MagnusCache>();
  cache->rank = n;
  Cone<FreeWord> c;
  c.classify = [n, d0, cache](const FreeWord& w) {
    if (w.rank > 0 && w.rank != n)
      throw family_error("magnus cone rank mismatch");
    if (w.is_identity()) return Sign::identity;
    return detail::magnus_diff_sign(*cache, w, FreeWord::identity(w.rank),
                                    d0) > 0
               ? Sign::positive
               : Sign::negative;
  };
  c.compare_hint = [n, d0, cache](const FreeWord& g, const FreeWord& h) {
    if ((g.rank > 0 && g.rank != n) || (h.rank > 0 && h.rank != n))
      throw family_error("magnus cone rank mismatch");
    if (g.letters == h.letters) return Ordering::equal;
    // first difference of the two unit series has the same position and
    // sign as the leading term of expansion(g^-1 h) - 1
    return detail::magnus_diff_sign(*cache, h, g, d0) > 0 ? Ordering::less
                                                          : Ordering::greater;
  };
  c.descriptor = json{{"kind", "magnus"}, {"rank", n}, {"base_degree", d0}};
  c.certified_dense = true;
  // [g, x_j] sits strictly deeper in the lower central series than g,
  // hence is closer to the identity in the Magnus order.
  c.density_hint = [n, c](const FreeWord& g) -> std::optional<FreeWord> {
    for (int j = 1; j <= n; ++j) {
      FreeWord h = commutator(g, FreeWord::gen(g.rank, j));
      if (h.is_identity()) continue;
      if (c.classify(h) == Sign::negative) h = invert(h);
      return h;
    }
    return std::nullopt;
  };
  return c;
}

}  // namespace ordspace
