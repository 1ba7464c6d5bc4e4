#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ordspace/braid_word.hpp"
#include "ordspace/cone.hpp"
#include "ordspace/magnus.hpp"

namespace ordspace {

/// The Dehornoy ordering of B_n: positive iff the handle-reduced
/// representative is i-positive for some i.
inline Cone<BraidWord> dehornoy_cone(int n) {
  if (n < 2) throw usage_error("braid needs at least 2 strands");
  Cone<BraidWord> c;
  c.classify = [n](const BraidWord& w) {
    if (w.strands != n) throw family_error("braid strand mismatch");
    switch (sigma_classify(w).cls) {
      case SigmaClass::positive: return Sign::positive;
      case SigmaClass::negative: return Sign::negative;
      default: return Sign::identity;
    }
  };
  c.descriptor = json{{"kind", "dehornoy"}, {"strands", n}};
  return c;
}

/// <sigma_r, ..., sigma_{n-1}>: the braids whose handle-reduced form
/// uses only indices >= r.  Convex for the Dehornoy cone.
inline SubgroupOracle<BraidWord> parabolic_subgroup(int n, int r) {
  if (r < 1 || r > n - 1) throw usage_error("parabolic index out of range");
  return {[n, r](const BraidWord& w) {
            if (w.strands != n) throw family_error("braid strand mismatch");
            for (int l : handle_reduce(w).letters)
              if ((l > 0 ? l : -l) < r) return false;
            return true;
          },
          json{{"kind", "parabolic"}, {"strands", n}, {"r", r}}};
}

/// Index shift identifying <sigma_{n-2}, sigma_{n-1}> with B_3.
inline BraidWord b3_shift_down(int n, const BraidWord& w) {
  std::vector<int> ls;
  for (int l : handle_reduce(w).letters) {
    int i = l > 0 ? l : -l;
    if (i < n - 2) throw usage_error("braid not in the B3 copy");
    ls.push_back(l > 0 ? i - (n - 3) : -(i - (n - 3)));
  }
  return BraidWord(3, ls);
}

/// Rewrites a B_3 word of exponent sum zero as a free word in the two
/// free generators of the commutator subgroup,
///   a = s2 s1^-1  and  b = s1 s2 s1^-2.
/// Scanning with the transversal s1^k turns each s2^{+-1} into a
/// Schreier generator c_k = s1^k s2 s1^{-k-1}; the braid relation gives
/// c_{k+2} = c_k^-1 c_{k+1}, so every c_k unfolds into {a, b}.
inline FreeWord b3_commutator_word(const BraidWord& w3) {
  if (w3.strands != 3) throw usage_error("expected a B3 word");
  int sum = 0;
  for (int l : w3.letters) sum += l > 0 ? 1 : -1;
  if (sum != 0) throw usage_error("word has nonzero exponent sum");
  std::map<int, FreeWord> c;
  c[0] = FreeWord(2, {1});  // a
  c[1] = FreeWord(2, {2});  // b
  std::function<FreeWord(int)> ck = [&](int k) -> FreeWord {
    auto it = c.find(k);
    if (it != c.end()) return it->second;
    FreeWord v = k > 1 ? multiply(invert(ck(k - 2)), ck(k - 1))
                       : multiply(ck(k + 1), invert(ck(k + 2)));
    c[k] = v;
    return v;
  };
  FreeWord out = FreeWord::identity(2);
  int k = 0;
  for (int l : w3.letters) {
    switch (l) {
      case 1: ++k; break;
      case -1: --k; break;
      case 2: out = multiply(out, ck(k)); ++k; break;
      case -2: --k; out = multiply(out, invert(ck(k))); break;
      default: throw usage_error("unexpected braid letter");
    }
  }
  return out;
}

/// Left-order on B_3 built lexicographically from the abelianization:
/// exponent sum first, then the Magnus order on the commutator
/// subgroup (free of rank 2).
inline Cone<BraidWord> b3_soul_lex_cone() {
  auto M = magnus_cone(2);
  Cone<BraidWord> c;
  c.classify = [M](const BraidWord& w) {
    if (w.strands != 3) throw family_error("expected a B3 word");
    int sum = 0;
    for (int l : w.letters) sum += l > 0 ? 1 : -1;
    if (sum > 0) return Sign::positive;
    if (sum < 0) return Sign::negative;
    return M.classify(b3_commutator_word(handle_reduce(w)));
  };
  c.descriptor = json{{"kind", "b3-abelianization-lex"},
                      {"kernel", M.descriptor}};
  return c;
}

/// An arbitrary cone on B_3, transported to the copy
/// <sigma_{n-2}, sigma_{n-1}> inside B_n by the index shift.
inline Cone<BraidWord> shifted_b3_cone(int n, const Cone<BraidWord>& inner) {
  Cone<BraidWord> c;
  c.classify = [n, inner](const BraidWord& w) {
    return inner.classify(b3_shift_down(n, w));
  };
  c.descriptor = json{{"kind", "b3-shift"},
                      {"strands", n},
                      {"inner", inner.descriptor}};
  return c;
}

/// Dehornoy ordering outside the parabolic B_3 copy, an arbitrary
/// supplied ordering inside it.
inline Cone<BraidWord> example_braid_surgery(int n,
                                             const Cone<BraidWord>& inner) {
  if (n < 4) throw usage_error("surgery example needs at least 4 strands");
  return surgery(dehornoy_cone(n), parabolic_subgroup(n, n - 2), inner);
}

}  // namespace ordspace
