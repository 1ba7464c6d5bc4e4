#pragma once

#include <map>
#include <string>
#include <vector>

#include "ordspace/cone.hpp"
#include "ordspace/tower_element.hpp"

namespace ordspace {

using SignVector = std::vector<int>;  // entries +1 / -1

/// Positive cone of the tower group of rank n labelled by a sign
/// vector: an element is positive when eps_i * sign(a_i) > 0 at its
/// highest nonzero index i.  Each <x_1,...,x_i> is convex, and the
/// order is discrete with least positive element x_1^{eps_1}.
inline Cone<TowerElement> tower_cone(int n, const SignVector& signs) {
  if (n < 1) throw usage_error("tower rank must be >= 1");
  if (static_cast<int>(signs.size()) != n)
    throw usage_error("sign vector length must equal tower rank");
  for (int s : signs)
    if (s != 1 && s != -1) throw usage_error("signs must be +1 or -1");
  Cone<TowerElement> c;
  c.classify = [n, signs](const TowerElement& g) {
    if (static_cast<int>(g.exponents.size()) != n)
      throw family_error("tower rank mismatch");
    for (int i = n - 1; i >= 0; --i) {
      long long a = g.exponents[i];
      if (a == 0) continue;
      return signs[i] * (a > 0 ? 1 : -1) > 0 ? Sign::positive
                                             : Sign::negative;
    }
    return Sign::identity;
  };
  json sj = json::array();
  for (int s : signs) sj.push_back(s);
  c.descriptor = json{{"kind", "tower-signs"}, {"rank", n}, {"signs", sj}};
  std::vector<long long> least(n, 0);
  least[0] = signs[0];
  c.certified_least = TowerElement(least);
  return c;
}

/// All 2^n tower cones, in binary order of their sign vectors.
inline std::vector<Cone<TowerElement>> enumerate_tower_cones(int n) {
  if (n < 1) throw usage_error("tower rank must be >= 1");
  if (n > 20) throw budget_error("tower rank too large to enumerate");
  std::vector<Cone<TowerElement>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    SignVector s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(tower_cone(n, s));
  }
  return out;
}

struct CensusResult {
  int count = 0;
  // induced signs of x_1..x_n for each surviving partial cone
  std::vector<SignVector> generator_signs;
};

namespace detail {

struct BallTable {
  std::vector<TowerElement> members;
  std::vector<int> inv;                    // index of the inverse
  std::vector<std::vector<int>> prod;      // product index or -1
  std::map<std::string, int> index;

  explicit BallTable(const Ball<TowerElement>& B) {
    members = B.members;
    for (std::size_t i = 0; i < members.size(); ++i)
      index[to_text(members[i])] = static_cast<int>(i);
    int m = static_cast<int>(members.size());
    inv.resize(m);
    prod.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i) {
      auto it = index.find(to_text(invert(members[i])));
      inv[i] = it == index.end() ? -1 : it->second;
      for (int j = 0; j < m; ++j) {
        auto p = index.find(to_text(multiply(members[i], members[j])));
        if (p != index.end()) prod[i][j] = p->second;
      }
    }
  }
};

// signs: +1 / -1 per element, 0 = undecided.  Checks the closure
// triples touching element e (as factor or product) among decided ones.
inline bool closure_ok_around(const BallTable& T, const std::vector<int>& signs,
                              int e) {
  int m = static_cast<int>(T.members.size());
  for (int i = 0; i < m; ++i) {
    if (signs[i] != 1) continue;
    for (int j = 0; j < m; ++j) {
      if (signs[j] != 1) continue;
      int p = T.prod[i][j];
      if (p < 0 || signs[p] != -1) continue;
      if (i == e || j == e || p == e) return false;
    }
  }
  return true;
}

inline bool closure_ok(const BallTable& T, const std::vector<int>& signs) {
  int m = static_cast<int>(T.members.size());
  for (int i = 0; i < m; ++i) {
    if (signs[i] != 1) continue;
    for (int j = 0; j < m; ++j) {
      if (signs[j] != 1) continue;
      int p = T.prod[i][j];
      if (p >= 0 && signs[p] == -1) return false;
    }
  }
  return true;
}

// Backtracking over the undecided inverse pairs: does some total sign
// assignment on the larger ball satisfy closure?
inline bool extendable(const BallTable& T, std::vector<int>& signs,
                       const std::vector<std::pair<int, int>>& pairs,
                       std::size_t at) {
  if (at == pairs.size()) return true;
  auto [g, gi] = pairs[at];
  for (int s : {1, -1}) {
    signs[g] = s;
    signs[gi] = -s;
    if (closure_ok_around(T, signs, g) && closure_ok_around(T, signs, gi) &&
        extendable(T, signs, pairs, at + 1))
      return true;
  }
  signs[g] = signs[gi] = 0;
  return false;
}

}  // namespace detail

/// Brute-force shadow of the 2^n count: every subset of the radius-k
/// ball satisfying trichotomy and in-ball closure, filtered by
/// extendability to radius k+1, reported with its generator signs.
inline CensusResult ball_cone_census(int n, int k) {
  detail::BallTable big(ball_tower(n, k + 1));
  int m = static_cast<int>(big.members.size());
  std::vector<char> in_small(m, 0);
  for (const auto& g : ball_tower(n, k).members)
    in_small[big.index.at(to_text(g))] = 1;

  std::vector<std::pair<int, int>> small_pairs, boundary_pairs;
  int id = -1;
  for (int i = 0; i < m; ++i) {
    if (big.members[i].is_identity()) {
      id = i;
      continue;
    }
    int j = big.inv[i];
    if (j < i) continue;  // one representative per pair
    (in_small[i] ? small_pairs : boundary_pairs).emplace_back(i, j);
  }
  if (small_pairs.size() > 25)
    throw budget_error("census ball too large to enumerate subsets");

  std::vector<int> gen_index(n);
  for (int i = 0; i < n; ++i)
    gen_index[i] = big.index.at(to_text(TowerElement::gen(n, i + 1)));

  CensusResult out;
  for (std::uint64_t mask = 0; mask < (1ull << small_pairs.size()); ++mask) {
    std::vector<int> signs(m, 0);
    signs[id] = 0;
    for (std::size_t t = 0; t < small_pairs.size(); ++t) {
      int s = (mask >> t) & 1 ? -1 : 1;
      signs[small_pairs[t].first] = s;
      signs[small_pairs[t].second] = -s;
    }
    if (!detail::closure_ok(big, signs)) continue;
    if (!detail::extendable(big, signs, boundary_pairs, 0)) continue;
    SignVector gs(n);
    for (int i = 0; i < n; ++i) gs[i] = signs[gen_index[i]];
    out.generator_signs.push_back(gs);
    ++out.count;
  }
  return out;
}

struct DiscreteTowerEntry {
  Cone<TowerElement> cone;
  TowerElement least;
  BallCertificate<TowerElement> certificate;
};

/// For every tower cone: its least positive element together with a
/// radius-6 ball certificate that nothing positive is smaller.
inline std::vector<DiscreteTowerEntry> check_all_discrete(int n) {
  std::vector<DiscreteTowerEntry> out;
  auto B = ball_tower(n, 6);
  for (auto& c : enumerate_tower_cones(n)) {
    auto r = least_positive_on_ball(c, B);
    if (!r.element || !r.certified_global)
      throw std::logic_error("tower cone lost its least element");
    out.push_back({c, *r.element, r.certificate});
  }
  return out;
}

}  // namespace ordspace
