#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ordspace/ball.hpp"
#include "ordspace/cone.hpp"
#include "ordspace/magnus.hpp"
#include "ordspace/pl_homeo.hpp"

namespace ordspace {

/// Finite stand-in for the dynamic realization of a left-order on F_n:
/// the ball of radius k+1 is sorted by the order and embedded in Q by
/// t (consecutive integers, t(identity) = 0); each generator becomes
/// the PL interpolation of t(w) -> t(x_i w) with slope-1 tails.
struct Realization {
  Cone<FreeWord> base;
  int rank = 0;
  int k = 0;
  std::vector<FreeWord> sorted;  // ball(k+1) in increasing order
  std::map<FreeWord, Rat> t;
  std::vector<PLHomeo> gens;

  const Rat& t_at(const FreeWord& w) const {
    auto it = t.find(w);
    if (it == t.end()) throw usage_error("element outside the t-domain");
    return it->second;
  }

  PLHomeo rho(const FreeWord& w) const {
    PLHomeo r;
    for (int l : w.letters)
      r = pl_compose(r, l > 0 ? gens[l - 1] : pl_invert(gens[-l - 1]));
    return r;
  }
};

inline Realization dynamic_realization(const Cone<FreeWord>& P, int rank,
                                       int k) {
  if (rank < 1) throw usage_error("realization needs rank >= 1");
  if (k < 1) throw usage_error("realization needs radius >= 1");
  Realization R;
  R.base = P;
  R.rank = rank;
  R.k = k;
  R.sorted = ball_free(rank, k + 1).members;
  std::sort(R.sorted.begin(), R.sorted.end(),
            [&P](const FreeWord& g, const FreeWord& h) {
              return compare(P, g, h) == Ordering::less;
            });
  std::ptrdiff_t id_pos = -1;
  for (std::size_t i = 0; i < R.sorted.size(); ++i)
    if (R.sorted[i].is_identity()) id_pos = static_cast<std::ptrdiff_t>(i);
  for (std::size_t i = 0; i < R.sorted.size(); ++i)
    R.t.emplace(R.sorted[i], Rat(static_cast<std::ptrdiff_t>(i) - id_pos));
  for (int i = 1; i <= rank; ++i) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (const FreeWord& w : R.sorted) {
      auto it = R.t.find(multiply(FreeWord::gen(rank, i), w));
      if (it != R.t.end()) pts.emplace_back(R.t.at(w), it->second);
    }
    R.gens.push_back(pl_from_points(std::move(pts)));
  }
  return R;
}

/// P-minimum and P-maximum of ball(k) (the inner ball of the domain).
inline std::pair<FreeWord, FreeWord> ball_extrema(const Realization& R) {
  std::optional<FreeWord> lo, hi;
  for (const FreeWord& w : R.sorted) {
    if (w.length() > R.k) continue;
    if (!lo) lo = w;  // sorted order: first hit is the minimum
    hi = w;
  }
  return {*lo, *hi};
}

/// The generators a = x_{j0}^{eps_{j0}} and b = x_l^{eps_l} of the
/// perturbation: eps_j is the unique sign with x_j^{eps_j} g+ > g+,
/// j0 minimizes x_j^{eps_j} g+, and l is the smallest other index.
struct ChooseAB {
  FreeWord a, b;
  int j0 = 0, l = 0;
  std::vector<int> eps;  // eps[j-1] for generator j
};

inline ChooseAB choose_ab(const Realization& R) {
  if (R.rank < 2) throw usage_error("perturbation needs rank >= 2");
  FreeWord gplus = ball_extrema(R).second;
  ChooseAB out;
  out.eps.assign(R.rank, 0);
  std::optional<FreeWord> best;
  for (int j = 1; j <= R.rank; ++j) {
    for (int e : {1, -1}) {
      FreeWord cand = multiply(FreeWord::gen(R.rank, j, e), gplus);
      if (compare(R.base, gplus, cand) == Ordering::less) {
        if (out.eps[j - 1] != 0)
          throw std::logic_error("both x_j g+ and x_j^-1 g+ exceed g+");
        out.eps[j - 1] = e;
        if (!best || compare(R.base, cand, *best) == Ordering::less) {
          best = cand;
          out.j0 = j;
        }
      }
    }
    if (out.eps[j - 1] == 0)
      throw std::logic_error("neither x_j g+ nor x_j^-1 g+ exceeds g+");
  }
  out.l = out.j0 == 1 ? 2 : 1;
  out.a = FreeWord::gen(R.rank, out.j0, out.eps[out.j0 - 1]);
  out.b = FreeWord::gen(R.rank, out.l, out.eps[out.l - 1]);
  return out;
}

/// f1 agrees with rho(a) up to g+(0), then is the affine map through
/// (g+(0), ag+(0)) and (ag+(0), bg+(0)); f2 agrees with rho(b) up to
/// g+(0), then is affine through (g+(0), bg+(0)) and (bg+(0), f1(bg+(0))).
inline std::pair<PLHomeo, PLHomeo> build_f1_f2(const Realization& R,
                                               const ChooseAB& ab) {
  FreeWord gplus = ball_extrema(R).second;
  Rat s = R.t_at(gplus);
  Rat as = R.t_at(multiply(ab.a, gplus));
  Rat bs = R.t_at(multiply(ab.b, gplus));
  if (!(s < as && as < bs))
    throw std::logic_error("g+(0) < ag+(0) < bg+(0) violated");
  auto truncate = [&s](const PLHomeo& f, const Rat& at_s, const Rat& slope) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (const auto& p : f.pts)
      if (p.first < s) pts.push_back(p);
    pts.emplace_back(s, at_s);
    return pl_from_points(std::move(pts), f.sl, slope);
  };
  PLHomeo ra = R.rho(ab.a);
  if (ra(s) != as) throw std::logic_error("rho(a) misses ag+(0)");
  PLHomeo f1 = truncate(ra, as, (bs - as) / (as - s));
  if (!(f1(bs) > bs)) throw std::logic_error("f1(bg+(0)) > bg+(0) violated");
  PLHomeo rb = R.rho(ab.b);
  if (rb(s) != bs) throw std::logic_error("rho(b) misses bg+(0)");
  PLHomeo f2 = truncate(rb, bs, (f1(bs) - bs) / (bs - s));
  return {f1, f2};
}

/// The perturbed representation rho_k: generator j0 maps to f1 (or its
/// inverse, matching the chosen sign), generator l to f2; all others
/// keep their realization homeos.
struct Perturbed {
  int rank = 0;
  std::vector<PLHomeo> gens;
  mutable std::map<std::vector<int>, PLHomeo> memo;

  const PLHomeo& at(const FreeWord& w) const {
    auto it = memo.find(w.letters);
    if (it != memo.end()) return it->second;
    PLHomeo r;
    for (int l : w.letters)
      r = pl_compose(r, l > 0 ? gens[l - 1] : pl_invert(gens[-l - 1]));
    return memo.emplace(w.letters, std::move(r)).first->second;
  }
};

inline Perturbed perturbed_representation(const Realization& R,
                                          const ChooseAB& ab,
                                          const PLHomeo& f1,
                                          const PLHomeo& f2) {
  Perturbed rho;
  rho.rank = R.rank;
  rho.gens = R.gens;
  rho.gens[ab.j0 - 1] = ab.eps[ab.j0 - 1] > 0 ? f1 : pl_invert(f1);
  rho.gens[ab.l - 1] = ab.eps[ab.l - 1] > 0 ? f2 : pl_invert(f2);
  // condition (1): the perturbation is invisible at 0 on ball(k)
  for (const FreeWord& w : R.sorted) {
    if (w.length() > R.k) continue;
    if (rho.at(w)(Rat(0)) != R.t_at(w))
      throw std::logic_error("perturbation changed a ball(k) orbit point");
  }
  return rho;
}

/// h1 = (bg+)^-1 a^2 g+ and h2 = (abg+)^-1 b^2 g+: nontrivial
/// generators of a free subgroup inside the stabilizer of 0.
inline std::pair<FreeWord, FreeWord> h1h2(const ChooseAB& ab,
                                          const FreeWord& gplus) {
  FreeWord h1 = multiply(invert(multiply(ab.b, gplus)),
                         multiply(multiply(ab.a, ab.a), gplus));
  FreeWord h2 = multiply(invert(multiply(ab.a, multiply(ab.b, gplus))),
                         multiply(multiply(ab.b, ab.b), gplus));
  if (h1.is_identity() || h2.is_identity())
    throw std::logic_error("h1 or h2 reduced to the identity");
  if (commutator(h1, h2).is_identity())
    throw std::logic_error("[h1, h2] reduced to the identity");
  return {h1, h2};
}

/// Left-order pulled back from the lexicographic order on increasing
/// homeomorphisms: w is positive when rho_k(w) moves the earliest
/// enumerated rational it does not fix upward; words acting as the
/// identity map fall back to the kernel cone.
inline Cone<FreeWord> homeo_lex_cone(std::shared_ptr<Perturbed> rho,
                                     const Cone<FreeWord>& kernel_cone,
                                     json info = json::object()) {
  Cone<FreeWord> c;
  c.classify = [rho, kernel_cone](const FreeWord& w) {
    const PLHomeo& F = rho->at(w);
    if (F.is_identity()) return kernel_cone.classify(w);
    Rat r = *pl_first_difference(F, PLHomeo::identity());
    return F(r) > r ? Sign::positive : Sign::negative;
  };
  c.descriptor = json{{"kind", "realization"},
                      {"kernel", kernel_cone.descriptor}};
  for (auto& [key, value] : info.items()) c.descriptor[key] = value;
  return c;
}

/// Stab(0) under rho_k; convex for the homeo-lex order since r_0 = 0.
inline SubgroupOracle<FreeWord> stab0_subgroup(std::shared_ptr<Perturbed> rho) {
  return {[rho](const FreeWord& w) { return rho->at(w)(Rat(0)) == 0; },
          json{{"kind", "stab0"}}};
}

/// Replaces the order on the convex subgroup C by the (restriction of
/// the) Magnus bi-order, making the result dense: inside C the Magnus
/// order has no least positive element, and positive elements outside
/// C dominate all of C by convexity.  c_samples should contain known
/// nontrivial members of C (the pipeline passes h1, h2); they seed the
/// density hints.
inline Cone<FreeWord> soul_surgery(const Cone<FreeWord>& Q,
                                   const SubgroupOracle<FreeWord>& C, int n,
                                   std::vector<FreeWord> c_samples = {}) {
  Cone<FreeWord> out = surgery(Q, C, magnus_cone(n));
  out.certified_dense = true;
  out.density_hint = [out, C, c_samples,
                      n](const FreeWord& g) -> std::optional<FreeWord> {
    auto oriented = [&out](FreeWord h) {
      return out.classify(h) == Sign::negative ? invert(h) : h;
    };
    if (!C.member(g)) {
      // anything positive in C sits below g
      for (const FreeWord& c : c_samples)
        if (!c.is_identity()) return oriented(c);
      return std::nullopt;
    }
    // inside C: commutators with C-members descend the Magnus order
    std::vector<FreeWord> cands = c_samples;
    for (int j = 1; j <= n; ++j) cands.push_back(FreeWord::gen(g.rank, j));
    for (const FreeWord& c : cands) {
      FreeWord h = commutator(g, c);
      if (!h.is_identity() && C.member(h)) return oriented(h);
    }
    return std::nullopt;
  };
  return out;
}

/// Everything the perturbation pipeline produces, kept together so the
/// CLI can plot f1/f2 and emit a transcript.
struct FreePipeline {
  Realization R;
  ChooseAB ab;
  PLHomeo f1, f2;
  std::shared_ptr<Perturbed> rho;
  FreeWord gplus, gminus, h1, h2;
  Cone<FreeWord> Q;
  SubgroupOracle<FreeWord> C;
  Cone<FreeWord> Qprime;
};

/// Dense approximation of a left-order on F_n keeping the supplied
/// positive elements positive: dynamic realization, perturbation at
/// the ball maximum, homeo-lex pullback, then surgery on Stab(0).
inline FreePipeline free_pipeline(const Cone<FreeWord>& P, int rank,
                                  const std::vector<FreeWord>& g_list, int k) {
  if (rank < 2) throw usage_error("dense approximation needs rank >= 2");
  for (const FreeWord& g : g_list) {
    if (g.length() > k)
      throw usage_error("required element outside ball(k): " + to_text(g));
    if (P.classify(g) != Sign::positive)
      throw usage_error("required element not positive: " + to_text(g));
  }
  FreePipeline p;
  p.R = dynamic_realization(P, rank, k);
  p.ab = choose_ab(p.R);
  std::tie(p.gminus, p.gplus) = ball_extrema(p.R);
  std::tie(p.f1, p.f2) = build_f1_f2(p.R, p.ab);
  p.rho = std::make_shared<Perturbed>(
      perturbed_representation(p.R, p.ab, p.f1, p.f2));
  std::tie(p.h1, p.h2) = h1h2(p.ab, p.gplus);
  if (p.rho->at(p.h1)(Rat(0)) != 0 || p.rho->at(p.h2)(Rat(0)) != 0)
    throw std::logic_error("h1 or h2 left the stabilizer of 0");
  p.Q = homeo_lex_cone(
      p.rho, P, json{{"base", P.descriptor}, {"k", k}, {"rank", rank}});
  p.C = stab0_subgroup(p.rho);
  p.Qprime = soul_surgery(p.Q, p.C, rank, {p.h1, p.h2});
  for (const FreeWord& g : g_list) {
    if (p.C.member(g)) throw std::logic_error("required element fell into Stab(0)");
    if (p.Q.classify(g) != Sign::positive ||
        p.Qprime.classify(g) != Sign::positive)
      throw std::logic_error("required element lost positivity");
  }
  return p;
}

inline Cone<FreeWord> dense_approximation_free(
    const Cone<FreeWord>& P, int rank, const std::vector<FreeWord>& g_list,
    int k) {
  return free_pipeline(P, rank, g_list, k).Qprime;
}

/// The two approximations of a left-order on F_infinity (rank-0 words)
/// near a finite positivity requirement.
struct FinftyResult {
  int K = 1;  // first generator index not occurring in g_list
  Cone<FreeWord> flip;
  Cone<FreeWord> dense;
};

inline FinftyResult finfty_approximation(const Cone<FreeWord>& P,
                                         const std::vector<FreeWord>& g_list) {
  FinftyResult out;
  for (const FreeWord& g : g_list)
    for (int l : g.letters)
      out.K = std::max(out.K, (l > 0 ? l : -l) + 1);
  int K = out.K;
  // pullback along the automorphism x_K -> x_K^-1 (all others fixed)
  out.flip.classify = [P, K](const FreeWord& w) {
    std::vector<int> ls = w.letters;
    for (int& l : ls)
      if (l == K || l == -K) l = -l;
    return P.classify(FreeWord(w.rank, std::move(ls)));
  };
  out.flip.descriptor = json{{"kind", "finfty"},
                             {"variant", "flip"},
                             {"k", K},
                             {"base", P.descriptor}};
  // lex extension: quotient F_{K-1} through the retraction killing
  // x_i for i >= K, kernel ordered by the Magnus bi-order
  auto retract = [K](const FreeWord& w) {
    std::vector<int> ls;
    for (int l : w.letters)
      if ((l > 0 ? l : -l) < K) ls.push_back(l);
    return FreeWord(w.rank, std::move(ls));
  };
  auto magnus_rank = [](const FreeWord& w) {
    int m = 2;
    for (int l : w.letters) m = std::max(m, l > 0 ? l : -l);
    return m;
  };
  auto cones = std::make_shared<std::map<int, Cone<FreeWord>>>();
  auto kernel_classify = [cones, magnus_rank](const FreeWord& w) {
    int m = magnus_rank(w);
    auto it = cones->find(m);
    if (it == cones->end()) it = cones->emplace(m, magnus_cone(m)).first;
    return it->second.classify(w);
  };
  out.dense.classify = [P, retract, kernel_classify](const FreeWord& w) {
    FreeWord hw = retract(w);
    if (!hw.is_identity()) return P.classify(hw);
    return kernel_classify(w);
  };
  out.dense.descriptor = json{{"kind", "finfty"},
                              {"variant", "dense"},
                              {"k", K},
                              {"outer", P.descriptor},
                              {"inner", json{{"kind", "magnus"},
                                             {"rank", 0},
                                             {"from", K}}}};
  out.dense.certified_dense = true;
  Cone<FreeWord> dense_copy = out.dense;  // for orientation inside the hint
  out.dense.density_hint =
      [dense_copy, retract, K](const FreeWord& g) -> std::optional<FreeWord> {
    auto oriented = [&dense_copy](FreeWord h) {
      return dense_copy.classify(h) == Sign::negative ? invert(h) : h;
    };
    if (!retract(g).is_identity()) return FreeWord::gen(g.rank, K);
    for (int j = K; j <= K + 1; ++j) {
      FreeWord h = commutator(g, FreeWord::gen(g.rank, j));
      if (!h.is_identity()) return oriented(h);
    }
    return std::nullopt;
  };
  return out;
}

}  // namespace ordspace
