#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ordspace/abelian_vector.hpp"
#include "ordspace/cone.hpp"
#include "ordspace/lattice.hpp"
#include "ordspace/quad.hpp"

namespace ordspace {

using QuadVec = std::vector<Quad>;

inline std::vector<Int> to_ints(const AbelianVector& v) {
  std::vector<Int> r;
  r.reserve(v.coords.size());
  for (long long c : v.coords) r.emplace_back(c);
  return r;
}

inline AbelianVector from_ints(const std::vector<Int>& v) {
  AbelianVector r;
  for (const Int& x : v) {
    if (x > std::numeric_limits<long long>::max() ||
        x < std::numeric_limits<long long>::min())
      throw budget_error("abelian coordinate overflow");
    r.coords.push_back(static_cast<long long>(x));
  }
  return r;
}

inline Quad dot(const QuadVec& f, const std::vector<Int>& v) {
  Quad s;
  for (std::size_t i = 0; i < f.size(); ++i)
    s = s + f[i] * Quad(Rat(v[i]), Rat(0));
  return s;
}

inline Quad dot(const QuadVec& f, const AbelianVector& v) {
  return dot(f, to_ints(v));
}

/// Functional restricted to the sublattice spanned by basis rows:
/// coordinate j reads the value on basis vector j.
inline QuadVec restrict_functional(const QuadVec& f, const Mat& basis_rows) {
  QuadVec u;
  u.reserve(basis_rows.size());
  for (const auto& row : basis_rows) u.push_back(dot(f, row));
  return u;
}

/// Integer kernel (in basis coordinates) of a Q(sqrt2) functional on
/// Z^r: simultaneous vanishing of the rational and sqrt2 parts.
inline Mat quad_functional_kernel(const QuadVec& u) {
  int r = static_cast<int>(u.size());
  Int da = 1, db = 1;
  for (const Quad& q : u) {
    da = boost::multiprecision::lcm(da, den(q.a));
    db = boost::multiprecision::lcm(db, den(q.b));
  }
  Mat A(2, std::vector<Int>(r));
  for (int i = 0; i < r; ++i) {
    A[0][i] = num(u[i].a) * (da / den(u[i].a));
    A[1][i] = num(u[i].b) * (db / den(u[i].b));
  }
  return int_kernel(A, r);
}

/// Coordinates of v with respect to the lattice's HNF basis rows,
/// when v lies in the lattice.
inline std::optional<std::vector<Int>> lattice_coords(const Lattice& L,
                                                      std::vector<Int> v) {
  std::vector<Int> coords(L.rows.size(), 0);
  for (std::size_t i = 0; i < L.rows.size(); ++i) {
    const auto& row = L.rows[i];
    int p = 0;
    while (p < L.dim && row[p] == 0) ++p;
    if (p == L.dim) continue;
    if (v[p] % row[p] != 0) return std::nullopt;
    Int q = v[p] / row[p];
    coords[i] = q;
    for (int j = 0; j < L.dim; ++j) v[j] -= q * row[j];
  }
  for (const Int& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

/// Ordering of Z^k by a sequence of Q(sqrt2) functionals: the sign of
/// the first functional not vanishing on the element.
struct FlagOrder {
  int dim = 0;
  std::vector<QuadVec> functionals;

  FlagOrder() = default;
  FlagOrder(int k, std::vector<QuadVec> fs)
      : dim(k), functionals(std::move(fs)) {
    for (const auto& f : functionals)
      if (static_cast<int>(f.size()) != dim)
        throw usage_error("flag functional dimension mismatch");
  }

  static FlagOrder standard_lex(int k) {
    std::vector<QuadVec> fs;
    for (int i = 0; i < k; ++i) {
      QuadVec f(k, Quad(0));
      f[i] = Quad(1);
      fs.push_back(f);
    }
    return FlagOrder(k, std::move(fs));
  }

  json to_json() const {
    json fs = json::array();
    for (const auto& f : functionals) {
      json row = json::array();
      for (const Quad& q : f) row.push_back(quad_to_text(q));
      fs.push_back(row);
    }
    return json{{"kind", "zk-flag"}, {"dim", dim}, {"functionals", fs}};
  }

  static FlagOrder from_json(const json& j) {
    FlagOrder F;
    F.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("functionals")) {
      QuadVec f;
      for (const auto& q : row) f.push_back(quad_from_text(q.get<std::string>()));
      F.functionals.push_back(std::move(f));
    }
    return FlagOrder(F.dim, std::move(F.functionals));
  }
};

inline Sign classify_flag(const FlagOrder& F, const AbelianVector& g) {
  if (g.dim() != F.dim) throw family_error("flag dimension mismatch");
  for (const auto& f : F.functionals) {
    int s = sgn(dot(f, g));
    if (s > 0) return Sign::positive;
    if (s < 0) return Sign::negative;
  }
  if (!g.is_identity())
    throw usage_error("flag order is not total: all functionals vanish on " +
                      to_text(g));
  return Sign::identity;
}

/// The chain of kernel lattices cut out by successive functionals.
/// lattices[0] = Z^k; a valid (total) flag ends at rank 0.
struct FlagChain {
  std::vector<Lattice> lattices;
  // prefix[i]: number of leading functionals whose joint kernel is
  // lattices[i] (functionals identically zero on the current lattice
  // are absorbed without a chain step).
  std::vector<int> prefix;
};

inline FlagChain flag_chain(const FlagOrder& F) {
  FlagChain ch;
  Lattice L = Lattice::full(F.dim);
  ch.lattices.push_back(L);
  ch.prefix.push_back(0);
  for (std::size_t i = 0; i < F.functionals.size(); ++i) {
    if (L.rank() == 0) break;
    QuadVec u = restrict_functional(F.functionals[i], L.rows);
    bool zero = true;
    for (const Quad& q : u) zero = zero && q.is_zero();
    if (zero) {
      ch.prefix.back() = static_cast<int>(i) + 1;
      continue;
    }
    Mat K = quad_functional_kernel(u);
    Mat rows;
    for (const auto& kr : K) {
      std::vector<Int> w(F.dim, 0);
      for (std::size_t j = 0; j < kr.size(); ++j)
        for (int d = 0; d < F.dim; ++d) w[d] += kr[j] * L.rows[j][d];
      rows.push_back(std::move(w));
    }
    L = Lattice::from_generators(F.dim, rows);
    ch.lattices.push_back(L);
    ch.prefix.push_back(static_cast<int>(i) + 1);
  }
  return ch;
}

inline void validate_flag(const FlagOrder& F) {
  FlagChain ch = flag_chain(F);
  if (ch.lattices.back().rank() != 0)
    throw usage_error("flag order is not total: kernel chain stalls at rank " +
                      std::to_string(ch.lattices.back().rank()));
}

/// Smallest nontrivial convex subgroup: the penultimate lattice of the
/// kernel chain (Z^k itself when the first functional already has
/// trivial kernel, or when no functional cuts at all).
inline Lattice min_convex_subgroup(const FlagOrder& F) {
  FlagChain ch = flag_chain(F);
  if (ch.lattices.size() < 2) return ch.lattices[0];
  return ch.lattices[ch.lattices.size() - 2];
}

struct DiscreteResult {
  bool discrete = false;
  std::optional<AbelianVector> least;
};

/// Discrete iff the bottom convex subgroup has rank one; the least
/// positive element is its generator, oriented positive.
inline DiscreteResult is_discrete(const FlagOrder& F) {
  Lattice C = min_convex_subgroup(F);
  if (C.rank() != 1) return {false, std::nullopt};
  std::vector<Int> c = C.rows[0];
  for (const auto& f : F.functionals) {
    int s = sgn(dot(f, c));
    if (s == 0) continue;
    if (s < 0)
      for (auto& x : c) x = -x;
    return {true, from_ints(c)};
  }
  throw usage_error("flag order is not total");
}

namespace detail {

// Positive combination of two basis directions of C with functional
// value in (0, t), found by the subtractive Euclidean walk on the two
// (irrational-ratio) values.  Returns coordinates in C's basis.
inline std::vector<Int> euclid_small_positive(const QuadVec& u, int i, int j,
                                              const Quad& t, int rank) {
  auto combo = [&](const Int& ci, const Int& cj) {
    std::vector<Int> v(rank, 0);
    v[i] = ci;
    v[j] = cj;
    return v;
  };
  Quad a = u[i], b = u[j];
  Int ai = 1, aj = 0, bi = 0, bj = 1;
  if (sgn(a) < 0) { a = -a; ai = -1; }
  if (sgn(b) < 0) { b = -b; bj = -1; }
  for (int steps = 0; steps < 20000; ++steps) {
    if (sgn(b - a) > 0) {
      std::swap(a, b);
      std::swap(ai, bi);
      std::swap(aj, bj);
    }
    // now 0 < b <= a
    if (sgn(t - b) > 0) return combo(bi, bj);
    Int q = quad_floor(a / b);
    a = a - Quad(Rat(q), Rat(0)) * b;
    ai -= q * bi;
    aj -= q * bj;
    if (a.is_zero())
      throw std::logic_error("euclid walk hit zero on irrational ratio");
  }
  throw budget_error("euclid walk did not converge");
}

}  // namespace detail

/// Positive cone of a flag order, with the analytic extras the family
/// supports: a certified least element when discrete, and a density
/// hint (lattice point with smaller functional value) when dense.
inline Cone<AbelianVector> flag_cone(const FlagOrder& F) {
  validate_flag(F);
  Cone<AbelianVector> c;
  c.classify = [F](const AbelianVector& g) { return classify_flag(F, g); };
  c.descriptor = F.to_json();
  DiscreteResult d = is_discrete(F);
  if (d.discrete) {
    c.certified_least = d.least;
  } else {
    c.certified_dense = true;
    Lattice C = min_convex_subgroup(F);
    // first functional not vanishing on C, in C coordinates
    QuadVec u;
    for (const auto& f : F.functionals) {
      QuadVec r = restrict_functional(f, C.rows);
      bool zero = true;
      for (const Quad& q : r) zero = zero && q.is_zero();
      if (!zero) {
        u = r;
        break;
      }
    }
    c.density_hint = [F, C, u](const AbelianVector& g) -> std::optional<AbelianVector> {
      auto coords = lattice_coords(C, to_ints(g));
      if (!coords) {
        // anything positive inside the bottom convex subgroup is smaller
        std::vector<Int> b0 = C.rows[0];
        AbelianVector h = from_ints(b0);
        if (classify_flag(F, h) == Sign::negative) h = invert(h);
        return h;
      }
      Quad t = dot(u, *coords);
      if (sgn(t) <= 0) return std::nullopt;
      // pick two coordinates with irrational value ratio
      int r = static_cast<int>(u.size());
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          if (u[i].is_zero() || u[j].is_zero()) continue;
          if ((u[i] / u[j]).is_rational()) continue;
          auto cc = detail::euclid_small_positive(u, i, j, t, r);
          std::vector<Int> w(C.dim, 0);
          for (int s = 0; s < r; ++s)
            for (int dcol = 0; dcol < C.dim; ++dcol)
              w[dcol] += cc[s] * C.rows[s][dcol];
          return from_ints(w);
        }
      return std::nullopt;
    };
  }
  return c;
}

/// Rational approximation of a hyperplane normal, together with an
/// exact integer point on the rational hyperplane, built as
/// x = (m2 y_1, ..., m2 y_j, -m1 y_{j+1}, ..., -m1 y_k).
struct HyperplaneApprox {
  std::vector<Rat> w;
  AbelianVector x;
};

inline HyperplaneApprox rational_hyperplane_approx(const QuadVec& v,
                                                   const Rat& eps) {
  int k = static_cast<int>(v.size());
  if (k < 2) throw usage_error("need dimension >= 2");
  bool nonzero = false;
  for (const Quad& q : v) nonzero = nonzero || !q.is_zero();
  if (!nonzero || eps <= 0) throw usage_error("need nonzero normal, eps > 0");
  Rat sb2 = 0;
  for (const Quad& q : v) sb2 += q.b * q.b;
  for (int depth = 0; depth < 400; ++depth) {
    Rat c = root2_convergent(depth);
    // Convergent quality: |sqrt2 - p/q| < 1/q^2, so q^2 eps^2 > sum b_i^2
    // already guarantees ||v - w|| < eps; then verify exactly anyway.
    if (Rat(den(c) * den(c)) * eps * eps <= sb2) continue;
    std::vector<Rat> w(k);
    for (int i = 0; i < k; ++i) w[i] = v[i].a + v[i].b * c;
    // ||v - w||^2 = (sum b_i^2) * (sqrt2 - c)^2, compared exactly;
    // (sqrt2 - c)^2 = 2 + c^2 - 2c*sqrt2
    Quad gap = Quad(Rat(2) + c * c, -2 * c);
    Quad lhs = Quad(sb2, Rat(0)) * gap - Quad(eps * eps, Rat(0));
    if (sgn(lhs) >= 0) continue;  // not yet within eps
    // integer multipliers clearing denominators
    std::vector<Int> y(k);
    for (int i = 0; i < k; ++i) y[i] = den(w[i]);
    for (int j = 1; j < k; ++j) {
      Rat m1 = 0, m2 = 0;
      for (int i = 0; i < j; ++i) m1 += Rat(y[i]) * w[i];
      for (int i = j; i < k; ++i) m2 += Rat(y[i]) * w[i];
      if (m1 == 0 && m2 == 0) continue;
      Int M1 = num(m1), M2 = num(m2);  // both are integers by choice of y
      std::vector<Int> x(k);
      for (int i = 0; i < j; ++i) x[i] = M2 * y[i];
      for (int i = j; i < k; ++i) x[i] = -M1 * y[i];
      bool xz = true;
      for (const Int& xi : x) xz = xz && xi == 0;
      if (xz) continue;
      // exact postcondition w . x = 0
      Rat dotwx = 0;
      for (int i = 0; i < k; ++i) dotwx += w[i] * Rat(x[i]);
      if (dotwx != 0) throw std::logic_error("hyperplane point not on plane");
      return {w, from_ints(x)};
    }
    // degenerate at this depth; refine and retry
  }
  throw budget_error("rational_hyperplane_approx: no nondegenerate depth");
}

namespace detail {

// Unimodular integer matrix pair (W, Winv) adapted to a saturated
// lattice: first rank(L) columns of W span L.
inline std::pair<Mat, Mat> adapted_pair(const Lattice& L) {
  SmithResult S = smith_normal_form(mat_transpose(L.rows));
  return {S.Uinv, S.U};
}

// Extends a functional given in L-coordinates (values on the basis
// rows of L) to Z^k, vanishing on the chosen complement of L.
inline QuadVec extend_by_zero(const QuadVec& u, const Lattice& L) {
  auto [W, Winv] = adapted_pair(L);
  int k = L.dim, r = L.rank();
  // column j of W (j < r) equals some integer combination of L's basis
  // rows; express it to transport the functional values.
  QuadVec ext(k, Quad(0));
  // functional on Z^k: x -> u(coords of projection); coords of x in the
  // adapted basis are Winv * x, of which the first r entries are
  // L-adapted coordinates.  Convert u from L.rows-coordinates to
  // adapted-column coordinates first.
  QuadVec u_adapted(r, Quad(0));
  for (int j = 0; j < r; ++j) {
    std::vector<Int> col(k);
    for (int i = 0; i < k; ++i) col[i] = W[i][j];
    auto cc = lattice_coords(L, col);
    if (!cc) throw std::logic_error("adapted column outside lattice");
    for (int s = 0; s < r; ++s)
      u_adapted[j] = u_adapted[j] + u[s] * Quad(Rat((*cc)[s]), Rat(0));
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r; ++j)
      ext[i] = ext[i] + u_adapted[j] * Quad(Rat(Winv[j][i]), Rat(0));
  return ext;
}

inline bool quadvec_zero(const QuadVec& u) {
  for (const Quad& q : u)
    if (!q.is_zero()) return false;
  return true;
}

// First functional of F not identically zero on the lattice, restricted
// to its basis coordinates.
inline QuadVec first_functional_on(const FlagOrder& F, const Lattice& L) {
  for (const auto& f : F.functionals) {
    QuadVec u = restrict_functional(f, L.rows);
    if (!quadvec_zero(u)) return u;
  }
  throw std::logic_error("no functional alive on lattice");
}

}  // namespace detail

/// Replaces a dense flag by a discrete one keeping the finitely many
/// required elements positive: the functionals cutting down to the
/// bottom convex subgroup are kept, the (irrational) functional that
/// densely orders it is replaced by a rational convergent, and a full
/// lex tail makes the result total and discrete.
inline FlagOrder discrete_approximation(const FlagOrder& F,
                                        std::vector<AbelianVector> gs) {
  validate_flag(F);
  // drop scalar multiples (keep the first of each ray)
  std::vector<AbelianVector> kept;
  for (const auto& g : gs) {
    if (classify_flag(F, g) != Sign::positive)
      throw usage_error("discrete_approximation: elements must be positive");
    bool dup = false;
    for (const auto& h : kept) {
      bool proportional = true;
      for (int i = 0; i < F.dim && proportional; ++i)
        for (int j = i + 1; j < F.dim && proportional; ++j)
          proportional = (Int(g.coords[i]) * h.coords[j] ==
                          Int(g.coords[j]) * h.coords[i]);
      dup = dup || proportional;
    }
    if (!dup) kept.push_back(g);
  }
  if (kept.empty() && gs.empty()) return FlagOrder::standard_lex(F.dim);

  if (is_discrete(F).discrete) return F;

  FlagChain ch = flag_chain(F);
  Lattice C = ch.lattices[ch.lattices.size() - 2];  // rank >= 2, dense bottom
  int s = ch.prefix[ch.lattices.size() - 2];
  QuadVec u = detail::first_functional_on(F, C);

  // inside elements in C coordinates
  std::vector<std::vector<Int>> inside;
  for (const auto& g : kept)
    if (auto cc = lattice_coords(C, to_ints(g))) inside.push_back(*cc);

  int r = C.rank();
  for (int depth = 1; depth < 400; ++depth) {
    Rat c = root2_convergent(depth);
    QuadVec w(r);
    bool wz = true;
    for (int i = 0; i < r; ++i) {
      w[i] = Quad(u[i].a + u[i].b * c, Rat(0));
      wz = wz && w[i].is_zero();
    }
    if (wz) continue;
    bool ok = true;
    for (const auto& y : inside) ok = ok && sgn(dot(w, y)) > 0;
    if (!ok) continue;

    std::vector<QuadVec> fs(F.functionals.begin(), F.functionals.begin() + s);
    fs.push_back(detail::extend_by_zero(w, C));
    for (const auto& f : FlagOrder::standard_lex(F.dim).functionals)
      fs.push_back(f);
    FlagOrder out(F.dim, std::move(fs));
    validate_flag(out);
    if (!is_discrete(out).discrete)
      throw std::logic_error("discrete_approximation produced a dense flag");
    for (const auto& g : gs)
      if (classify_flag(out, g) != Sign::positive)
        throw std::logic_error("discrete_approximation lost a positive");
    return out;
  }
  throw budget_error("discrete_approximation: convergent search exhausted");
}

/// Replaces a discrete flag by a dense one keeping the required
/// elements positive, by tilting the functionals at the bottom convex
/// jump with a small irrational perturbation.
inline FlagOrder dense_approximation(const FlagOrder& F,
                                     const std::vector<AbelianVector>& gs) {
  validate_flag(F);
  if (F.dim < 2) throw usage_error("no dense order on Z");
  for (const auto& g : gs)
    if (classify_flag(F, g) != Sign::positive)
      throw usage_error("dense_approximation: elements must be positive");
  if (!is_discrete(F).discrete) return F;

  FlagChain ch = flag_chain(F);
  // bottom C = <c> has rank 1; L is the convex subgroup just above it
  Lattice C = ch.lattices[ch.lattices.size() - 2];
  Lattice L = ch.lattices[ch.lattices.size() - 3];
  int s = ch.prefix[ch.lattices.size() - 3];
  QuadVec u = detail::first_functional_on(F, L);  // kernel on L is C
  int r = L.rank();

  auto c_in_L = lattice_coords(L, C.rows[0]);
  if (!c_in_L) throw std::logic_error("bottom generator outside its jump");
  std::vector<Int> yc = *c_in_L;
  {  // orient yc positive (its generator may be the negative one)
    AbelianVector cg = from_ints(C.rows[0]);
    if (classify_flag(F, cg) == Sign::negative)
      for (auto& x : yc) x = -x;
  }

  std::vector<std::vector<Int>> inside;  // g's lying in L, L-coordinates
  for (const auto& g : gs)
    if (auto cc = lattice_coords(L, to_ints(g))) inside.push_back(*cc);

  // For r == 3 first cut L down to a rank-2 sublattice M containing c,
  // using a rational combination of u's two parts; for r == 2, M = L.
  for (int depth = 1; depth < 400; ++depth) {
    Lattice M = L;
    QuadVec uM = u;
    std::vector<QuadVec> mids;  // functionals between the prefix and the tilt
    if (r >= 3) {
      Rat t = root2_convergent(depth);
      QuadVec phi(r);
      bool pz = true;
      for (int i = 0; i < r; ++i) {
        phi[i] = Quad(u[i].a + u[i].b * t, Rat(0));
        pz = pz && phi[i].is_zero();
      }
      if (pz) continue;
      bool ok = true;
      for (const auto& y : inside) {
        int sg = sgn(dot(phi, y));
        int su = sgn(dot(u, y));
        ok = ok && (su == 0 ? sg == 0 : sg > 0);
      }
      if (!ok) continue;
      // M = kernel of phi inside L
      Mat K = quad_functional_kernel(phi);
      Mat rows;
      for (const auto& kr : K) {
        std::vector<Int> w(F.dim, 0);
        for (std::size_t j = 0; j < kr.size(); ++j)
          for (int d = 0; d < F.dim; ++d) w[d] += kr[j] * L.rows[j][d];
        rows.push_back(std::move(w));
      }
      M = Lattice::from_generators(F.dim, rows);
      if (M.rank() != 2 || !M.contains(C.rows[0])) continue;
      mids.push_back(detail::extend_by_zero(phi, L));
      uM = restrict_functional(detail::extend_by_zero(u, L), M.rows);
    }
    // coordinates of c in M
    auto ycM = lattice_coords(M, C.rows[0]);
    if (!ycM) continue;
    std::vector<Int> ycm = *ycM;
    {
      AbelianVector cg = from_ints(C.rows[0]);
      if (classify_flag(F, cg) == Sign::negative)
        for (auto& x : ycm) x = -x;
    }
    std::vector<std::vector<Int>> insideM;
    for (const auto& g : gs)
      if (auto cc = lattice_coords(M, to_ints(g))) insideM.push_back(*cc);

    // tilt: add delta * sqrt2 * (yc as functional); positive on c
    for (int e = 1; e < 80; ++e) {
      Rat delta(1, Int(1) << e);
      QuadVec ut(2);
      for (int i = 0; i < 2; ++i)
        ut[i] = uM[i] + Quad(Rat(0), delta * Rat(ycm[i]));
      if (!quad_functional_kernel(ut).empty()) continue;
      bool ok = sgn(dot(ut, ycm)) > 0;
      for (const auto& y : insideM) {
        int su = sgn(dot(uM, y));
        if (su > 0) ok = ok && sgn(dot(ut, y)) > 0;
        // su == 0 means y is a multiple of c, already handled
      }
      if (!ok) continue;

      std::vector<QuadVec> fs(F.functionals.begin(),
                              F.functionals.begin() + s);
      for (auto& m : mids) fs.push_back(m);
      fs.push_back(detail::extend_by_zero(ut, M));
      FlagOrder out(F.dim, std::move(fs));
      validate_flag(out);
      if (is_discrete(out).discrete)
        throw std::logic_error("dense_approximation produced a discrete flag");
      for (const auto& g : gs)
        if (classify_flag(out, g) != Sign::positive)
          throw std::logic_error("dense_approximation lost a positive");
      return out;
    }
  }
  throw budget_error("dense_approximation: perturbation search exhausted");
}

/// Flag order whose smallest nontrivial convex subgroup has rank one,
/// containing the given positive elements: discrete order on their
/// span, extended to the isolator by taking roots, lex on a complement.
inline FlagOrder rank_one_convex_construction(
    const FlagOrder& F, const std::vector<AbelianVector>& gs) {
  validate_flag(F);
  if (gs.empty()) throw usage_error("rank_one_convex_construction: empty list");
  for (const auto& g : gs)
    if (classify_flag(F, g) != Sign::positive)
      throw usage_error("rank_one_convex_construction: elements must be positive");

  Mat rows;
  for (const auto& g : gs) rows.push_back(to_ints(g));
  Lattice H = Lattice::from_generators(F.dim, rows);
  int r = H.rank();

  // restriction of F to H, as a flag in H coordinates
  std::vector<QuadVec> fh;
  for (const auto& f : F.functionals) {
    QuadVec u = restrict_functional(f, H.rows);
    if (!detail::quadvec_zero(u)) fh.push_back(u);
  }
  FlagOrder FH(r, std::move(fh));
  std::vector<AbelianVector> gH;
  for (const auto& g : gs) {
    auto cc = lattice_coords(H, to_ints(g));
    if (!cc) throw std::logic_error("generator outside its own span");
    gH.push_back(from_ints(*cc));
  }
  FlagOrder QH = discrete_approximation(FH, gH);

  Lattice I = saturate(H);
  // transport QH from H coordinates to I coordinates: z in I has
  // m z in H; root-taking means the functional values just scale.
  // Express H's basis rows in I coordinates (integral), then compose.
  Mat X;  // r x r, H basis in I coords
  for (const auto& hrow : H.rows) {
    auto cc = lattice_coords(I, hrow);
    if (!cc) throw std::logic_error("H outside its saturation");
    X.push_back(*cc);
  }
  // functional u on H coords corresponds to u' on I coords with
  // u'(z) = u(coords_H(m z))/m; it suffices that signs agree, and
  // u' = u o X^{-1}.  Work with the adjugate to stay exact.
  // X is r x r integral, invertible over Q.
  auto rat_inverse = [](const Mat& A) {
    int n = static_cast<int>(A.size());
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M[i][j] = Rat(A[i][j]);
      M[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
      int p = c;
      while (p < n && M[p][c] == 0) ++p;
      if (p == n) throw std::logic_error("singular matrix");
      std::swap(M[c], M[p]);
      Rat d = M[c][c];
      for (int j = 0; j < 2 * n; ++j) M[c][j] /= d;
      for (int i = 0; i < n; ++i) {
        if (i == c || M[i][c] == 0) continue;
        Rat f = M[i][c];
        for (int j = 0; j < 2 * n; ++j) M[i][j] -= f * M[c][j];
      }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] = M[i][n + j];
    return inv;
  };
  auto Xinv = rat_inverse(X);
  std::vector<QuadVec> qi;  // QH functionals in I coordinates
  for (const auto& u : QH.functionals) {
    QuadVec v(r, Quad(0));
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i)
        v[j] = v[j] + u[i] * Quad(Xinv[i][j], Rat(0));
    qi.push_back(v);
  }

  // quotient Z^k / I ordered lexicographically via the adapted dual
  auto [W, Winv] = detail::adapted_pair(I);
  std::vector<QuadVec> fs;
  for (int row = r; row < F.dim; ++row) {
    QuadVec f(F.dim);
    for (int i = 0; i < F.dim; ++i) f[i] = Quad(Rat(Winv[row][i]), Rat(0));
    fs.push_back(f);
  }
  for (const auto& u : qi) fs.push_back(detail::extend_by_zero(u, I));
  FlagOrder out(F.dim, std::move(fs));
  validate_flag(out);
  if (min_convex_subgroup(out).rank() != 1)
    throw std::logic_error("rank_one_convex_construction: bottom not rank 1");
  for (const auto& g : gs)
    if (classify_flag(out, g) != Sign::positive)
      throw std::logic_error("rank_one_convex_construction lost a positive");
  return out;
}

}  // namespace ordspace
