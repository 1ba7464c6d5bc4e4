#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordspace/ball.hpp"
#include "ordspace/errors.hpp"

namespace ordspace {

using json = nlohmann::json;

enum class Sign { negative = -1, identity = 0, positive = 1 };

inline Sign opposite(Sign s) {
  return static_cast<Sign>(-static_cast<int>(s));
}
inline const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::identity: return "identity";
    default: return "positive";
  }
}

enum class Ordering { less = -1, equal = 0, greater = 1 };

/// Total decidable classifier of a positive cone.  The classifier is
/// the ground truth; `descriptor` is its serializable name.  Analytic
/// knowledge (a certified global least positive element, certified
/// density, a witness-producing density hint) rides along when the
/// family provides it; ball checks never assume any of it.
template <class G>
struct Cone {
  std::function<Sign(const G&)> classify;
  json descriptor;

  std::optional<G> certified_least;  // global least positive, proved per family
  bool certified_dense = false;
  // Given positive g, produce positive h with h < g (already verified
  // by the producer; density_witness re-verifies before returning it).
  std::function<std::optional<G>(const G&)> density_hint;
  // Optional fast path for compare(); must agree with classify.
  std::function<Ordering(const G&, const G&)> compare_hint;
};

template <class G>
struct SubgroupOracle {
  std::function<bool(const G&)> member;
  json descriptor;
};

template <class G>
SubgroupOracle<G> whole_group() {
  return {[](const G&) { return true; }, json{{"kind", "whole"}}};
}

/// Transcript of a property verified or refuted on a finite ball.
/// A refutation carries a witness tuple re-checkable with one oracle
/// call per listed element.
template <class G>
struct BallCertificate {
  std::string property;
  int radius = 0;
  bool verified = false;
  std::vector<G> witness;
  std::string detail;

  json to_json() const {
    json j{{"property", property},
           {"radius", radius},
           {"verdict", verified ? "verified-on-ball" : "refuted"}};
    if (!witness.empty()) {
      json w = json::array();
      for (const G& g : witness) w.push_back(to_text(g));
      j["witness"] = w;
    }
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

template <class G>
Ordering compare(const Cone<G>& P, const G& g, const G& h) {
  if (P.compare_hint) return P.compare_hint(g, h);
  switch (P.classify(multiply(invert(g), h))) {
    case Sign::positive: return Ordering::less;
    case Sign::negative: return Ordering::greater;
    default: return Ordering::equal;
  }
}

/// Verifies trichotomy on the ball and P.P closure for all pairs of
/// positive ball elements (their products lie in the 2k-ball by
/// construction).
template <class G>
BallCertificate<G> check_axioms_on_ball(const Cone<G>& P, const Ball<G>& B) {
  BallCertificate<G> cert;
  cert.property = "axioms";
  cert.radius = B.radius;
  std::vector<G> positives;
  for (const G& g : B.members) {
    Sign s = P.classify(g);
    if (is_identity(g)) {
      if (s != Sign::identity) {
        cert.witness = {g};
        cert.detail = "identity not classified as identity";
        return cert;
      }
      continue;
    }
    if (s == Sign::identity) {
      cert.witness = {g};
      cert.detail = "nonidentity element classified as identity";
      return cert;
    }
    G gi = invert(g);
    if (P.classify(gi) != opposite(s)) {
      cert.witness = {g, gi};
      cert.detail = "trichotomy: g and g^-1 not classified oppositely";
      return cert;
    }
    if (s == Sign::positive) positives.push_back(g);
  }
  for (const G& g : positives)
    for (const G& h : positives) {
      G p = multiply(g, h);
      if (P.classify(p) != Sign::positive) {
        cert.witness = {g, h};
        cert.detail = "closure: product of positives not positive";
        return cert;
      }
    }
  cert.verified = true;
  return cert;
}

/// Conradian condition (3a): g, h positive implies g^-1 h g^2 positive.
template <class G>
BallCertificate<G> check_conradian_on_ball(const Cone<G>& P, const Ball<G>& B) {
  BallCertificate<G> cert;
  cert.property = "conradian";
  cert.radius = B.radius;
  std::vector<G> positives;
  for (const G& g : B.members)
    if (P.classify(g) == Sign::positive) positives.push_back(g);
  for (const G& g : positives)
    for (const G& h : positives) {
      G v = multiply(multiply(invert(g), h), multiply(g, g));
      if (P.classify(v) != Sign::positive) {
        cert.witness = {g, h};
        cert.detail = "g^-1 h g^2 not positive";
        return cert;
      }
    }
  cert.verified = true;
  return cert;
}

/// Bi-invariance condition (3b): g P g^-1 inside P, for ball elements.
template <class G>
BallCertificate<G> check_biinvariance_on_ball(const Cone<G>& P,
                                              const Ball<G>& B) {
  BallCertificate<G> cert;
  cert.property = "biinvariance";
  cert.radius = B.radius;
  for (const G& g : B.members)
    for (const G& p : B.members) {
      if (P.classify(p) != Sign::positive) continue;
      G v = multiply(multiply(g, p), invert(g));
      if (P.classify(v) != Sign::positive) {
        cert.witness = {g, p};
        cert.detail = "conjugate of a positive element not positive";
        return cert;
      }
    }
  cert.verified = true;
  return cert;
}

/// Convexity of C: g < f < h with g, h in C forces f in C.  It is
/// enough to test f against the C-minimum and C-maximum of the ball.
template <class G>
BallCertificate<G> check_convex_on_ball(const Cone<G>& P,
                                        const SubgroupOracle<G>& C,
                                        const Ball<G>& B) {
  BallCertificate<G> cert;
  cert.property = "convex";
  cert.radius = B.radius;
  std::optional<G> cmin, cmax;
  for (const G& g : B.members) {
    if (!C.member(g)) continue;
    if (!cmin || compare(P, g, *cmin) == Ordering::less) cmin = g;
    if (!cmax || compare(P, *cmax, g) == Ordering::less) cmax = g;
  }
  if (!cmin) {
    cert.verified = true;
    cert.detail = "no subgroup members in ball";
    return cert;
  }
  for (const G& f : B.members) {
    if (C.member(f)) continue;
    if (compare(P, *cmin, f) == Ordering::less &&
        compare(P, f, *cmax) == Ordering::less) {
      cert.witness = {*cmin, f, *cmax};
      cert.detail = "element strictly between subgroup members is outside";
      return cert;
    }
  }
  cert.verified = true;
  return cert;
}

/// Convex-subgroup surgery: replace the cone on C by Q, keep P outside.
template <class G>
Cone<G> surgery(const Cone<G>& P, const SubgroupOracle<G>& C,
                const Cone<G>& Q) {
  Cone<G> r;
  r.classify = [P, C, Q](const G& g) {
    return C.member(g) ? Q.classify(g) : P.classify(g);
  };
  r.descriptor = json{{"kind", "surgery"},
                      {"base", P.descriptor},
                      {"convex", C.descriptor},
                      {"replacement", Q.descriptor}};
  return r;
}

/// Lexicographic cone from a short exact sequence: classify by the
/// quotient unless the image is trivial, then by the kernel cone.
template <class G, class Q>
Cone<G> lex_extension(const Cone<G>& kernel_cone, const Cone<Q>& quotient_cone,
                      std::function<Q(const G&)> project,
                      json maps_descriptor = json::object()) {
  Cone<G> r;
  r.classify = [kernel_cone, quotient_cone, project](const G& g) {
    Sign s = quotient_cone.classify(project(g));
    if (s != Sign::identity) return s;
    return kernel_cone.classify(g);
  };
  r.descriptor = json{{"kind", "lex-ses"},
                      {"kernel", kernel_cone.descriptor},
                      {"quotient", quotient_cone.descriptor},
                      {"maps", maps_descriptor}};
  return r;
}

template <class G>
struct LeastPositiveResult {
  std::optional<G> element;
  bool certified_global = false;
  BallCertificate<G> certificate;
};

/// Minimum of P intersected with the ball; certified global exactly
/// when the cone carries an analytic least element and it coincides.
template <class G>
LeastPositiveResult<G> least_positive_on_ball(const Cone<G>& P,
                                              const Ball<G>& B) {
  LeastPositiveResult<G> r;
  r.certificate.property = "least-positive";
  r.certificate.radius = B.radius;
  for (const G& g : B.members) {
    if (P.classify(g) != Sign::positive) continue;
    if (!r.element || compare(P, g, *r.element) == Ordering::less)
      r.element = g;
  }
  if (r.element) {
    r.certificate.verified = true;
    r.certificate.witness = {*r.element};
    if (P.certified_least && *P.certified_least == *r.element) {
      r.certified_global = true;
      r.certificate.detail = "ball minimum matches certified global minimum";
    } else {
      r.certificate.detail = "ball minimum only";
    }
  } else {
    r.certificate.detail = "no positive elements in ball";
  }
  return r;
}

/// Searches for positive h with 1 < h < g.  A family-provided hint is
/// consulted first and re-verified; otherwise the supplied search ball
/// is scanned.  Absence is never a proof of discreteness.
template <class G>
std::optional<G> density_witness(const Cone<G>& P, const G& g,
                                 const Ball<G>& search) {
  if (P.classify(g) != Sign::positive)
    throw usage_error("density_witness: g must be positive");
  if (P.density_hint) {
    if (auto h = P.density_hint(g)) {
      if (P.classify(*h) == Sign::positive &&
          compare(P, *h, g) == Ordering::less)
        return h;
    }
  }
  std::optional<G> best;
  for (const G& h : search.members) {
    if (P.classify(h) != Sign::positive) continue;
    if (compare(P, h, g) == Ordering::less &&
        (!best || compare(P, h, *best) == Ordering::less))
      best = h;
  }
  return best;
}

}  // namespace ordspace
