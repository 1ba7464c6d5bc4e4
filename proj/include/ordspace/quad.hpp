#pragma once

#include <string>
#include <vector>

#include "ordspace/rational.hpp"

namespace ordspace {

/// Element a + b*sqrt(2) of the quadratic field Q(sqrt 2).
/// All arithmetic and sign decisions are exact.
struct Quad {
  Rat a{0};
  Rat b{0};

  Quad() = default;
  Quad(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}
  explicit Quad(const Rat& r) : a(r) {}
  explicit Quad(int n) : a(n) {}

  static Quad root2() { return Quad(Rat(0), Rat(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  friend Quad operator+(const Quad& x, const Quad& y) {
    return Quad(x.a + y.a, x.b + y.b);
  }
  friend Quad operator-(const Quad& x, const Quad& y) {
    return Quad(x.a - y.a, x.b - y.b);
  }
  friend Quad operator-(const Quad& x) { return Quad(-x.a, -x.b); }
  friend Quad operator*(const Quad& x, const Quad& y) {
    return Quad(x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a);
  }
  friend Quad operator/(const Quad& x, const Quad& y) {
    // 1/(a+b*r2) = (a-b*r2)/(a^2-2b^2)
    Rat n = y.a * y.a - 2 * y.b * y.b;
    Quad conj(y.a / n, -y.b / n);
    return x * conj;
  }
  friend bool operator==(const Quad& x, const Quad& y) {
    return x.a == y.a && x.b == y.b;
  }
};

inline int sgn(const Quad& q) {
  int sa = sgn(q.a), sb = sgn(q.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: a + b*sqrt2 has the sign of a iff a^2 > 2 b^2.
  Rat d = q.a * q.a - 2 * q.b * q.b;
  return d == 0 ? 0 : (d > 0 ? sa : sb);
}

inline bool operator<(const Quad& x, const Quad& y) { return sgn(x - y) < 0; }
inline bool operator>(const Quad& x, const Quad& y) { return sgn(x - y) > 0; }

inline Quad abs(const Quad& q) { return sgn(q) < 0 ? -q : q; }

/// Exact floor of a + b*sqrt(2), via refinement of rational bounds on
/// sqrt(2) from its continued fraction convergents.
inline Int quad_floor(const Quad& q) {
  if (q.b == 0) return rat_floor(q.a);
  // Convergents p/q of sqrt2 alternate below/above: 1/1, 3/2, 7/5, 17/12, ...
  Rat lo(1), hi(3, 2);
  Int p = 3, qq = 2;
  bool below = true;  // the next convergent lies below sqrt2
  for (;;) {
    Rat vlo = q.a + q.b * (sgn(q.b) > 0 ? lo : hi);
    Rat vhi = q.a + q.b * (sgn(q.b) > 0 ? hi : lo);
    Int fl = rat_floor(vlo), fh = rat_floor(vhi);
    if (fl == fh) return fl;
    Int np = p + 2 * qq, nq = p + qq;
    p = np;
    qq = nq;
    (below ? lo : hi) = Rat(p, qq);
    below = !below;
  }
}

/// Successive continued-fraction convergents p/q of sqrt(2).
/// nth_convergent(0) = 1, then 3/2, 7/5, 17/12, 41/29, ...
inline Rat root2_convergent(int n) {
  Int p = 1, q = 1;
  for (int i = 0; i < n; ++i) {
    Int np = p + 2 * q, nq = p + q;
    p = np;
    q = nq;
  }
  return Rat(p, q);
}

/// Serialized form: "a" for rational values, "a+b*r2" otherwise
/// (with b carrying its own sign, e.g. "1/2+-3/4*r2").
inline std::string quad_to_text(const Quad& q) {
  if (q.b == 0) return rat_to_text(q.a);
  return rat_to_text(q.a) + "+" + rat_to_text(q.b) + "*r2";
}

inline Quad quad_from_text(const std::string& s) {
  auto star = s.rfind("*r2");
  if (star == std::string::npos) {
    if (s == "r2") return Quad::root2();
    return Quad(rat_from_text(s));
  }
  if (star + 3 != s.size()) throw usage_error("malformed quad: " + s);
  // Split "a+b" at the last '+' that is not a leading sign of b.
  std::string head = s.substr(0, star);
  auto plus = head.rfind('+');
  if (plus == std::string::npos || plus == 0)
    throw usage_error("malformed quad: " + s);
  return Quad(rat_from_text(head.substr(0, plus)),
              rat_from_text(head.substr(plus + 1)));
}

}  // namespace ordspace
