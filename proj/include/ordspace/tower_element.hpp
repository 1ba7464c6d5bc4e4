#pragma once

#include <string>
#include <vector>

#include "ordspace/errors.hpp"

namespace ordspace {

/// Element of the rank-n tower group in normal form x1^{a1} ... xn^{an},
/// where x_i x_{i-1} x_i^{-1} = x_{i-1}^{-1} and x_i commutes with x_j
/// for |i-j| >= 2.  Rank 2 is the Klein bottle group (y = x1, x = x2).
struct TowerElement {
  std::vector<long long> exponents;

  TowerElement() = default;
  explicit TowerElement(std::vector<long long> e) : exponents(std::move(e)) {}
  static TowerElement identity(int n) {
    return TowerElement(std::vector<long long>(n, 0));
  }
  static TowerElement gen(int n, int i, int sign = 1) {
    TowerElement t = identity(n);
    t.exponents[i - 1] = sign;
    return t;
  }

  int rank() const { return static_cast<int>(exponents.size()); }
  bool is_identity() const {
    for (long long e : exponents)
      if (e != 0) return false;
    return true;
  }

  friend bool operator==(const TowerElement& a, const TowerElement& b) {
    return a.exponents == b.exponents;
  }
  friend bool operator<(const TowerElement& a, const TowerElement& b) {
    return a.exponents < b.exponents;
  }
};

inline TowerElement multiply(const TowerElement& a, const TowerElement& b) {
  if (a.rank() != b.rank()) throw family_error("tower rank mismatch");
  int n = a.rank();
  TowerElement c = TowerElement::identity(n);
  for (int i = 0; i < n; ++i) {
    // x_i^{b_i} passes only x_{i+1}^{a_{i+1}} on its way left,
    // flipping sign once per crossing.
    long long twist = (i + 1 < n && (a.exponents[i + 1] & 1)) ? -1 : 1;
    c.exponents[i] = a.exponents[i] + twist * b.exponents[i];
  }
  return c;
}

inline TowerElement invert(const TowerElement& a) {
  int n = a.rank();
  TowerElement b = TowerElement::identity(n);
  for (int i = 0; i < n; ++i) {
    long long twist = (i + 1 < n && (a.exponents[i + 1] & 1)) ? -1 : 1;
    b.exponents[i] = -a.exponents[i] * twist;
  }
  return b;
}

inline bool is_identity(const TowerElement& a) { return a.is_identity(); }

inline std::string to_text(const TowerElement& a) {
  std::string s = "(";
  for (int i = 0; i < a.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(a.exponents[i]);
  }
  return s + ")";
}

inline TowerElement tower_from_text(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw usage_error("malformed tower element: " + s);
  TowerElement t;
  std::string body = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok =
        body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw usage_error("malformed tower element: " + s);
    t.exponents.push_back(std::atoll(tok.c_str()));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return t;
}

inline TowerElement commutator(const TowerElement& a, const TowerElement& b) {
  return multiply(multiply(invert(a), invert(b)), multiply(a, b));
}

}  // namespace ordspace
