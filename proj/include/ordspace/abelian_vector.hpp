#pragma once

#include <string>
#include <vector>

#include "ordspace/errors.hpp"

namespace ordspace {

/// Element of Z^k, componentwise arithmetic.
struct AbelianVector {
  std::vector<long long> coords;

  AbelianVector() = default;
  explicit AbelianVector(std::vector<long long> c) : coords(std::move(c)) {}
  static AbelianVector identity(int k) {
    return AbelianVector(std::vector<long long>(k, 0));
  }
  static AbelianVector unit(int k, int i) {
    AbelianVector v = identity(k);
    v.coords[i] = 1;
    return v;
  }

  int dim() const { return static_cast<int>(coords.size()); }
  bool is_identity() const {
    for (long long c : coords)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const AbelianVector& a, const AbelianVector& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const AbelianVector& a, const AbelianVector& b) {
    return a.coords < b.coords;
  }
};

inline AbelianVector multiply(const AbelianVector& a, const AbelianVector& b) {
  if (a.dim() != b.dim()) throw family_error("abelian dimension mismatch");
  AbelianVector r = a;
  for (int i = 0; i < b.dim(); ++i) r.coords[i] += b.coords[i];
  return r;
}

inline AbelianVector invert(const AbelianVector& a) {
  AbelianVector r = a;
  for (auto& c : r.coords) c = -c;
  return r;
}

inline bool is_identity(const AbelianVector& a) { return a.is_identity(); }

inline std::string to_text(const AbelianVector& a) {
  std::string s = "(";
  for (int i = 0; i < a.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(a.coords[i]);
  }
  return s + ")";
}

/// Parses `(1,-2)`.
inline AbelianVector abelian_from_text(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw usage_error("malformed vector: " + s);
  AbelianVector v;
  std::string body = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok =
        body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw usage_error("malformed vector: " + s);
    v.coords.push_back(std::atoll(tok.c_str()));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return v;
}

inline AbelianVector commutator(const AbelianVector& a, const AbelianVector& b) {
  if (a.dim() != b.dim()) throw family_error("abelian dimension mismatch");
  return AbelianVector::identity(a.dim());
}

}  // namespace ordspace
