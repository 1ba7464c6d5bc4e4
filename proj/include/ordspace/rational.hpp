#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

#include "ordspace/errors.hpp"

namespace ordspace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sgn(const Int& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }
inline int sgn(const Rat& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(num(r), den(r)); }

/// Prints `p` or `p/q`, matching the serialized form used throughout.
inline std::string rat_to_text(const Rat& r) {
  std::ostringstream os;
  os << num(r);
  if (den(r) != 1) os << '/' << den(r);
  return os.str();
}

inline Rat rat_from_text(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw usage_error("rational with zero denominator: " + s);
    return Rat(p, q);
  } catch (const std::exception&) {
    throw usage_error("malformed rational: " + s);
  }
}

}  // namespace ordspace
