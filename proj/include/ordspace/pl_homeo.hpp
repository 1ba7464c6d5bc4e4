#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "ordspace/rational_enumeration.hpp"

namespace ordspace {

/// Increasing piecewise-linear homeomorphism of the line with rational
/// breakpoints and affine tails.  Kept in a canonical form (no
/// redundant breakpoints; pure affine maps anchored at x = 0; the
/// identity has no breakpoints at all), so equality is structural.
struct PLHomeo {
  std::vector<std::pair<Rat, Rat>> pts;  // (x, f(x)), x and y increasing
  Rat sl = 1, sr = 1;                    // tail slopes, both > 0

  static PLHomeo identity() { return PLHomeo{}; }

  bool is_identity() const { return pts.empty(); }

  Rat operator()(const Rat& x) const {
    if (pts.empty()) return x;
    if (x <= pts.front().first)
      return pts.front().second + sl * (x - pts.front().first);
    if (x >= pts.back().first)
      return pts.back().second + sr * (x - pts.back().first);
    std::size_t i = 0;
    while (pts[i + 1].first < x) ++i;
    const auto& [a, fa] = pts[i];
    const auto& [b, fb] = pts[i + 1];
    return fa + (fb - fa) * (x - a) / (b - a);
  }

  /// Preimage under the map (total since slopes are positive).
  Rat inverse_at(const Rat& y) const {
    if (pts.empty()) return y;
    if (y <= pts.front().second)
      return pts.front().first + (y - pts.front().second) / sl;
    if (y >= pts.back().second)
      return pts.back().first + (y - pts.back().second) / sr;
    std::size_t i = 0;
    while (pts[i + 1].second < y) ++i;
    const auto& [a, fa] = pts[i];
    const auto& [b, fb] = pts[i + 1];
    return a + (b - a) * (y - fa) / (fb - fa);
  }

  void normalize() {
    // drop interior points where the two adjacent slopes agree, and
    // endpoints absorbed by their tail line
    bool changed = true;
    while (changed && !pts.empty()) {
      changed = false;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Rat before = i == 0 ? sl
                            : (pts[i].second - pts[i - 1].second) /
                                  (pts[i].first - pts[i - 1].first);
        Rat after = i + 1 == pts.size()
                        ? sr
                        : (pts[i + 1].second - pts[i].second) /
                              (pts[i + 1].first - pts[i].first);
        if (before == after && pts.size() > 1) {
          pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
    if (pts.size() == 1 && sl == sr) {
      // globally affine: anchor at x = 0, or erase if it is the identity
      Rat at0 = pts[0].second - sl * pts[0].first;
      if (sl == 1 && at0 == 0) {
        pts.clear();
      } else {
        pts[0] = {Rat(0), at0};
      }
    }
    if (pts.empty()) sl = sr = 1;
  }

  friend bool operator==(const PLHomeo& a, const PLHomeo& b) {
    return a.pts == b.pts && a.sl == b.sl && a.sr == b.sr;
  }
};

inline PLHomeo pl_from_points(std::vector<std::pair<Rat, Rat>> pts,
                              Rat sl = Rat(1), Rat sr = Rat(1)) {
  if (sl <= 0 || sr <= 0) throw usage_error("tail slopes must be positive");
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].first == pts[i - 1].first)
      throw usage_error("duplicate breakpoint abscissa");
    if (pts[i].second <= pts[i - 1].second)
      throw usage_error("breakpoints must be increasing in both coordinates");
  }
  PLHomeo f;
  f.pts = std::move(pts);
  f.sl = sl;
  f.sr = sr;
  f.normalize();
  return f;
}

inline PLHomeo pl_invert(const PLHomeo& f) {
  PLHomeo g;
  for (const auto& [x, y] : f.pts) g.pts.emplace_back(y, x);
  g.sl = 1 / f.sl;
  g.sr = 1 / f.sr;
  g.normalize();
  return g;
}

/// f after g (x -> f(g(x))).
inline PLHomeo pl_compose(const PLHomeo& f, const PLHomeo& g) {
  std::vector<Rat> xs;
  for (const auto& [x, y] : g.pts) xs.push_back(x);
  for (const auto& [x, y] : f.pts) xs.push_back(g.inverse_at(x));
  if (xs.empty()) xs.push_back(Rat(0));  // both affine: any anchor works
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  PLHomeo h;
  for (const Rat& x : xs) h.pts.emplace_back(x, f(g(x)));
  h.sl = f.sl * g.sl;
  h.sr = f.sr * g.sr;
  h.normalize();
  return h;
}

inline PLHomeo pl_multiply(const PLHomeo& a, const PLHomeo& b) {
  return pl_compose(a, b);
}

/// The earliest rational (in the fixed enumeration) on which f and g
/// disagree, or nullopt when the maps are equal.  The difference f - g
/// is piecewise affine: subdividing at breakpoints and at the roots of
/// each affine piece leaves regions of constant sign, and the simplest
/// rational of each nonzero region is a candidate.
inline std::optional<Rat> pl_first_difference(const PLHomeo& f,
                                              const PLHomeo& g) {
  auto h = [&](const Rat& x) { return f(x) - g(x); };
  std::vector<Rat> cs;
  for (const auto& [x, y] : f.pts) cs.push_back(x);
  for (const auto& [x, y] : g.pts) cs.push_back(x);
  if (cs.empty()) cs.push_back(Rat(0));
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  // roots of each affine piece of h (tails included)
  std::vector<Rat> roots;
  Rat tl = f.sl - g.sl, tr = f.sr - g.sr;
  if (tl != 0) {
    Rat r = cs.front() - h(cs.front()) / tl;
    if (r < cs.front()) roots.push_back(r);
  }
  if (tr != 0) {
    Rat r = cs.back() - h(cs.back()) / tr;
    if (r > cs.back()) roots.push_back(r);
  }
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    Rat ha = h(cs[i]), hb = h(cs[i + 1]);
    if (ha == hb) continue;
    Rat r = cs[i] - ha * (cs[i + 1] - cs[i]) / (hb - ha);
    if (cs[i] < r && r < cs[i + 1]) roots.push_back(r);
  }
  cs.insert(cs.end(), roots.begin(), roots.end());
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::optional<Rat> best;
  auto offer = [&](const Rat& r) {
    if (!best || enumeration_before(r, *best)) best = r;
  };
  for (const Rat& c : cs)
    if (h(c) != 0) offer(c);
  if (h(cs.front() - 1) != 0)
    offer(simplest_in_interval(std::nullopt, cs.front()));
  if (h(cs.back() + 1) != 0)
    offer(simplest_in_interval(cs.back(), std::nullopt));
  for (std::size_t i = 0; i + 1 < cs.size(); ++i)
    if (h((cs[i] + cs[i + 1]) / 2) != 0)
      offer(simplest_in_interval(cs[i], cs[i + 1]));
  return best;
}

}  // namespace ordspace
