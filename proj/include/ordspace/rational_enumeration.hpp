#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ordspace/rational.hpp"

namespace ordspace {

/// Enumeration of the rationals: r_0 = 0, then the Calkin-Wilf
/// sequence of positive rationals interleaved with its negatives
/// (r_{2k-1} = q_k, r_{2k} = -q_k).  Bijective.
inline Rat rational_at(std::size_t i) {
  if (i == 0) return Rat(0);
  std::size_t k = (i + 1) / 2;
  bool negative = i % 2 == 0;
  // q_1 = 1; q_{n+1} = 1 / (2 floor(q_n) - q_n + 1)
  Rat q(1);
  for (std::size_t n = 1; n < k; ++n)
    q = Rat(1) / (Rat(2 * rat_floor(q)) - q + 1);
  return negative ? -q : q;
}

/// The first n rationals of the enumeration, computed incrementally.
inline std::vector<Rat> rational_prefix(std::size_t n) {
  std::vector<Rat> seq;
  seq.reserve(n);
  if (n > 0) seq.push_back(Rat(0));
  Rat q(1);
  while (seq.size() < n) {
    seq.push_back(q);
    if (seq.size() < n) seq.push_back(-q);
    q = Rat(1) / (Rat(2 * rat_floor(q)) - q + 1);
  }
  return seq;
}

namespace detail {

/// Root-to-leaf path of a positive rational in the Calkin-Wilf tree as
/// alternating runs of left (0) and right (1) steps.  The breadth-first
/// index is 1 followed by the path bits, so indices compare by path
/// length first, then lexicographically.
struct CwPath {
  std::vector<std::pair<int, Int>> runs;  // (bit, count), top-down
  Int level = 0;                          // total path length
};

inline CwPath cw_path(Rat r) {
  CwPath out;
  Int p = num(r), q = den(r);
  std::vector<std::pair<int, Int>> up;  // bottom-up
  while (p != q) {
    if (p < q) {
      // left child p/(q-p) repeatedly: count full steps at once
      Int k = (q - 1) / p;
      up.emplace_back(0, k);
      q -= k * p;
    } else {
      Int k = (p - 1) / q;
      up.emplace_back(1, k);
      p -= k * q;
    }
  }
  for (auto it = up.rbegin(); it != up.rend(); ++it) {
    out.runs.push_back(*it);
    out.level += it->second;
  }
  return out;
}

/// -1 / 0 / +1 comparison of breadth-first Calkin-Wilf indices.
inline int cw_index_compare(const CwPath& a, const CwPath& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  std::size_t ia = 0, ib = 0;
  Int ca = 0, cb = 0;
  while (ia < a.runs.size() && ib < b.runs.size()) {
    if (ca == 0) ca = a.runs[ia].second;
    if (cb == 0) cb = b.runs[ib].second;
    int bita = a.runs[ia].first, bitb = b.runs[ib].first;
    if (bita != bitb) return bita < bitb ? -1 : 1;
    Int step = ca < cb ? ca : cb;
    ca -= step;
    cb -= step;
    if (ca == 0) ++ia;
    if (cb == 0) ++ib;
  }
  return 0;
}

}  // namespace detail

/// Is r earlier than s in the enumeration?
inline bool enumeration_before(const Rat& r, const Rat& s) {
  if (r == s) return false;
  if (r == 0) return true;
  if (s == 0) return false;
  int sr = sgn(r), ss = sgn(s);
  Rat ar = sr < 0 ? -r : r, as = ss < 0 ? -s : s;
  int c = detail::cw_index_compare(detail::cw_path(ar), detail::cw_path(as));
  if (c != 0) return c < 0;
  // same Calkin-Wilf rank: positive (index 2k-1) precedes negative (2k)
  return sr > 0 && ss < 0;
}

/// The rational of minimal enumeration index in the open interval
/// (lo, hi); unbounded sides passed as nullopt.  The Stern-Brocot
/// simplest rational of an interval is the unique one of minimal tree
/// depth, hence also of minimal Calkin-Wilf index within its sign.
inline Rat simplest_in_interval(std::optional<Rat> lo, std::optional<Rat> hi) {
  if (lo && hi && *lo >= *hi) throw usage_error("empty interval");
  if ((!lo || *lo < 0) && (!hi || *hi > 0)) return Rat(0);
  auto positive_simplest = [](std::optional<Rat> u,
                              std::optional<Rat> v) -> Rat {
    // simplest rational in the open interval (u, v) with 0 <= u
    Int pl = 0, ql = 1, ph = 1, qh = 0;  // Stern-Brocot bounds
    for (int guard = 0; guard < 100000; ++guard) {
      Int pm = pl + ph, qm = ql + qh;
      Rat m(pm, qm);
      if (u && m <= *u) {
        // go right; take all right steps at once when u is finite
        pl = pm;
        ql = qm;
        continue;
      }
      if (v && m >= *v) {
        ph = pm;
        qh = qm;
        continue;
      }
      return m;
    }
    throw budget_error("stern-brocot descent too deep");
  };
  if (lo && *lo >= 0) return positive_simplest(lo, hi);
  // interval within the negatives (hi is finite and <= 0 here): mirror
  std::optional<Rat> v = lo ? std::optional<Rat>(-*lo) : std::nullopt;
  return -positive_simplest(std::optional<Rat>(-*hi), v);
}

}  // namespace ordspace
