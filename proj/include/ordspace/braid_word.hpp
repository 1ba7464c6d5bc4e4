#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "ordspace/errors.hpp"

namespace ordspace {

/// Word in the Artin generators of B_n; letters are signed indices
/// +i / -i with 1 <= i <= n-1, kept freely reduced.  Words are not
/// canonical forms: equality of group elements goes through
/// braid_equal (handle reduction), never word identity.
struct BraidWord {
  int strands = 2;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int n, std::vector<int> ls) : strands(n), letters(std::move(ls)) {
    if (n < 2) throw family_error("braid needs at least 2 strands");
    check();
    free_reduce();
  }
  static BraidWord identity(int n) { return BraidWord(n, {}); }
  static BraidWord gen(int n, int i, int sign = 1) {
    return BraidWord(n, {sign > 0 ? i : -i});
  }

  void check() const {
    for (int l : letters) {
      int i = l > 0 ? l : -l;
      if (i < 1 || i > strands - 1)
        throw family_error("braid letter out of range");
    }
  }

  void free_reduce() {
    std::vector<int> out;
    for (int l : letters) {
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    letters = std::move(out);
  }

  int length() const { return static_cast<int>(letters.size()); }

  friend bool operator==(const BraidWord& a, const BraidWord& b) {
    // Word identity; group-element equality is braid_equal.
    return a.strands == b.strands && a.letters == b.letters;
  }
};

inline BraidWord multiply(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands) throw family_error("braid strand mismatch");
  std::vector<int> ls = a.letters;
  for (int l : b.letters) {
    if (!ls.empty() && ls.back() == -l)
      ls.pop_back();
    else
      ls.push_back(l);
  }
  BraidWord r;
  r.strands = a.strands;
  r.letters = std::move(ls);
  return r;
}

inline BraidWord invert(const BraidWord& a) {
  BraidWord r;
  r.strands = a.strands;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    r.letters.push_back(-*it);
  return r;
}

inline std::string to_text(const BraidWord& a) {
  if (a.letters.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    if (i) s += '.';
    int l = a.letters[i];
    s += 's';
    s += std::to_string(l > 0 ? l : -l);
    if (l < 0) s += "^-1";
  }
  return s;
}

/// Parses `s1.s2^-1`; "1" or "" is the identity.
inline BraidWord braid_from_text(int strands, const std::string& s) {
  BraidWord w;
  w.strands = strands;
  if (s.empty() || s == "1") return w;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? dot : dot - pos);
    pos = dot == std::string::npos ? s.size() : dot + 1;
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok.size() < 2 || tok[0] != 's')
      throw usage_error("malformed braid token: " + tok);
    int i = std::atoi(tok.c_str() + 1);
    if (i <= 0) throw usage_error("malformed braid token: " + tok);
    w.letters.push_back(inv ? -i : i);
  }
  w.check();
  w.free_reduce();
  return w;
}

/// Dehornoy handle reduction.  A sigma_i handle is a subword
/// sigma_i^{e} u sigma_i^{-e} whose interior u involves only indices
/// greater than i.  Reduction removes the bracketing letters and
/// rewrites each interior sigma_{i+1}^{d} as
/// sigma_{i+1}^{-e} sigma_i^{d} sigma_{i+1}^{e}.  We always reduce the
/// handle that closes earliest (leftmost-innermost), which is known to
/// terminate; the step budget turns any bug into a loud error.
inline BraidWord handle_reduce(const BraidWord& w0) {
  BraidWord w = w0;
  long long budget =
      10000LL * (w.length() + 1) * (w.length() + 1);
  for (long long step = 0;; ++step) {
    if (step > budget)
      throw budget_error("handle reduction step budget exceeded");
    auto& ls = w.letters;
    int n = static_cast<int>(ls.size());
    int open = -1, close = -1;
    // Find the earliest-closing handle.
    for (int p = 0; p < n && close < 0; ++p) {
      int i = std::abs(ls[p]);
      for (int q = p - 1; q >= 0; --q) {
        int j = std::abs(ls[q]);
        if (j > i) continue;
        if (j == i && ls[q] == -ls[p]) {
          open = q;
          close = p;
        }
        break;  // nearest letter of index <= i decides
      }
    }
    if (close < 0) return w;
    int e = ls[open] > 0 ? 1 : -1;
    int i = std::abs(ls[open]);
    std::vector<int> out(ls.begin(), ls.begin() + open);
    for (int p = open + 1; p < close; ++p) {
      int l = ls[p];
      if (std::abs(l) == i + 1) {
        out.push_back(-e * (i + 1));
        out.push_back(l > 0 ? i : -i);
        out.push_back(e * (i + 1));
      } else {
        out.push_back(l);
      }
    }
    out.insert(out.end(), ls.begin() + close + 1, ls.end());
    w.letters = std::move(out);
    w.free_reduce();
  }
}

/// Verdict of the i-positivity test on a freely reduced word with no
/// handles: every occurrence of the lowest index present has one sign.
enum class SigmaClass { trivial, positive, negative };

struct SigmaVerdict {
  SigmaClass cls = SigmaClass::trivial;
  int index = 0;  // the i of i-positive / i-negative
};

inline SigmaVerdict sigma_classify_reduced(const BraidWord& w) {
  if (w.letters.empty()) return {SigmaClass::trivial, 0};
  int lo = 0;
  for (int l : w.letters) {
    int i = std::abs(l);
    if (lo == 0 || i < lo) lo = i;
  }
  int sign = 0;
  for (int l : w.letters) {
    if (std::abs(l) != lo) continue;
    int s = l > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign)
      throw std::logic_error("handle-reduced word with mixed lowest signs");
  }
  return {sign > 0 ? SigmaClass::positive : SigmaClass::negative, lo};
}

inline SigmaVerdict sigma_classify(const BraidWord& w) {
  return sigma_classify_reduced(handle_reduce(w));
}

inline bool braid_equal(const BraidWord& u, const BraidWord& v) {
  if (u.strands != v.strands) throw family_error("braid strand mismatch");
  return handle_reduce(multiply(u, invert(v))).letters.empty();
}

inline bool is_identity(const BraidWord& w) {
  return w.letters.empty() || handle_reduce(w).letters.empty();
}

inline BraidWord commutator(const BraidWord& a, const BraidWord& b) {
  return multiply(multiply(invert(a), invert(b)), multiply(a, b));
}

}  // namespace ordspace
