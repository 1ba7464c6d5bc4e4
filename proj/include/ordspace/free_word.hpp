#pragma once

#include <string>
#include <vector>

#include "ordspace/errors.hpp"

namespace ordspace {

/// Freely reduced word in F_n (rank >= 1) or F_infinity (rank 0).
/// Letters are signed generator indices: +i for x_i, -i for x_i^{-1}.
struct FreeWord {
  int rank = 2;  // 0 means countably many generators
  std::vector<int> letters;

  FreeWord() = default;
  FreeWord(int r, std::vector<int> ls) : rank(r), letters(std::move(ls)) {
    reduce();
    check();
  }
  static FreeWord identity(int rank) { return FreeWord(rank, {}); }
  static FreeWord gen(int rank, int i, int sign = 1) {
    return FreeWord(rank, {sign > 0 ? i : -i});
  }

  bool is_identity() const { return letters.empty(); }
  int length() const { return static_cast<int>(letters.size()); }

  void check() const {
    for (int l : letters) {
      if (l == 0 || (rank > 0 && (l > rank || l < -rank)))
        throw family_error("free word letter out of range");
    }
  }

  void reduce() {
    std::vector<int> out;
    for (int l : letters) {
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    letters = std::move(out);
  }

  friend bool operator==(const FreeWord& a, const FreeWord& b) {
    return a.rank == b.rank && a.letters == b.letters;
  }
  friend bool operator<(const FreeWord& a, const FreeWord& b) {
    return a.letters < b.letters;  // arbitrary total order for containers
  }
};

inline FreeWord multiply(const FreeWord& a, const FreeWord& b) {
  if (a.rank != b.rank) throw family_error("free word rank mismatch");
  std::vector<int> ls = a.letters;
  for (int l : b.letters) {
    if (!ls.empty() && ls.back() == -l)
      ls.pop_back();
    else
      ls.push_back(l);
  }
  FreeWord r;
  r.rank = a.rank;
  r.letters = std::move(ls);
  return r;
}

inline FreeWord invert(const FreeWord& a) {
  FreeWord r;
  r.rank = a.rank;
  r.letters.reserve(a.letters.size());
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    r.letters.push_back(-*it);
  return r;
}

inline bool is_identity(const FreeWord& a) { return a.is_identity(); }

inline std::string to_text(const FreeWord& a) {
  if (a.letters.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    if (i) s += '.';
    int l = a.letters[i];
    s += 'x';
    s += std::to_string(l > 0 ? l : -l);
    if (l < 0) s += "^-1";
  }
  return s;
}

/// Parses the serialized form `x1.x2^-1`; "1" or "" is the identity.
inline FreeWord free_word_from_text(int rank, const std::string& s) {
  FreeWord w;
  w.rank = rank;
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
    if (tok.size() < 2 || tok[0] != 'x')
      throw usage_error("malformed free word token: " + tok);
    int i = std::atoi(tok.c_str() + 1);
    if (i <= 0) throw usage_error("malformed free word token: " + tok);
    w.letters.push_back(inv ? -i : i);
  }
  w.reduce();
  w.check();
  return w;
}

inline FreeWord commutator(const FreeWord& a, const FreeWord& b) {
  return multiply(multiply(invert(a), invert(b)), multiply(a, b));
}

}  // namespace ordspace
