#pragma once

#include <map>
#include <string>
#include <vector>

#include "ordspace/abelian_vector.hpp"
#include "ordspace/braid_word.hpp"
#include "ordspace/errors.hpp"
#include "ordspace/free_word.hpp"
#include "ordspace/tower_element.hpp"

namespace ordspace {

/// Finite ball of radius `radius` around the identity, closed under
/// inversion.  Members are deduplicated normal forms (for braids,
/// deduplicated representatives under braid_equal).
template <class G>
struct Ball {
  int radius = 0;
  std::vector<G> members;

  bool contains(const G& g) const {
    for (const G& m : members)
      if (m == g) return true;
    return false;
  }
  std::size_t size() const { return members.size(); }
};

namespace detail {

// BFS over generator multiplication with a text-keyed normal form dedup.
template <class G>
Ball<G> ball_bfs(const G& id, const std::vector<G>& gens, int k,
                 const char* where) {
  Ball<G> b;
  b.radius = k;
  std::map<std::string, G> seen;
  seen.emplace(to_text(id), id);
  std::vector<G> frontier{id};
  for (int d = 0; d < k; ++d) {
    std::vector<G> next;
    for (const G& w : frontier) {
      for (const G& g : gens) {
        G p = multiply(w, g);
        auto key = to_text(p);
        if (seen.emplace(key, p).second) {
          charge_budget(seen.size(), where);
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  b.members.reserve(seen.size());
  for (auto& [k2, g] : seen) b.members.push_back(g);
  return b;
}

}  // namespace detail

inline Ball<FreeWord> ball_free(int rank, int k) {
  if (rank < 1) throw family_error("ball enumeration needs finite rank");
  std::vector<FreeWord> gens;
  for (int i = 1; i <= rank; ++i) {
    gens.push_back(FreeWord::gen(rank, i, +1));
    gens.push_back(FreeWord::gen(rank, i, -1));
  }
  return detail::ball_bfs(FreeWord::identity(rank), gens, k, "ball_free");
}

inline Ball<AbelianVector> ball_abelian(int dim, int k) {
  std::vector<AbelianVector> gens;
  for (int i = 0; i < dim; ++i) {
    gens.push_back(AbelianVector::unit(dim, i));
    gens.push_back(invert(AbelianVector::unit(dim, i)));
  }
  return detail::ball_bfs(AbelianVector::identity(dim), gens, k,
                          "ball_abelian");
}

inline Ball<TowerElement> ball_tower(int n, int k) {
  std::vector<TowerElement> gens;
  for (int i = 1; i <= n; ++i) {
    gens.push_back(TowerElement::gen(n, i, +1));
    gens.push_back(TowerElement::gen(n, i, -1));
  }
  return detail::ball_bfs(TowerElement::identity(n), gens, k, "ball_tower");
}

/// Braid balls deduplicate with braid_equal; each member is the word of
/// shortest discovered length in its class.
inline Ball<BraidWord> ball_braid(int strands, int k) {
  Ball<BraidWord> b;
  b.radius = k;
  b.members.push_back(BraidWord::identity(strands));
  std::vector<BraidWord> frontier = b.members;
  std::vector<BraidWord> gens;
  for (int i = 1; i <= strands - 1; ++i) {
    gens.push_back(BraidWord::gen(strands, i, +1));
    gens.push_back(BraidWord::gen(strands, i, -1));
  }
  for (int d = 0; d < k; ++d) {
    std::vector<BraidWord> next;
    for (const BraidWord& w : frontier) {
      for (const BraidWord& g : gens) {
        BraidWord p = multiply(w, g);
        bool fresh = true;
        for (const BraidWord& m : b.members)
          if (braid_equal(m, p)) {
            fresh = false;
            break;
          }
        if (fresh) {
          charge_budget(b.members.size() + 1, "ball_braid");
          b.members.push_back(p);
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  return b;
}

}  // namespace ordspace
