#include <catch_amalgamated.hpp>

#include <random>

#include "ordspace/ball.hpp"

using namespace ordspace;

namespace {

FreeWord random_free_word(std::mt19937& rng, int rank, int len) {
  std::vector<int> ls;
  for (int i = 0; i < len; ++i) {
    int g = 1 + rng() % rank;
    ls.push_back(rng() % 2 ? g : -g);
  }
  return FreeWord(rank, ls);
}

TowerElement random_tower(std::mt19937& rng, int n) {
  std::vector<long long> e;
  for (int i = 0; i < n; ++i) e.push_back((long long)(rng() % 9) - 4);
  return TowerElement(e);
}

}  // namespace

TEST_CASE("free words reduce freely") {
  FreeWord x1 = FreeWord::gen(2, 1);
  CHECK(multiply(x1, invert(x1)).is_identity());
  FreeWord w(2, {1, 2, -2, -1, 1});
  CHECK(w.letters == std::vector<int>{1});
  CHECK(to_text(multiply(FreeWord::gen(2, 1), FreeWord::gen(2, 2))) == "x1.x2");
}

TEST_CASE("free word inversion and text") {
  FreeWord w = free_word_from_text(2, "x1.x2");
  CHECK(to_text(invert(w)) == "x2^-1.x1^-1");
  CHECK(free_word_from_text(2, to_text(invert(w))) == invert(w));
  CHECK(free_word_from_text(2, "1").is_identity());
  CHECK(to_text(invert(FreeWord::identity(2))) == "1");
  CHECK_THROWS_AS(free_word_from_text(2, "y1"), usage_error);
  CHECK_THROWS_AS(free_word_from_text(2, "x3"), family_error);
}

TEST_CASE("free group axioms on random words") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    FreeWord a = random_free_word(rng, 2, rng() % 8);
    FreeWord b = random_free_word(rng, 2, rng() % 8);
    FreeWord c = random_free_word(rng, 2, rng() % 8);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    CHECK(multiply(a, invert(a)).is_identity());
    CHECK(invert(invert(a)) == a);
  }
}

TEST_CASE("abelian vectors") {
  AbelianVector a({1, 2}), b({3, -1});
  CHECK(multiply(a, b) == AbelianVector({4, 1}));
  CHECK(invert(AbelianVector({2, -3})) == AbelianVector({-2, 3}));
  CHECK(commutator(AbelianVector({1, 0}), AbelianVector({0, 1})).is_identity());
  CHECK(abelian_from_text("(1,-2)") == AbelianVector({1, -2}));
  CHECK(to_text(AbelianVector({1, -2})) == "(1,-2)");
  CHECK_THROWS_AS(multiply(a, AbelianVector({1, 2, 3})), family_error);
}

TEST_CASE("tower group relations") {
  // Klein bottle group: x = x2, y = x1, relation x y x^-1 y = 1.
  TowerElement x = TowerElement::gen(2, 2), y = TowerElement::gen(2, 1);
  TowerElement lhs =
      multiply(multiply(multiply(x, y), invert(x)), y);
  CHECK(lhs.is_identity());
  // x_2 x_1 = x_1^-1 x_2 in normal form terms
  CHECK(multiply(x, y) == TowerElement({-1, 1}));
}

TEST_CASE("tower group axioms on random elements") {
  std::mt19937 rng(13);
  for (int n : {1, 2, 3, 4}) {
    for (int i = 0; i < 150; ++i) {
      TowerElement a = random_tower(rng, n);
      TowerElement b = random_tower(rng, n);
      TowerElement c = random_tower(rng, n);
      CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
      CHECK(multiply(a, invert(a)).is_identity());
      CHECK(multiply(invert(a), a).is_identity());
    }
  }
}

TEST_CASE("tower non-adjacent generators commute") {
  TowerElement x1 = TowerElement::gen(3, 1), x3 = TowerElement::gen(3, 3);
  CHECK(multiply(x1, x3) == multiply(x3, x1));
}

TEST_CASE("commutators") {
  FreeWord x1 = FreeWord::gen(2, 1), x2 = FreeWord::gen(2, 2);
  CHECK(to_text(commutator(x1, x2)) == "x1^-1.x2^-1.x1.x2");
  FreeWord a = free_word_from_text(2, "x1.x2");
  CHECK(commutator(a, multiply(a, a)).is_identity());
}

TEST_CASE("free group ball sizes") {
  auto b1 = ball_free(2, 1);
  CHECK(b1.size() == 5);
  auto b2 = ball_free(2, 2);
  CHECK(b2.size() == 17);  // 1 + 4 + 12
  // |B(F_n,k)| = 1 + sum 2n (2n-1)^{j-1}
  auto b3 = ball_free(2, 3);
  CHECK(b3.size() == 53);
  auto c2 = ball_free(3, 2);
  CHECK(c2.size() == 1 + 6 + 30);
  // nesting
  for (const auto& w : b2.members) CHECK(b3.contains(w));
}

TEST_CASE("abelian ball") {
  auto b = ball_abelian(2, 1);
  CHECK(b.size() == 5);
  CHECK(b.contains(AbelianVector({0, 0})));
  CHECK(b.contains(AbelianVector({-1, 0})));
  CHECK(!b.contains(AbelianVector({1, 1})));
}

TEST_CASE("ball respects budget") {
  auto saved = element_budget();
  element_budget() = 10;
  CHECK_THROWS_AS(ball_free(2, 3), budget_error);
  element_budget() = saved;
}

TEST_CASE("balls closed under inversion") {
  auto bf = ball_free(2, 2);
  for (const auto& w : bf.members) CHECK(bf.contains(invert(w)));
  auto bt = ball_tower(3, 2);
  for (const auto& t : bt.members) CHECK(bt.contains(invert(t)));
}

TEST_CASE("braid ball dedups by group element") {
  auto b = ball_braid(3, 2);
  // sigma1 sigma1^-1 collapses; distinct elements only
  for (std::size_t i = 0; i < b.members.size(); ++i)
    for (std::size_t j = i + 1; j < b.members.size(); ++j)
      CHECK(!braid_equal(b.members[i], b.members[j]));
  CHECK(b.contains(braid_from_text(3, "s1.s2")));
}
