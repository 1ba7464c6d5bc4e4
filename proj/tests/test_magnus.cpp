#include <catch_amalgamated.hpp>

#include "ordspace/ball.hpp"
#include "ordspace/magnus.hpp"

using namespace ordspace;

TEST_CASE("magnus expansion basics") {
  auto x1 = FreeWord::gen(2, 1);
  auto s = magnus_expansion(x1, 2, 3);
  CHECK(s.coef[0][0] == 1);
  CHECK(s.coef[1][0] == 1);  // X1
  CHECK(s.coef[1][1] == 0);  // X2
  // inverse: 1 - X1 + X1^2 - X1^3
  auto t = magnus_expansion(invert(x1), 2, 3);
  CHECK(t.coef[1][0] == -1);
  CHECK(t.coef[2][0] == 1);   // X1 X1
  CHECK(t.coef[3][0] == -1);  // X1 X1 X1
  // product of inverses telescopes to 1
  auto u = magnus_expansion(multiply(x1, invert(x1)), 2, 3);
  CHECK(!u.leading().has_value());
}

TEST_CASE("magnus classification examples") {
  auto P = magnus_cone(2);
  auto x1 = FreeWord::gen(2, 1), x2 = FreeWord::gen(2, 2);
  CHECK(P.classify(x1) == Sign::positive);
  CHECK(P.classify(invert(x1)) == Sign::negative);
  CHECK(P.classify(FreeWord::identity(2)) == Sign::identity);
  // commutator [x1,x2]: leading terms X1X2 - X2X1, lex-first is +X1X2
  CHECK(P.classify(commutator(x1, x2)) == Sign::positive);
  CHECK(P.classify(commutator(x2, x1)) == Sign::negative);
  auto s = magnus_expansion(commutator(x1, x2), 2, 2);
  CHECK(s.coef[2][0 * 2 + 1] == 1);   // X1X2
  CHECK(s.coef[2][1 * 2 + 0] == -1);  // X2X1
}

TEST_CASE("magnus cone passes axiom, conradian and bi-invariance checks") {
  auto P = magnus_cone(2);
  auto B = ball_free(2, 3);
  CHECK(check_axioms_on_ball(P, B).verified);
  CHECK(check_conradian_on_ball(P, B).verified);
  CHECK(check_biinvariance_on_ball(P, B).verified);
}

TEST_CASE("compare hint agrees with classification") {
  auto P = magnus_cone(2);
  auto B = ball_free(2, 2);
  for (const auto& g : B.members)
    for (const auto& h : B.members) {
      Ordering via_classify;
      switch (P.classify(multiply(invert(g), h))) {
        case Sign::positive: via_classify = Ordering::less; break;
        case Sign::negative: via_classify = Ordering::greater; break;
        default: via_classify = Ordering::equal;
      }
      CHECK(compare(P, g, h) == via_classify);
    }
}

TEST_CASE("magnus density hint walks down the lower central series") {
  auto P = magnus_cone(2);
  CHECK(P.certified_dense);
  FreeWord g = FreeWord::gen(2, 1);
  for (int i = 0; i < 3; ++i) {
    auto h = density_witness(P, g, ball_free(2, 1));
    REQUIRE(h.has_value());
    CHECK(P.classify(*h) == Sign::positive);
    CHECK(compare(P, *h, g) == Ordering::less);
    g = *h;
  }
}

TEST_CASE("magnus respects subgroup restriction") {
  // bi-orders restrict: the cone restricted to words in x1^2, x2^2 is
  // still closed under products and conjugation by subgroup members
  auto P = magnus_cone(2);
  FreeWord a(2, {1, 1}), b(2, {2, 2});
  std::vector<FreeWord> sub{a, b, invert(a), invert(b), multiply(a, b),
                            commutator(a, b)};
  for (const auto& g : sub)
    for (const auto& h : sub) {
      if (P.classify(g) != Sign::positive || P.classify(h) != Sign::positive)
        continue;
      CHECK(P.classify(multiply(g, h)) == Sign::positive);
      CHECK(P.classify(multiply(multiply(invert(h), g), h)) ==
            Sign::positive);
    }
}

TEST_CASE("magnus rank errors") {
  auto P = magnus_cone(2);
  CHECK_THROWS_AS(P.classify(FreeWord::gen(3, 3)), family_error);
  CHECK_THROWS_AS(magnus_cone(0), usage_error);
}
