#include <catch_amalgamated.hpp>

#include <random>

#include "ordspace/pl_homeo.hpp"

using namespace ordspace;

namespace {

Rat small_rat(std::mt19937& rng) {
  int p = (int)(rng() % 13) - 6;
  int q = 1 + (int)(rng() % 4);
  return Rat(p, q);
}

PLHomeo random_pl(std::mt19937& rng) {
  std::vector<std::pair<Rat, Rat>> pts;
  Rat x = small_rat(rng), y = small_rat(rng);
  int n = (int)(rng() % 4);
  for (int i = 0; i < n; ++i) {
    pts.emplace_back(x, y);
    x += Rat(1 + (int)(rng() % 5), 1 + (int)(rng() % 3));
    y += Rat(1 + (int)(rng() % 5), 1 + (int)(rng() % 3));
  }
  static const Rat slopes[] = {Rat(1, 2), Rat(1), Rat(2), Rat(3)};
  return pl_from_points(pts, slopes[rng() % 4], slopes[rng() % 4]);
}

}  // namespace

TEST_CASE("rational enumeration starts 0, 1, -1, 1/2, -1/2, 2, -2, 1/3") {
  CHECK(rational_at(0) == Rat(0));
  CHECK(rational_at(1) == Rat(1));
  CHECK(rational_at(2) == Rat(-1));
  CHECK(rational_at(3) == Rat(1, 2));
  CHECK(rational_at(4) == Rat(-1, 2));
  CHECK(rational_at(5) == Rat(2));
  CHECK(rational_at(6) == Rat(-2));
  CHECK(rational_at(7) == Rat(1, 3));
  CHECK(rational_at(9) == Rat(3, 2));
  CHECK(rational_at(11) == Rat(2, 3));
  CHECK(rational_at(13) == Rat(3));
}

TEST_CASE("enumeration_before matches the enumeration order") {
  std::vector<Rat> seq;
  for (std::size_t i = 0; i < 60; ++i) seq.push_back(rational_at(i));
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j < seq.size(); ++j)
      CHECK(enumeration_before(seq[i], seq[j]) == (i < j));
}

TEST_CASE("simplest_in_interval picks the earliest enumerated rational") {
  CHECK(simplest_in_interval(Rat(1, 3), Rat(2, 3)) == Rat(1, 2));
  CHECK(simplest_in_interval(Rat(5, 2), Rat(7, 2)) == Rat(3));
  CHECK(simplest_in_interval(Rat(-1, 3), Rat(1, 5)) == Rat(0));
  CHECK(simplest_in_interval(Rat(-3, 2), Rat(-1, 2)) == Rat(-1));
  CHECK(simplest_in_interval(std::nullopt, Rat(0)) == Rat(-1));
  CHECK(simplest_in_interval(Rat(4), std::nullopt) == Rat(5));
  CHECK_THROWS_AS(simplest_in_interval(Rat(1), Rat(1)), usage_error);
  // property: nothing earlier in the enumeration lies inside
  std::mt19937 rng(59);
  auto seq = rational_prefix(20000);
  for (int trial = 0; trial < 200; ++trial) {
    Rat a = small_rat(rng);
    Rat b = a + Rat(1, 1 + (int)(rng() % 7));
    Rat s = simplest_in_interval(a, b);
    CHECK(a < s);
    CHECK(s < b);
    for (std::size_t i = 0; i < seq.size() && seq[i] != s; ++i)
      CHECK(!(a < seq[i] && seq[i] < b));
  }
}

TEST_CASE("pl evaluation and inversion") {
  auto f = pl_from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(3)}});
  CHECK(f(Rat(1, 2)) == Rat(3, 2));
  CHECK(f(Rat(-2)) == Rat(-2));
  CHECK(f(Rat(2)) == Rat(4));
  CHECK(f.inverse_at(Rat(3, 2)) == Rat(1, 2));
  CHECK(pl_invert(f)(Rat(3)) == Rat(1));
  std::mt19937 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_pl(rng);
    Rat x = small_rat(rng);
    CHECK(g.inverse_at(g(x)) == x);
    CHECK(pl_invert(g)(g(x)) == x);
    CHECK(pl_compose(g, pl_invert(g)).is_identity());
  }
}

TEST_CASE("normalization removes redundant breakpoints") {
  auto f = pl_from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}});
  CHECK(f.is_identity());
  auto g = pl_from_points({{Rat(0), Rat(1)}});  // translation by 1
  auto g2 = pl_from_points({{Rat(5), Rat(6)}, {Rat(7), Rat(8)}});
  CHECK(g == g2);
  // affine with slope 2 through (1, 0) anchors at x = 0
  auto h = pl_from_points({{Rat(1), Rat(0)}}, Rat(2), Rat(2));
  CHECK(h.pts.size() == 1);
  CHECK(h.pts[0] == std::make_pair(Rat(0), Rat(-2)));
}

TEST_CASE("composition is associative and respects evaluation") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_pl(rng), g = random_pl(rng), h = random_pl(rng);
    CHECK(pl_compose(pl_compose(f, g), h) == pl_compose(f, pl_compose(g, h)));
    Rat x = small_rat(rng);
    CHECK(pl_compose(f, g)(x) == f(g(x)));
  }
}

TEST_CASE("first difference of pl maps") {
  auto id = PLHomeo::identity();
  auto t1 = pl_from_points({{Rat(0), Rat(1)}});
  CHECK(pl_first_difference(t1, id) == Rat(0));
  CHECK(!pl_first_difference(id, id).has_value());
  // bump supported on (2, 3): earliest disagreement is 5/2
  auto bump = pl_from_points(
      {{Rat(2), Rat(2)}, {Rat(5, 2), Rat(14, 5)}, {Rat(3), Rat(3)}});
  CHECK(pl_first_difference(bump, id) == Rat(5, 2));
  // bump supported on (1/2, 2) contains the earlier rational 1
  auto bump2 = pl_from_points(
      {{Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(3, 2)}, {Rat(2), Rat(2)}});
  CHECK(pl_first_difference(bump2, id) == Rat(1));
  // brute force agreement on random pairs
  std::mt19937 rng(71);
  auto seq = rational_prefix(20000);
  for (int trial = 0; trial < 80; ++trial) {
    auto f = random_pl(rng), g = random_pl(rng);
    auto d = pl_first_difference(f, g);
    if (f == g) {
      CHECK(!d.has_value());
      continue;
    }
    REQUIRE(d.has_value());
    CHECK(f(*d) != g(*d));
    for (std::size_t i = 0; i < seq.size() && seq[i] != *d; ++i)
      CHECK(f(seq[i]) == g(seq[i]));
  }
}
