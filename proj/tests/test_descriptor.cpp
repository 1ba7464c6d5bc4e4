#include <catch_amalgamated.hpp>

#include "ordspace/certificate.hpp"

using namespace ordspace;

TEST_CASE("descriptor validation") {
  CHECK_NOTHROW(validate_descriptor(magnus_cone(2).descriptor));
  CHECK_NOTHROW(validate_descriptor(dehornoy_cone(4).descriptor));
  CHECK_NOTHROW(validate_descriptor(tower_cone(2, {1, -1}).descriptor));
  CHECK_NOTHROW(validate_descriptor(
      example_braid_surgery(5, shifted_b3_cone(5, b3_soul_lex_cone()))
          .descriptor));
  CHECK_THROWS_AS(validate_descriptor(json{{"kind", "unknown"}}), usage_error);
  CHECK_THROWS_AS(validate_descriptor(json{{"kind", "magnus"}}), usage_error);
  CHECK_THROWS_AS(validate_descriptor(json::array()), usage_error);
  // the error message names the offending path
  try {
    validate_descriptor(json{{"kind", "surgery"},
                             {"base", json{{"kind", "nope"}}},
                             {"replacement", json{{"kind", "magnus"}}},
                             {"convex", json{{"kind", "whole"}}}});
    FAIL("expected usage_error");
  } catch (const usage_error& e) {
    CHECK(std::string(e.what()).find("cone.base") != std::string::npos);
  }
}

TEST_CASE("descriptor round trip is exact") {
  std::vector<json> shipped{
      magnus_cone(2).descriptor,
      dehornoy_cone(3).descriptor,
      tower_cone(3, {1, 1, -1}).descriptor,
      b3_soul_lex_cone().descriptor,
      shifted_b3_cone(5, dehornoy_cone(3)).descriptor,
      flag_cone(FlagOrder::standard_lex(2)).descriptor,
      free_pipeline(magnus_cone(2), 2, {}, 2).Qprime.descriptor,
  };
  for (const json& d : shipped) {
    CHECK_NOTHROW(validate_descriptor(d));
    CHECK(parse_descriptor(descriptor_text(d)) == d);
    CHECK(descriptor_text(parse_descriptor(descriptor_text(d))) ==
          descriptor_text(d));
  }
  CHECK_THROWS_AS(parse_descriptor("{\"kind\": "), usage_error);
}

TEST_CASE("reconstruction reproduces the cone") {
  // magnus
  auto M = magnus_cone(2);
  auto M2 = free_cone_from_descriptor(M.descriptor);
  for (const auto& w : ball_free(2, 2).members)
    CHECK(M2.classify(w) == M.classify(w));
  // flag on Z^2
  auto F = flag_cone(FlagOrder::standard_lex(2));
  auto F2 = abelian_cone_from_descriptor(F.descriptor);
  for (const auto& v : ball_abelian(2, 3).members)
    CHECK(F2.classify(v) == F.classify(v));
  // tower
  auto T = tower_cone(2, {-1, 1});
  auto T2 = tower_cone_from_descriptor(T.descriptor);
  for (const auto& g : ball_tower(2, 3).members)
    CHECK(T2.classify(g) == T.classify(g));
  // braid surgery
  auto S = example_braid_surgery(5, shifted_b3_cone(5, b3_soul_lex_cone()));
  auto S2 = braid_cone_from_descriptor(S.descriptor);
  for (const auto& w : ball_braid(5, 2).members)
    CHECK(S2.classify(w) == S.classify(w));
  // realization pipeline output, rebuilt from its own descriptor
  auto p = free_pipeline(magnus_cone(2), 2, {}, 2);
  auto R2 = free_cone_from_descriptor(p.Qprime.descriptor);
  for (const auto& w : ball_free(2, 3).members)
    CHECK(R2.classify(w) == p.Qprime.classify(w));
  CHECK_THROWS_AS(free_cone_from_descriptor(dehornoy_cone(3).descriptor),
                  usage_error);
}

TEST_CASE("check certificates verify and detect tampering") {
  json input{{"group", "f:2"},
             {"cone", magnus_cone(2).descriptor},
             {"radius", 2},
             {"properties", {"axioms", "conradian", "biinvariance"}}};
  Certificate c = make_certificate("check", input);
  CHECK(c.verdict == "verified");
  CHECK(c.checks.size() == 3);
  CHECK(verify_certificate(c).ok);
  // round trip through json
  Certificate c2 = Certificate::from_json(c.to_json());
  CHECK(verify_certificate(c2).ok);
  // flip one verdict: verify must locate the mismatch
  c2.checks[1]["verdict"] = "refuted";
  auto vr = verify_certificate(c2);
  CHECK(!vr.ok);
  CHECK(!vr.message.empty());
  CHECK_THROWS_AS(Certificate::from_json(json{{"pipeline", "check"}}),
                  usage_error);
}

TEST_CASE("refuting certificates carry re-checkable witnesses") {
  json input{{"group", "b:3"},
             {"cone", dehornoy_cone(3).descriptor},
             {"radius", 2},
             {"properties", {"biinvariance"}}};
  Certificate c = make_certificate("check", input);
  CHECK(c.verdict == "refuted");
  CHECK(c.checks[0]["verdict"] == "refuted");
  CHECK(c.checks[0].contains("witness"));
  CHECK(verify_certificate(c).ok);  // refutation itself is reproducible
}

TEST_CASE("approximate and densify certificates") {
  json fin = FlagOrder(2, {{Quad(1), Quad::root2()}}).to_json();
  Certificate a = make_certificate(
      "approximate", json{{"cone", fin},
                          {"target", "discrete"},
                          {"require", {"(1,1)", "(2,1)"}}});
  CHECK(a.verdict == "verified");
  CHECK(a.stages["discrete"] == true);
  CHECK(verify_certificate(a).ok);

  Certificate d = make_certificate(
      "densify", json{{"rank", 2},
                      {"cone", magnus_cone(2).descriptor},
                      {"k", 2},
                      {"require", {"x1", "x1.x2"}}});
  CHECK(d.verdict == "verified");
  CHECK(d.stages["a"] == "x2");
  CHECK(d.stages["b"] == "x1");
  CHECK(d.stages["h1"] == "x1^-1.x1^-1.x1^-1.x2.x2.x1.x1");
  CHECK(verify_certificate(d).ok);
  Certificate dt = d;
  dt.stages["h1"] = "x1";
  CHECK(!verify_certificate(dt).ok);
}

TEST_CASE("tower and braid certificates") {
  Certificate t =
      make_certificate("tower", json{{"rank", 3}, {"census_radius", 2}});
  CHECK(t.verdict == "verified");
  CHECK(t.stages["count"] == 8);
  CHECK(verify_certificate(t).ok);

  Certificate b = make_certificate(
      "braid", json{{"strands", 3}, {"word", "s1.s2.s1^-1"}});
  CHECK(b.stages["sign"] == "positive");
  CHECK(b.stages["reduced"] == "s2^-1.s1.s2");
  CHECK(verify_certificate(b).ok);

  Certificate cl = make_certificate(
      "classify", json{{"group", "z:2"},
                       {"cone", FlagOrder::standard_lex(2).to_json()},
                       {"element", "(0,-3)"}});
  CHECK(cl.stages["sign"] == "negative");
  CHECK(verify_certificate(cl).ok);
  CHECK_THROWS_AS(make_certificate("nope", json::object()), usage_error);
}
