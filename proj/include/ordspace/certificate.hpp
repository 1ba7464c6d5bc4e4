#pragma once

#include <string>
#include <vector>

#include "ordspace/descriptor.hpp"

namespace ordspace {

/// Transcript of one pipeline run: the input is everything needed to
/// re-run it, the stages and checks are what the run produced.
/// `verify` re-runs the pipeline from the input and demands equality.
struct Certificate {
  std::string pipeline;
  json input;
  json stages = json::object();
  json checks = json::array();
  std::string verdict;

  json to_json() const {
    return json{{"pipeline", pipeline},
                {"input", input},
                {"stages", stages},
                {"checks", checks},
                {"verdict", verdict}};
  }

  static Certificate from_json(const json& j) {
    Certificate c;
    try {
      c.pipeline = j.at("pipeline").get<std::string>();
      c.input = j.at("input");
      c.stages = j.at("stages");
      c.checks = j.at("checks");
      c.verdict = j.at("verdict").get<std::string>();
    } catch (const json::exception& e) {
      throw usage_error(std::string("malformed certificate: ") + e.what());
    }
    return c;
  }
};

inline json pl_to_json(const PLHomeo& f) {
  json pts = json::array();
  for (const auto& [x, y] : f.pts)
    pts.push_back(json::array({rat_to_text(x), rat_to_text(y)}));
  return json{{"pts", pts}, {"sl", rat_to_text(f.sl)}, {"sr", rat_to_text(f.sr)}};
}

namespace detail {

template <class G>
void run_property_checks(const Cone<G>& P, const Ball<G>& B,
                         const std::vector<std::string>& properties,
                         Certificate& cert, bool& all_ok) {
  for (const std::string& p : properties) {
    BallCertificate<G> bc;
    if (p == "axioms")
      bc = check_axioms_on_ball(P, B);
    else if (p == "conradian")
      bc = check_conradian_on_ball(P, B);
    else if (p == "biinvariance")
      bc = check_biinvariance_on_ball(P, B);
    else
      throw usage_error("unknown property: " + p);
    cert.checks.push_back(bc.to_json());
    all_ok = all_ok && bc.verified;
  }
}

inline std::pair<char, int> parse_group_tag(const std::string& g) {
  auto colon = g.find(':');
  if (colon == std::string::npos || colon + 1 >= g.size())
    throw usage_error("malformed group tag (expected e.g. f:2): " + g);
  char fam = g[0];
  if (colon != 1 || (fam != 'f' && fam != 'z' && fam != 'b' && fam != 't'))
    throw usage_error("unknown group family: " + g);
  int n = std::atoi(g.c_str() + colon + 1);
  if (n < 1) throw usage_error("malformed group tag: " + g);
  return {fam, n};
}

}  // namespace detail

inline Certificate make_certificate(const std::string& pipeline,
                                    const json& input);

namespace detail {

inline Certificate run_check(const json& input) {
  Certificate c;
  c.pipeline = "check";
  c.input = input;
  auto [fam, n] = parse_group_tag(input.at("group").get<std::string>());
  int radius = input.at("radius").get<int>();
  std::vector<std::string> props =
      input.value("properties", std::vector<std::string>{"axioms"});
  const json& d = input.at("cone");
  bool ok = true;
  switch (fam) {
    case 'f':
      run_property_checks(free_cone_from_descriptor(d), ball_free(n, radius),
                          props, c, ok);
      break;
    case 'z':
      run_property_checks(abelian_cone_from_descriptor(d),
                          ball_abelian(n, radius), props, c, ok);
      break;
    case 'b':
      run_property_checks(braid_cone_from_descriptor(d), ball_braid(n, radius),
                          props, c, ok);
      break;
    default:
      run_property_checks(tower_cone_from_descriptor(d), ball_tower(n, radius),
                          props, c, ok);
  }
  c.verdict = ok ? "verified" : "refuted";
  return c;
}

inline Certificate run_classify(const json& input) {
  Certificate c;
  c.pipeline = "classify";
  c.input = input;
  auto [fam, n] = parse_group_tag(input.at("group").get<std::string>());
  std::string el = input.at("element").get<std::string>();
  const json& d = input.at("cone");
  Sign s;
  switch (fam) {
    case 'f':
      s = free_cone_from_descriptor(d).classify(free_word_from_text(n, el));
      break;
    case 'z':
      s = abelian_cone_from_descriptor(d).classify(abelian_from_text(el));
      break;
    case 'b':
      s = braid_cone_from_descriptor(d).classify(braid_from_text(n, el));
      break;
    default:
      s = tower_cone_from_descriptor(d).classify(tower_from_text(el));
  }
  c.stages["sign"] = to_string(s);
  c.verdict = "verified";
  return c;
}

inline Certificate run_approximate(const json& input) {
  Certificate c;
  c.pipeline = "approximate";
  c.input = input;
  FlagOrder F = FlagOrder::from_json(input.at("cone"));
  std::string target = input.at("target").get<std::string>();
  std::vector<AbelianVector> gs;
  for (const auto& t : input.value("require", std::vector<std::string>{}))
    gs.push_back(abelian_from_text(t));
  FlagOrder out = target == "discrete" ? discrete_approximation(F, gs)
                  : target == "dense"
                      ? dense_approximation(F, gs)
                      : throw usage_error("target must be discrete or dense");
  c.stages["result"] = out.to_json();
  DiscreteResult dr = is_discrete(out);
  c.stages["discrete"] = dr.discrete;
  if (dr.least) c.stages["least"] = to_text(*dr.least);
  json req = json::array();
  auto cone = flag_cone(out);
  bool ok = dr.discrete == (target == "discrete");
  for (const AbelianVector& g : gs) {
    Sign s = cone.classify(g);
    req.push_back(json::array({to_text(g), to_string(s)}));
    ok = ok && s == Sign::positive;
  }
  c.stages["require"] = req;
  c.verdict = ok ? "verified" : "refuted";
  return c;
}

inline Certificate run_densify(const json& input) {
  Certificate c;
  c.pipeline = "densify";
  c.input = input;
  int rank = input.at("rank").get<int>();
  int k = input.at("k").get<int>();
  std::vector<FreeWord> gs;
  for (const auto& t : input.value("require", std::vector<std::string>{}))
    gs.push_back(free_word_from_text(rank, t));
  auto P = free_cone_from_descriptor(input.at("cone"));
  auto p = free_pipeline(P, rank, gs, k);
  c.stages["gplus"] = to_text(p.gplus);
  c.stages["gminus"] = to_text(p.gminus);
  c.stages["a"] = to_text(p.ab.a);
  c.stages["b"] = to_text(p.ab.b);
  c.stages["h1"] = to_text(p.h1);
  c.stages["h2"] = to_text(p.h2);
  c.stages["f1"] = pl_to_json(p.f1);
  c.stages["f2"] = pl_to_json(p.f2);
  c.stages["output"] = p.Qprime.descriptor;
  json req = json::array();
  bool ok = true;
  for (const FreeWord& g : gs) {
    Sign s = p.Qprime.classify(g);
    req.push_back(json::array({to_text(g), to_string(s)}));
    ok = ok && s == Sign::positive;
  }
  c.stages["require"] = req;
  auto B = ball_free(rank, 2);
  auto ax = check_axioms_on_ball(p.Qprime, B);
  auto cx = check_convex_on_ball(p.Q, p.C, B);
  c.checks.push_back(ax.to_json());
  c.checks.push_back(cx.to_json());
  ok = ok && ax.verified && cx.verified;
  c.verdict = ok ? "verified" : "refuted";
  return c;
}

inline Certificate run_tower(const json& input) {
  Certificate c;
  c.pipeline = "tower";
  c.input = input;
  int rank = input.at("rank").get<int>();
  int radius = input.value("census_radius", 2);
  auto census = ball_cone_census(rank, radius);
  c.stages["count"] = census.count;
  json signs = json::array();
  for (const auto& sv : census.generator_signs) signs.push_back(sv);
  c.stages["generator_signs"] = signs;
  c.verdict = census.count == (1 << rank) ? "verified" : "refuted";
  return c;
}

inline Certificate run_braid(const json& input) {
  Certificate c;
  c.pipeline = "braid";
  c.input = input;
  int n = input.at("strands").get<int>();
  BraidWord w = braid_from_text(n, input.at("word").get<std::string>());
  c.stages["reduced"] = to_text(handle_reduce(w));
  c.stages["sign"] = to_string(dehornoy_cone(n).classify(w));
  c.verdict = "verified";
  return c;
}

}  // namespace detail

inline Certificate make_certificate(const std::string& pipeline,
                                    const json& input) {
  if (pipeline == "check") return detail::run_check(input);
  if (pipeline == "classify") return detail::run_classify(input);
  if (pipeline == "approximate") return detail::run_approximate(input);
  if (pipeline == "densify") return detail::run_densify(input);
  if (pipeline == "tower") return detail::run_tower(input);
  if (pipeline == "braid") return detail::run_braid(input);
  throw usage_error("unknown pipeline: " + pipeline);
}

struct VerifyResult {
  bool ok = false;
  std::string message;
};

/// Re-runs the recorded pipeline from the certificate's input and
/// compares every stage output and ball check.
inline VerifyResult verify_certificate(const Certificate& c) {
  Certificate fresh = make_certificate(c.pipeline, c.input);
  if (fresh.stages != c.stages) {
    for (auto& [key, value] : fresh.stages.items())
      if (!c.stages.contains(key) || c.stages.at(key) != value)
        return {false, "stage mismatch at '" + key + "': recomputed " +
                           value.dump() + ", certificate has " +
                           (c.stages.contains(key) ? c.stages.at(key).dump()
                                                   : "nothing")};
    return {false, "certificate lists stages the pipeline did not produce"};
  }
  if (fresh.checks != c.checks)
    return {false, "ball-check transcripts disagree: recomputed " +
                       fresh.checks.dump()};
  if (fresh.verdict != c.verdict)
    return {false, "verdict mismatch: recomputed '" + fresh.verdict + "'"};
  return {true, "all recorded results re-derived"};
}

}  // namespace ordspace
