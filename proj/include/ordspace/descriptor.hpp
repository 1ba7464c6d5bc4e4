#pragma once

#include <string>

#include "ordspace/dehornoy.hpp"
#include "ordspace/flag_order.hpp"
#include "ordspace/realization.hpp"
#include "ordspace/tower_cones.hpp"

namespace ordspace {

namespace detail {

inline void need(const json& d, const char* field, const std::string& path) {
  if (!d.contains(field))
    throw usage_error("descriptor at " + path + ": missing field '" + field +
                      "'");
}

}  // namespace detail

inline void validate_subgroup_descriptor(const json& d,
                                         const std::string& path = "subgroup");

/// Structural check of a serialized cone term; throws usage_error with
/// the offending path.  Validation is shape-only — reconstruction does
/// the deep parsing.
inline void validate_descriptor(const json& d, const std::string& path = "cone") {
  if (!d.is_object() || !d.contains("kind") || !d.at("kind").is_string())
    throw usage_error("descriptor at " + path + ": expected object with kind");
  std::string kind = d.at("kind");
  auto sub = [&](const char* field) {
    detail::need(d, field, path);
    validate_descriptor(d.at(field), path + "." + field);
  };
  if (kind == "zk-flag") {
    detail::need(d, "dim", path);
    detail::need(d, "functionals", path);
  } else if (kind == "magnus") {
    detail::need(d, "rank", path);
  } else if (kind == "dehornoy") {
    detail::need(d, "strands", path);
  } else if (kind == "tower-signs") {
    detail::need(d, "rank", path);
    detail::need(d, "signs", path);
  } else if (kind == "surgery") {
    sub("base");
    sub("replacement");
    detail::need(d, "convex", path);
    validate_subgroup_descriptor(d.at("convex"), path + ".convex");
  } else if (kind == "lex-ses") {
    sub("kernel");
    sub("quotient");
  } else if (kind == "realization") {
    sub("base");
    sub("kernel");
    detail::need(d, "k", path);
    detail::need(d, "rank", path);
  } else if (kind == "finfty") {
    detail::need(d, "variant", path);
    detail::need(d, "k", path);
  } else if (kind == "b3-abelianization-lex") {
    sub("kernel");
  } else if (kind == "b3-shift") {
    detail::need(d, "strands", path);
    sub("inner");
  } else {
    throw usage_error("descriptor at " + path + ": unknown kind '" + kind +
                      "'");
  }
}

inline void validate_subgroup_descriptor(const json& d,
                                         const std::string& path) {
  if (!d.is_object() || !d.contains("kind") || !d.at("kind").is_string())
    throw usage_error("descriptor at " + path + ": expected object with kind");
  std::string kind = d.at("kind");
  if (kind == "whole" || kind == "stab0") return;
  if (kind == "parabolic") {
    detail::need(d, "strands", path);
    detail::need(d, "r", path);
    return;
  }
  throw usage_error("descriptor at " + path + ": unknown subgroup kind '" +
                    kind + "'");
}

/// Canonical serialized form: nlohmann objects iterate keys sorted, so
/// a plain dump is already canonical.
inline std::string descriptor_text(const json& d) { return d.dump(); }

inline json parse_descriptor(const std::string& s) {
  json d;
  try {
    d = json::parse(s);
  } catch (const json::parse_error& e) {
    throw usage_error("malformed descriptor at byte " + std::to_string(e.byte) +
                      ": " + e.what());
  }
  validate_descriptor(d);
  return d;
}

inline Cone<AbelianVector> abelian_cone_from_descriptor(const json& d) {
  validate_descriptor(d);
  if (d.at("kind") != "zk-flag")
    throw usage_error("not a cone on Z^k: " + descriptor_text(d));
  return flag_cone(FlagOrder::from_json(d));
}

inline Cone<TowerElement> tower_cone_from_descriptor(const json& d) {
  validate_descriptor(d);
  if (d.at("kind") != "tower-signs")
    throw usage_error("not a tower cone: " + descriptor_text(d));
  return tower_cone(d.at("rank").get<int>(),
                    d.at("signs").get<std::vector<int>>());
}

inline Cone<FreeWord> free_cone_from_descriptor(const json& d) {
  validate_descriptor(d);
  std::string kind = d.at("kind");
  if (kind == "magnus")
    return magnus_cone(d.at("rank").get<int>(),
                       d.value("base_degree", 2));
  if (kind == "realization")
    // deterministic pipeline: rebuilding from the base and radius
    // reproduces the same cone
    return free_pipeline(free_cone_from_descriptor(d.at("base")),
                         d.at("rank").get<int>(), {}, d.at("k").get<int>())
        .Q;
  if (kind == "surgery" && d.at("convex").at("kind") == "stab0" &&
      d.at("base").at("kind") == "realization") {
    const json& r = d.at("base");
    return free_pipeline(free_cone_from_descriptor(r.at("base")),
                         r.at("rank").get<int>(), {}, r.at("k").get<int>())
        .Qprime;
  }
  throw usage_error("cannot rebuild a free-group cone from: " +
                    descriptor_text(d));
}

inline Cone<BraidWord> braid_cone_from_descriptor(const json& d) {
  validate_descriptor(d);
  std::string kind = d.at("kind");
  if (kind == "dehornoy") return dehornoy_cone(d.at("strands").get<int>());
  if (kind == "b3-abelianization-lex") return b3_soul_lex_cone();
  if (kind == "b3-shift")
    return shifted_b3_cone(d.at("strands").get<int>(),
                           braid_cone_from_descriptor(d.at("inner")));
  if (kind == "surgery" && d.at("convex").at("kind") == "parabolic") {
    const json& c = d.at("convex");
    return surgery(braid_cone_from_descriptor(d.at("base")),
                   parabolic_subgroup(c.at("strands").get<int>(),
                                      c.at("r").get<int>()),
                   braid_cone_from_descriptor(d.at("replacement")));
  }
  throw usage_error("cannot rebuild a braid cone from: " + descriptor_text(d));
}

}  // namespace ordspace
