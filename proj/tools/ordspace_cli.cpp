// ordspace: exact computation with left-orderings of groups.
//
// Every subcommand runs one deterministic pipeline and can emit a JSON
// certificate; `ordspace verify` re-derives every recorded result.
// Exit codes: 0 success, 1 refutation/failed check, 2 usage error,
// 3 element budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ordspace/certificate.hpp"

using namespace ordspace;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// "(1,r2),(0,1)" -> list of functionals, coordinates in quad syntax
json flag_descriptor_from_text(const std::string& body) {
  std::vector<QuadVec> fs;
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (body[pos] == ',' || body[pos] == ' ') {
      ++pos;
      continue;
    }
    if (body[pos] != '(') throw usage_error("malformed flag list: " + body);
    std::size_t close = body.find(')', pos);
    if (close == std::string::npos)
      throw usage_error("malformed flag list: " + body);
    QuadVec f;
    for (const std::string& c :
         split(body.substr(pos + 1, close - pos - 1), ','))
      f.push_back(quad_from_text(c));
    fs.push_back(std::move(f));
    pos = close + 1;
  }
  if (fs.empty()) throw usage_error("empty flag list");
  int dim = static_cast<int>(fs[0].size());
  return FlagOrder(dim, std::move(fs)).to_json();
}

// Short cone syntax used on the command line: magnus[:rank],
// dehornoy[:strands], flag:[(..),(..)], tower:+,-,.., b3lex, or a raw
// JSON descriptor.
json cone_spec_to_descriptor(const std::string& spec, char fam, int n) {
  if (!spec.empty() && spec[0] == '{') return parse_descriptor(spec);
  std::string head = spec, arg;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    head = spec.substr(0, colon);
    arg = spec.substr(colon + 1);
  }
  if (head == "magnus")
    return magnus_cone(arg.empty() ? n : std::atoi(arg.c_str())).descriptor;
  if (head == "dehornoy")
    return dehornoy_cone(arg.empty() ? n : std::atoi(arg.c_str())).descriptor;
  if (head == "b3lex") return b3_soul_lex_cone().descriptor;
  if (head == "flag") {
    if (arg.size() < 2 || arg.front() != '[' || arg.back() != ']')
      throw usage_error("flag cone expects flag:[(..),(..)]");
    json d = flag_descriptor_from_text(arg.substr(1, arg.size() - 2));
    if (fam == 'z' && d.at("dim") != n)
      throw usage_error("flag dimension does not match the group");
    return d;
  }
  if (head == "tower") {
    std::vector<int> signs;
    for (char ch : arg) {
      if (ch == '+') signs.push_back(1);
      if (ch == '-') signs.push_back(-1);
    }
    return tower_cone(static_cast<int>(signs.size()), signs).descriptor;
  }
  throw usage_error("unknown cone spec: " + spec);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write " + path);
  out << content;
}

PLHomeo pl_from_json(const json& j) {
  std::vector<std::pair<Rat, Rat>> pts;
  for (const auto& p : j.at("pts"))
    pts.emplace_back(rat_from_text(p[0].get<std::string>()),
                     rat_from_text(p[1].get<std::string>()));
  return pl_from_points(std::move(pts),
                        rat_from_text(j.at("sl").get<std::string>()),
                        rat_from_text(j.at("sr").get<std::string>()));
}

// Static plot of f1 and f2 over the sampled range, breakpoints marked;
// the exact breakpoint tables ride along as data attributes.
std::string f1f2_svg(const json& jf1, const json& jf2) {
  PLHomeo f1 = pl_from_json(jf1), f2 = pl_from_json(jf2);
  Rat lo = f1.pts.front().first, hi = f1.pts.back().first;
  for (const auto& f : {f1, f2})
    for (const auto& [x, y] : f.pts) {
      lo = std::min({lo, x, y});
      hi = std::max({hi, x, y});
    }
  lo -= 2;
  hi += 2;
  double w = 560, m = 20;
  auto sx = [&](const Rat& v) {
    return m + (w - 2 * m) * (v - lo).convert_to<double>() /
                   (hi - lo).convert_to<double>();
  };
  auto sy = [&](const Rat& v) { return w - sx(v); };
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w
      << "' height='" << w << "' data-f1='" << jf1.dump() << "' data-f2='"
      << jf2.dump() << "'>\n";
  svg << "<line x1='" << sx(lo) << "' y1='" << sy(lo) << "' x2='" << sx(hi)
      << "' y2='" << sy(hi) << "' stroke='#ccc'/>\n";  // the identity
  const char* colors[] = {"#c22", "#22c"};
  int ci = 0;
  for (const auto& f : {f1, f2}) {
    svg << "<polyline fill='none' stroke='" << colors[ci] << "' points='";
    svg << sx(lo) << "," << sy(f(lo)) << " ";
    for (const auto& [x, y] : f.pts) svg << sx(x) << "," << sy(y) << " ";
    svg << sx(hi) << "," << sy(f(hi)) << "'/>\n";
    for (const auto& [x, y] : f.pts)
      svg << "<circle cx='" << sx(x) << "' cy='" << sy(y)
          << "' r='3' fill='" << colors[ci] << "'/>\n";
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

int finish(const Certificate& c, const std::string& cert_path,
           const std::string& plot_path) {
  if (!cert_path.empty()) write_file(cert_path, c.to_json().dump(2) + "\n");
  if (!plot_path.empty()) {
    if (!c.stages.contains("f1"))
      throw usage_error("this pipeline produces nothing to plot");
    write_file(plot_path, f1f2_svg(c.stages.at("f1"), c.stages.at("f2")));
  }
  std::cout << c.to_json().dump(2) << "\n";
  return c.verdict == "verified" ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation with left-orderings of groups"};
  app.require_subcommand(1);

  std::string group = "f:2", cone_spec, require, element, target = "discrete";
  std::string cert_path, plot_path, cert_file, word;
  int radius = 2, k = 2, rank = 2, strands = 3, census_radius = 2;
  std::string properties = "axioms";

  auto* c_check = app.add_subcommand("check", "ball-check ordering axioms");
  c_check->add_option("--group", group, "group tag, e.g. f:2, z:3, b:4, t:2");
  c_check->add_option("--cone", cone_spec, "cone spec")->required();
  c_check->add_option("--radius", radius, "ball radius");
  c_check->add_option("--properties", properties,
                      "comma list of axioms,conradian,biinvariance");
  c_check->add_option("--emit-certificate", cert_path, "write transcript");

  auto* c_classify = app.add_subcommand("classify", "classify one element");
  c_classify->add_option("--group", group)->required();
  c_classify->add_option("--cone", cone_spec)->required();
  c_classify->add_option("--element", element)->required();
  c_classify->add_option("--emit-certificate", cert_path);

  auto* c_approx =
      app.add_subcommand("approximate", "discrete/dense flag approximation");
  c_approx->add_option("--group", group)->required();
  c_approx->add_option("--cone", cone_spec)->required();
  c_approx->add_option("--target", target, "discrete or dense");
  c_approx->add_option("--require", require, "semicolon list of vectors");
  c_approx->add_option("--emit-certificate", cert_path);

  auto* c_densify =
      app.add_subcommand("densify", "dense approximation on a free group");
  c_densify->add_option("--group", group, "free group tag f:n");
  c_densify->add_option("--cone", cone_spec, "base cone (default magnus)");
  c_densify->add_option("--require", require, "comma list of words");
  c_densify->add_option("--k", k, "realization radius");
  c_densify->add_option("--emit-certificate", cert_path);
  c_densify->add_option("--plot", plot_path, "write an f1/f2 SVG");

  auto* c_tower = app.add_subcommand("tower", "Tararin tower census");
  c_tower->add_option("--rank", rank)->required();
  c_tower->add_option("--census-radius", census_radius);
  c_tower->add_option("--emit-certificate", cert_path);

  auto* c_braid = app.add_subcommand("braid", "handle-reduce and classify");
  c_braid->add_option("--strands", strands)->required();
  c_braid->add_option("--classify", word, "braid word")->required();
  c_braid->add_option("--emit-certificate", cert_path);

  auto* c_verify = app.add_subcommand("verify", "re-derive a certificate");
  c_verify->add_option("certificate", cert_file, "certificate file")
      ->required();

  auto* c_plot = app.add_subcommand("plot", "re-plot f1/f2 from a certificate");
  c_plot->add_option("--certificate", cert_file)->required();
  c_plot->add_option("--out", plot_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_check->parsed() || c_classify->parsed() || c_approx->parsed() ||
        c_densify->parsed()) {
      auto [fam, n] = detail::parse_group_tag(group);
      json d = cone_spec_to_descriptor(
          cone_spec.empty() ? "magnus" : cone_spec, fam, n);
      if (c_check->parsed()) {
        json props = json::array();
        for (const auto& p : split(properties, ',')) props.push_back(p);
        return finish(make_certificate("check",
                                       json{{"group", group},
                                            {"cone", d},
                                            {"radius", radius},
                                            {"properties", props}}),
                      cert_path, "");
      }
      if (c_classify->parsed())
        return finish(make_certificate("classify", json{{"group", group},
                                                        {"cone", d},
                                                        {"element", element}}),
                      cert_path, "");
      if (c_approx->parsed()) {
        if (fam != 'z') throw usage_error("approximate expects a z:k group");
        json req = json::array();
        for (const auto& t : split(require, ';')) req.push_back(t);
        return finish(make_certificate("approximate", json{{"cone", d},
                                                           {"target", target},
                                                           {"require", req}}),
                      cert_path, "");
      }
      if (fam != 'f') throw usage_error("densify expects a free group f:n");
      json req = json::array();
      for (const auto& t : split(require, ',')) req.push_back(t);
      return finish(make_certificate("densify", json{{"rank", n},
                                                     {"cone", d},
                                                     {"k", k},
                                                     {"require", req}}),
                    cert_path, plot_path);
    }
    if (c_tower->parsed())
      return finish(make_certificate(
                        "tower", json{{"rank", rank},
                                      {"census_radius", census_radius}}),
                    cert_path, "");
    if (c_braid->parsed())
      return finish(make_certificate(
                        "braid", json{{"strands", strands}, {"word", word}}),
                    cert_path, "");
    // verify / plot: load the certificate file
    std::ifstream in(cert_file);
    if (!in) throw usage_error("cannot read " + cert_file);
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw usage_error("malformed certificate file: " + std::string(e.what()));
    }
    Certificate cert = Certificate::from_json(j);
    if (c_plot->parsed()) {
      if (!cert.stages.contains("f1"))
        throw usage_error("certificate carries no f1/f2 tables");
      write_file(plot_path,
                 f1f2_svg(cert.stages.at("f1"), cert.stages.at("f2")));
      std::cout << "wrote " << plot_path << "\n";
      return 0;
    }
    VerifyResult vr = verify_certificate(cert);
    std::cout << (vr.ok ? "verified" : "MISMATCH") << ": " << vr.message
              << "\n";
    return vr.ok ? 0 : 1;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const family_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
}
