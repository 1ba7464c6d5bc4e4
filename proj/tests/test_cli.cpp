#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ordspace/certificate.hpp"

using ordspace::Certificate;
using ordspace::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the CLI with the given arguments, capturing stdout+stderr.
RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(ORDSPACE_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path tmpfile(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ordspace_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("check subcommand") {
  auto ok = run("check --group f:2 --cone magnus --radius 2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"verdict\": \"verified\"") != std::string::npos);

  // Dehornoy's order is left- but not bi-invariant
  auto bad = run(
      "check --group b:3 --cone dehornoy:3 --radius 2 "
      "--properties axioms,biinvariance");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("\"verdict\": \"refuted\"") != std::string::npos);
  CHECK(bad.output.find("witness") != std::string::npos);
}

TEST_CASE("classify subcommand") {
  auto r = run(
      "classify --group z:2 --cone \"flag:[(1,0),(0,1)]\" --element '(0,-3)'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"sign\": \"negative\"") != std::string::npos);

  auto f = run("classify --group f:2 --cone magnus --element 'x1^-1.x2.x1'");
  CHECK(f.exit_code == 0);
  CHECK(f.output.find("\"sign\": \"positive\"") != std::string::npos);
}

TEST_CASE("approximate subcommand") {
  auto r = run(
      "approximate --group z:2 --cone 'flag:[(1,r2)]' --target discrete "
      "--require '(1,1);(2,1)'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"discrete\": true") != std::string::npos);
  CHECK(r.output.find("\"least\"") != std::string::npos);

  auto d = run(
      "approximate --group z:2 --cone 'flag:[(1,0),(0,1)]' --target dense "
      "--require '(1,1)'");
  CHECK(d.exit_code == 0);
  CHECK(d.output.find("\"discrete\": false") != std::string::npos);
}

TEST_CASE("tower and braid subcommands") {
  auto t = run("tower --rank 3 --census-radius 2");
  CHECK(t.exit_code == 0);
  CHECK(t.output.find("\"count\": 8") != std::string::npos);

  auto b = run("braid --strands 3 --classify 's1.s2.s1^-1'");
  CHECK(b.exit_code == 0);
  CHECK(b.output.find("\"sign\": \"positive\"") != std::string::npos);
  CHECK(b.output.find("s2^-1.s1.s2") != std::string::npos);
}

TEST_CASE("densify emits a verifiable certificate and a plot") {
  auto cert_path = tmpfile("cert.json");
  auto svg_path = tmpfile("plot.svg");
  std::filesystem::remove(cert_path);
  std::filesystem::remove(svg_path);

  auto r = run("densify --group f:2 --cone magnus --require 'x1,x1.x2' --k 2 "
               "--emit-certificate " + cert_path.string() +
               " --plot " + svg_path.string());
  CHECK(r.exit_code == 0);

  std::string cert_text = slurp(cert_path);
  Certificate c = Certificate::from_json(json::parse(cert_text));
  CHECK(c.pipeline == "densify");
  CHECK(c.verdict == "verified");
  CHECK(c.stages["h1"] == "x1^-1.x1^-1.x1^-1.x2.x2.x1.x1");

  std::string svg = slurp(svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("data-f1=") != std::string::npos);
  CHECK(svg.find("data-f2=") != std::string::npos);

  // verify accepts the genuine certificate
  auto v = run("verify " + cert_path.string());
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("verified") != std::string::npos);

  // ... and rejects a tampered one
  json tampered = json::parse(cert_text);
  tampered["stages"]["h1"] = "x1";
  auto bad_path = tmpfile("tampered.json");
  std::ofstream(bad_path) << tampered.dump(2);
  auto vb = run("verify " + bad_path.string());
  CHECK(vb.exit_code == 1);
  CHECK(vb.output.find("h1") != std::string::npos);

  // plot can be regenerated from the certificate alone
  auto svg2_path = tmpfile("plot2.svg");
  std::filesystem::remove(svg2_path);
  auto p = run("plot --certificate " + cert_path.string() + " --out " +
               svg2_path.string());
  CHECK(p.exit_code == 0);
  CHECK(slurp(svg2_path).find("data-f1=") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("check --group q:9 --cone magnus --radius 2").exit_code == 2);
  CHECK(run("classify --group z:2 --cone 'flag:[(1,0)' --element '(1,0)'")
            .exit_code == 2);
  auto mal = run("check --group f:2 --cone '{\"kind\": ' --radius 2");
  CHECK(mal.exit_code == 2);
  CHECK(mal.output.find("byte") != std::string::npos);
  auto trunc = tmpfile("truncated.json");
  std::ofstream(trunc) << "{\"pipeline\": \"che";
  CHECK(run("verify " + trunc.string()).exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("budget exhaustion exits 3") {
  auto r = run("check --group f:2 --cone magnus --radius 5",
               "ORDSPACE_BUDGET=10");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("budget") != std::string::npos);
}
