#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigb/cli.hpp"
#include "sigb/errors.hpp"
#include "sigb/generate.hpp"
#include "sigb/report.hpp"
#include "support/reference.hpp"

using json = nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = sigb::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

// Timing fields vary run to run; everything else must be reproducible.
json without_timings(const std::string& text) {
  json doc = json::parse(text);
  doc.erase("timings_ms");
  return doc;
}

}  // namespace

TEST_CASE("bounds command reports the full chain for a star graph") {
  CliRun r = run({"bounds", fixture("star4.mtx"), "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["command"] == "bounds");
  CHECK(doc["matrix"]["rows"] == 4);
  CHECK(doc["matrix"]["mode"] == "real");
  double schur_raw = doc["bounds"]["schur"]["raw_2p_value"].get<double>();
  double refined_raw = doc["bounds"]["refined"]["raw_2p_value"].get<double>();
  double sigma2 = doc["oracle"]["sigma_squared"].get<double>();
  CHECK(ref::rel_close(schur_raw, 9.0, 1e-10));
  CHECK(ref::rel_close(refined_raw, 3.0, 1e-10));
  CHECK(ref::rel_close(sigma2, 3.0, 1e-10));
  CHECK(doc["bounds"]["walk_lower"]["certified"] == true);
}

TEST_CASE("bounds command honors r and p") {
  CliRun r = run({"bounds", fixture("dense22.mtx"), "--r", "1", "--p", "1", "--format",
                  "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(ref::rel_close(doc["bounds"]["walk_upper"]["raw_2p_value"].get<double>(), 1076.0 / 36.0,
                       1e-10));
  CHECK(ref::rel_close(doc["bounds"]["walk_lower"]["raw_2p_value"].get<double>(), 1552.0 / 52.0,
                       1e-10));
  CHECK(doc["config"]["r"] == 1);
}

TEST_CASE("bounds command on a zero matrix reports exact zero") {
  CliRun r = run({"bounds", fixture("zero.mtx"), "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["sigma_exact_zero"] == true);
}

TEST_CASE("bounds command degrades to exit 3 when the lower bound is inapplicable") {
  CliRun r = run({"bounds", fixture("degenerate.mtx"), "--format", "json-like"});
  CHECK(r.code == 3);
  json doc = json::parse(r.out);
  CHECK(doc["bounds"]["walk_lower"]["error"] == "theorem-inapplicable");
  // the upper bounds are still present and valid
  CHECK(doc["bounds"]["schur"]["raw_2p_value"].get<double>() > 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("oracle command returns sigma for the 2x2 ladder example") {
  CliRun r = run({"oracle", fixture("dense22.mtx"), "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  double want = std::sqrt((30.0 + std::sqrt(884.0)) / 2.0);
  CHECK(ref::rel_close(doc["oracle"]["sigma"].get<double>(), want, 1e-12));
}

TEST_CASE("estimate command converges on the dense example") {
  CliRun r = run({"estimate", fixture("dense22.mtx"), "--tol", "1e-8", "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["converged"] == true);
  double want = std::sqrt((30.0 + std::sqrt(884.0)) / 2.0);
  CHECK(ref::rel_close(doc["estimate"]["value"].get<double>(), want, 1e-6));
  CHECK(doc["upper_trace"].is_array());
  CHECK(doc["lower_trace"].size() == doc["upper_trace"].size());
}

TEST_CASE("estimate command reports inapplicability as exit 3") {
  CliRun r = run({"estimate", fixture("degenerate.mtx"), "--format", "json-like"});
  CHECK(r.code == 3);
  json doc = json::parse(r.out);
  CHECK(doc.contains("error"));
}

TEST_CASE("estimate command on a zero matrix is exact zero, not an error") {
  CliRun r = run({"estimate", fixture("zero.mtx"), "--format", "json-like"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["sigma_exact_zero"] == true);
}

TEST_CASE("blocks command computes compression bounds") {
  CliRun r = run({"blocks", fixture("star4.mtx"), "--row-parts", "2,2", "--col-parts", "2,2",
                  "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  double sigma_b = doc["bounds"]["block_sigma"]["value"].get<double>();
  double mid_raw = doc["bounds"]["compressed_mid"]["raw_2p_value"].get<double>();
  double support_raw = doc["bounds"]["compressed_support"]["raw_2p_value"].get<double>();
  double sigma_a = doc["oracle"]["sigma"].get<double>();
  CHECK(ref::rel_close(sigma_b, 2.0, 1e-10));
  CHECK(ref::rel_close(mid_raw, 3.0 + std::sqrt(2.0), 1e-10));
  CHECK(ref::rel_close(support_raw, 3.0 + 2.0 * std::sqrt(2.0), 1e-10));
  CHECK(sigma_a <= sigma_b * (1 + 1e-8));
  CHECK(sigma_b <= std::sqrt(mid_raw) * (1 + 1e-8));
  CHECK(std::sqrt(mid_raw) <= std::sqrt(support_raw) * (1 + 1e-8));
  // the compression matrix itself is reported
  CHECK(doc["compression"]["values"].is_array());
}

TEST_CASE("blocks command defaults to the trivial partition") {
  CliRun r = run({"blocks", fixture("dense22.mtx"), "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  double want = std::sqrt((30.0 + std::sqrt(884.0)) / 2.0);
  CHECK(ref::rel_close(doc["bounds"]["block_sigma"]["value"].get<double>(), want, 1e-10));
}

TEST_CASE("blocks command rejects partitions that do not cover the matrix") {
  CliRun r = run({"blocks", fixture("star4.mtx"), "--row-parts", "3,3", "--format", "json-like"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("bench command generates, bounds, and summarizes") {
  CliRun r = run({"bench", "--gen", "signed(6,5,0.8)", "--trials", "5", "--seed", "11",
                  "--r", "1", "--format", "json-like"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["rows"].is_array());
  REQUIRE(doc["rows"].size() == 5);
  for (const json& trial : doc["rows"]) {
    if (trial.contains("sigma_exact_zero")) continue;
    double sigma = trial["sigma"].get<double>();
    for (const char* name : {"schur", "refined", "support", "walk_upper"}) {
      const json& b = trial["bounds"][name];
      CHECK(b["value"].get<double>() >= sigma * (1 - 1e-8));
      CHECK(b["tightness"].get<double>() >= 1 - 1e-8);
    }
    const json& lo = trial["bounds"]["walk_lower"];
    if (!lo.contains("error")) {
      CHECK(lo["value"].get<double>() <= sigma * (1 + 1e-8));
    }
  }
  CHECK(doc["summary"]["upper_tightness_min"].get<double>() >= 1 - 1e-8);
}

TEST_CASE("identical invocations produce byte-identical reports modulo timings") {
  std::vector<std::vector<std::string>> invocations = {
      {"bounds", fixture("star4.mtx"), "--r", "2", "--format", "json-like"},
      {"estimate", fixture("dense22.mtx"), "--format", "json-like"},
      {"blocks", fixture("symreal.mtx"), "--row-parts", "2,1", "--col-parts", "1,2", "--format",
       "json-like"},
      {"bench", "--gen", "complex(5,4,0.7)", "--trials", "3", "--seed", "9", "--format",
       "json-like"},
  };
  for (const auto& args : invocations) {
    CliRun r1 = run(args);
    CliRun r2 = run(args);
    REQUIRE(r1.code == r2.code);
    CHECK(without_timings(r1.out).dump(2) == without_timings(r2.out).dump(2));
  }
}

TEST_CASE("usage and parse failures use distinct exit codes") {
  CHECK(run({"bounds"}).code == 1);                                  // missing file
  CHECK(run({"frobnicate", "x"}).code == 1);                         // unknown command
  CHECK(run({"bounds", "/nonexistent/file.mtx"}).code == 2);         // unreadable input
  CHECK(run({"bounds", fixture("star4.mtx"), "--format", "yaml"}).code == 1);
  CHECK(run({"bench", "--gen", "nonsense(3)"}).code == 1);           // unknown generator
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);  // a subcommand is required
}

TEST_CASE("human format stays readable") {
  CliRun r = run({"bounds", fixture("star4.mtx")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("bounds on sigma") != std::string::npos);
  CHECK(r.out.find("schur") != std::string::npos);
}

TEST_CASE("generator specs are deterministic and validated") {
  sigb::Matrix a = sigb::generate("signed(7,6,0.5)", 123);
  sigb::Matrix b = sigb::generate("signed(7,6,0.5)", 123);
  CHECK(a == b);
  sigb::Matrix c = sigb::generate("signed(7,6,0.5)", 124);
  CHECK_FALSE(a == c);

  sigb::Matrix star = sigb::generate("star(5)", 0);
  CHECK(star.rows() == 6);
  CHECK(star.nonzero_count() == 10);

  sigb::Matrix path = sigb::generate("path(4)", 0);
  CHECK(path.rows() == 4);
  CHECK(path.nonzero_count() == 6);

  sigb::Matrix bip = sigb::generate("random-bipartite(3,4,0.9)", 5);
  REQUIRE(bip.rows() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      sigb::cplx v = bip.at(i, j);
      CHECK((v == sigb::cplx{0, 0} || v == sigb::cplx{1, 0}));
      CHECK(v == bip.at(j, i));  // symmetric
      if (i < 3 && j < 3) CHECK(v == sigb::cplx{0, 0});  // no edges inside a side
      if (i >= 3 && j >= 3) CHECK(v == sigb::cplx{0, 0});
    }
  }

  CHECK_THROWS_AS(sigb::generate("signed(7,6)", 1), sigb::ConfigError);
  CHECK_THROWS_AS(sigb::generate("signed(7,6,2.0)", 1), sigb::ConfigError);
  CHECK_THROWS_AS(sigb::generate("star(0)", 1), sigb::ConfigError);
  CHECK_THROWS_AS(sigb::generate("mystery(3,3,0.5)", 1), sigb::ConfigError);
}

TEST_CASE("report validation rejects crossed certified bounds") {
  sigb::BoundReport rep;
  rep.matrix = sigb::describe(ref::from_rows({{1.0}}));
  rep.bounds.push_back({"up", {sigb::BoundKind::upper, 1.0, 1.0, 0, 1, true}});
  rep.bounds.push_back({"lo", {sigb::BoundKind::lower, 2.0, 4.0, 0, 1, true}});
  CHECK_THROWS_AS(rep.validate(), sigb::Error);
  rep.bounds[1].bound.certified = false;  // uncertified values are exempt
  CHECK_NOTHROW(rep.validate());
}
