#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "helpers.hpp"

using namespace tropk;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(TROPK_SAMPLES_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("tropk_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("validate-semimetric", "[cli]") {
  auto ok = run_cli({"validate-semimetric", "--matrix", sample("path3_metric.json")});
  REQUIRE(ok.code == cli::kPass);
  CHECK(ok.report()["verdict"] == "pass");
  CHECK(ok.report()["rng"] == "mt19937_64");

  auto edges = run_cli({"validate-semimetric", "--edges", sample("path3_edges.txt")});
  CHECK(edges.code == cli::kPass);

  auto strict = write_temp("strict.json", to_json(order_indicator(3, true)).dump());
  auto bad = run_cli({"validate-semimetric", "--matrix", strict});
  CHECK(bad.code == cli::kCheckFailed);
  CHECK(bad.report()["verdict"] == "fail");
}

TEST_CASE("closure and lip-project", "[cli]") {
  auto c = run_cli({"closure", "--matrix", sample("positive_cycle.json")});
  REQUIRE(c.code == cli::kPass);
  for (const auto& row : c.report()["closure"]["entries"])
    for (const auto& e : row) CHECK(e == "+inf");

  auto p = run_cli({"lip-project", "--matrix", sample("path3_metric.json"), "--vector", sample("lip_vector.json")});
  REQUIRE(p.code == cli::kPass);
  CHECK(p.report()["projection"] == json::parse("[3, 4, 5]"));
}

TEST_CASE("membership and kernels", "[cli]") {
  auto m = run_cli({"membership", "--module", sample("nonincreasing_chain4.json"), "--vector",
                    write_temp("v4.json", "[3, 1, 1, -2]")});
  REQUIRE(m.code == cli::kPass);
  CHECK(m.report()["member"] == true);

  auto k = run_cli({"max-kernel", "--module", sample("random_wedge4.json"), "--identity"});
  CHECK(k.code == cli::kPass);
  CHECK(k.report()["verified"] == true);

  auto d = run_cli({"decompose", "--module", sample("lip_collinear.json")});
  CHECK(d.code == cli::kPass);
}

TEST_CASE("check-theorem", "[cli]") {
  auto r = run_cli({"check-theorem", "--id", "4", "--instance", "random-semimetric", "--seed", "3", "--trials", "20"});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.report()["instances_checked"] == 20);
  CHECK(r.report()["instances_holding"] == 20);

  auto w = run_cli({"check-theorem", "--id", "2", "--instance", sample("window5.json")});
  // a failed precondition is a failed check
  CHECK(w.code == cli::kCheckFailed);
  CHECK(w.report()["report"]["verdict"] == "precondition-failed");
}

TEST_CASE("demos", "[cli]") {
  auto e = run_cli({"demo", "example7", "--window", "10"});
  REQUIRE(e.code == cli::kPass);
  auto j = e.report();
  CHECK(j["is_integral"] == false);
  CHECK(j["bounds_decreasing"] == true);
  CHECK(j["bound_below_minus_n"] == true);
  auto c = run_cli({"demo", "concave"});
  CHECK(c.code == cli::kPass);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(run_cli({"check-theorem", "--id", "9", "--instance", "full-KX"}).code == cli::kUsage);
  auto malformed = run_cli({"closure", "--matrix", sample("malformed.json")});
  CHECK(malformed.code == cli::kUsage);
  CHECK_THAT(malformed.err, Catch::Matchers::ContainsSubstring("malformed.json:4:3"));
  CHECK(run_cli({"closure", "--matrix", "/nonexistent.json"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kPass);
}

TEST_CASE("semiring mismatch is a usage error", "[cli]") {
  json op{{"form", "integral"},
          {"kernel", {{"semiring", "zmax-complete"}, {"entries", json::parse("[[0, -1, -2], [-1, 0, -1], [-2, -1, 0]]")}}}};
  auto path = write_temp("zop.json", op.dump());
  auto r = run_cli({"max-kernel", "--module", sample("lip_collinear.json"), "--operator", path});
  CHECK(r.code == cli::kUsage);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("semiring"));
}

TEST_CASE("output is deterministic", "[cli]") {
  const std::vector<std::string> args{"check-theorem", "--id", "1", "--instance", "random-wedge", "--seed", "5",
                                      "--trials", "10"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.code == cli::kPass);
  CHECK(a.out == b.out);
  CHECK(a.out.find("elapsed_ms") == std::string::npos);

  auto file = std::filesystem::temp_directory_path() / "tropk_test_report.json";
  auto c = run_cli({"demo", "concave", "--output", file.string()});
  CHECK(c.out.empty());
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(json::parse(ss.str())["verdict"] == "pass");
}

TEST_CASE("seed from the environment", "[cli]") {
  ::setenv("TROPK_SEED", "17", 1);
  auto r = run_cli({"demo", "concave"});
  CHECK(r.report()["seed"] == 17);
  ::setenv("TROPK_SEED", "abc", 1);
  CHECK(run_cli({"demo", "concave"}).code == cli::kUsage);
  ::unsetenv("TROPK_SEED");
}

TEST_CASE("instance build round trip", "[cli]") {
  auto path = std::filesystem::temp_directory_path() / "tropk_test_chain.json";
  auto r = run_cli({"instance", "build", "--name", "nonincreasing-chain", "--size", "3", "--out", path.string()});
  REQUIRE(r.code == cli::kPass);
  auto v = module_from_json(read_json_file(path.string()));
  CHECK(v.generators() == nonincreasing_chain(3).generators());
}
