#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cloning/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cloning::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  CHECK(run({"bounds", "--c", "0.3"}).code == 0);
  CHECK(run({"bounds", "--c", "1.3"}).code == 2);
  CHECK(run({"bounds"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"region", "--v", "0.015", "--c-mode", "bogus"}).code == 2);
  CHECK(run({"verify-ontic", "--c", "0.5", "--resolution", "31"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reports are byte-identical without timing") {
  const auto a = run({"--json", "verify-ontic", "--c", "0.4", "--resolution", "50"});
  const auto b = run({"--json", "verify-ontic", "--c", "0.4", "--resolution", "50"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto t = run({"--json", "--timing", "bounds", "--c", "0.4"});
  CHECK(nlohmann::json::parse(t.out).contains("wall_time_s"));
  CHECK_FALSE(nlohmann::json::parse(a.out).contains("wall_time_s"));
}

TEST_CASE("region names the closest mode") {
  const auto r = run({"--json", "region", "--v", "0.015", "--reference", "0.318", "0.718"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["outputs"]["best_match"]["err_mode"] == "thm2-direct");
  CHECK(j["outputs"]["best_match"]["c_mode"] == "ideal-overlap");
  CHECK(j["inputs"]["err_mode"] == "thm2-direct");
}

TEST_CASE("verify-quantum skips equivalences at degenerate overlaps") {
  const auto r = run({"--json", "verify-quantum", "--v", "0.1", "--c", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK_FALSE(j["warnings"].empty());
  bool skipped = false;
  for (const auto& v : j["verdicts"]) skipped = skipped || v["status"] == "skipped";
  CHECK(skipped);
}

TEST_CASE("curves and model files are written") {
  const auto dir = std::filesystem::temp_directory_path() / "cloning_cli_test";
  std::filesystem::remove_all(dir);
  const auto r = run({"curves", "--out", dir.string(), "--points", "20", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "fig2_quantum.json"));
  CHECK(std::filesystem::exists(dir / "fig3_critical-noise_err-prime_ideal-overlap.json"));
  const auto model = (dir / "model.json").string();
  CHECK(run({"verify-ontic", "--c", "0.2", "--resolution", "20", "--model-out", model}).code == 0);
  CHECK(std::filesystem::file_size(model) > 0);
  std::filesystem::remove_all(dir);
}

}
