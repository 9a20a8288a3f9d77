#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "icgm_cli/app.hpp"
#include "icgm_cli/config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kConfigs = ICGM_CONFIG_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = icgm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("shape on the sparse example") {
  const Result r = call({"shape", "--config", (kConfigs / "sparse.json").string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["c1"].get<double>() == doctest::Approx(0.1));
  CHECK(j["c2"].get<double>() == doctest::Approx(0.9));
  CHECK(j["command"] == "shape");
}

TEST_CASE("csv output has the fixed header") {
  const Result r = call({"couple-check", "--config", (kConfigs / "homog.json").string(), "--size", "8", "--format", "csv"});
  CHECK(r.code == 0);
  const Result s = call({"shape", "--config", (kConfigs / "sparse.json").string(), "--format", "csv"});
  CHECK(s.out.rfind("xi1,gamma,chi\n", 0) == 0);
}

TEST_CASE("config errors exit with 2 and name the problem") {
  const fs::path bad = temp_file("icgm_bad_key.json", R"({"a":{"type":"constant","c":0.5},"b":{"type":"constant","c":0.5},
    "alpha":{"type":"dirac","at":0.5},"beta":{"type":"dirac","at":0.5},"experiment":{"bogus_key":1}})");
  const Result r = call({"shape", "--config", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("bogus_key") != std::string::npos);

  const fs::path broken = temp_file("icgm_broken.json", "{not json");
  CHECK(call({"shape", "--config", broken.string()}).code == 2);
  CHECK(call({"shape", "--config", "/nonexistent/file.json"}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
}

TEST_CASE("seed precedence") {
  const json base = json::parse(std::ifstream(kConfigs / "homog.json"));
  json j = base;
  j.erase("seed");
  ::setenv("ICGM_SEED", "77", 1);
  CHECK(icgm::cli::config_from_json(j).env.seed() == 77);
  j["seed"] = 5;
  CHECK(icgm::cli::config_from_json(j).env.seed() == 5);
  CHECK(icgm::cli::config_from_json(j, 9).env.seed() == 9);
  ::unsetenv("ICGM_SEED");
}

TEST_CASE("reports are reproducible and independent of workers") {
  const std::string cfg = (kConfigs / "homog.json").string();
  const Result a = call({"busemann", "--config", cfg, "--replicas", "300", "--seed", "4"});
  const Result b = call({"busemann", "--config", cfg, "--replicas", "300", "--seed", "4"});
  const Result c = call({"busemann", "--config", cfg, "--replicas", "300", "--seed", "4", "--workers", "3"});
  const Result d = call({"busemann", "--config", cfg, "--replicas", "300", "--seed", "5"});
  CHECK(a.code != 2);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out != d.out);
}

TEST_CASE("out flag writes the report") {
  const fs::path out = fs::temp_directory_path() / "icgm_out_test.json";
  fs::remove(out);
  const Result r = call({"shape", "--config", (kConfigs / "sparse.json").string(), "--out", out.string()});
  CHECK(r.code == 0);
  REQUIRE(fs::exists(out));
  CHECK(json::parse(std::ifstream(out))["c1"].get<double>() == doctest::Approx(0.1));
}
