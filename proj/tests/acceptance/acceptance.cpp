// Acceptance gate: one PASS/FAIL line per criterion. A criterion fails when
// its checks fail or when it exceeds its runtime budget.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "icgm/error.hpp"
#include "icgm_cli/app.hpp"
#include "icgm_cli/suite.hpp"

namespace fs = std::filesystem;
using icgm::cli::SuiteOptions;

namespace {

// seconds, single core
constexpr double kBudget[13] = {0, 1, 5, 5, 60, 120, 120, 60, 120, 180, 600, 120, 300};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Two separate CLI invocations must write byte-identical reports.
bool cli_bytes_identical(std::string& note) {
  const fs::path dir = fs::temp_directory_path();
  std::string outs[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("icgm_accept_" + std::to_string(k) + ".json");
    fs::remove(out);
    std::ostringstream o, e;
    const int code = icgm::cli::run({"verify-all", "--config-dir", ICGM_CONFIG_DIR, "--criteria", "1,2,3,5,8",
                                     "--replicas", "200", "--workers", k == 0 ? "1" : "2", "--out", out.string()},
                                    o, e);
    if (code == 2) {
      note = "cli error: " + e.str();
      return false;
    }
    outs[k] = slurp(out);
  }
  note = "cli reports " + std::to_string(outs[0].size()) + " bytes";
  return !outs[0].empty() && outs[0] == outs[1];
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  if (argc > 1) {
    std::stringstream s(argv[1]);
    for (std::string tok; std::getline(s, tok, ',');) ids.push_back(std::stoi(tok));
  } else {
    for (int id = 1; id <= icgm::cli::kCriterionCount; ++id) ids.push_back(id);
  }

  SuiteOptions opt;
  opt.config_dir = ICGM_CONFIG_DIR;
  int failed = 0;
  for (int id : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    try {
      const icgm::cli::CriterionResult r = icgm::cli::run_criterion(id, opt);
      pass = r.pass;
      if (id == 12 && pass) {
        pass = cli_bytes_identical(note);
      }
      if (!pass) std::cerr << "criterion " << id << " detail: " << r.detail.dump() << "\n";
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kBudget[id]) {
      pass = false;
      note += (note.empty() ? "" : "; ") + std::string("over runtime budget");
    }
    char line[256];
    std::snprintf(line, sizeof line, "[%s] criterion %2d  %-36s %8.2fs / %.0fs", pass ? "PASS" : "FAIL", id,
                  icgm::cli::criterion_title(id).c_str(), secs, kBudget[id]);
    std::cout << line << (note.empty() ? "" : "  (" + note + ")") << std::endl;
    failed += !pass;
  }
  std::cout << (failed ? "ACCEPTANCE FAILED: " + std::to_string(failed) + " criteria" : std::string("ACCEPTANCE PASSED"))
            << std::endl;
  return failed ? 1 : 0;
}
