#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace icgm::cli {

struct SuiteOptions {
  std::filesystem::path config_dir;
  std::optional<std::uint64_t> seed;      // replaces each config's seed (mixed with the criterion id)
  std::optional<std::size_t> replicas;    // cap on Monte Carlo replicas; tolerances widen as sqrt(n0/n)
  unsigned workers = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();
};

inline constexpr int kCriterionCount = 12;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const SuiteOptions& opt);
nlohmann::json to_json(const CriterionResult& r);
nlohmann::json run_suite(const std::vector<int>& ids, const SuiteOptions& opt, bool& all_pass);

}  // namespace icgm::cli
