#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <initializer_list>
#include <string_view>

#include <json.hpp>

#include "icgm/environment.hpp"
#include "icgm/json_util.hpp"

namespace icgm::cli {

// A config file is an environment object plus an optional "experiment"
// object holding subcommand parameters.
struct Config {
  Environment env;
  nlohmann::json experiment = nlohmann::json::object();
};

void check_experiment(const nlohmann::json& j);

// Seed precedence: override, then the config's "seed", then ICGM_SEED, then 1.
Config config_from_json(nlohmann::json j, std::optional<std::uint64_t> seed_override = std::nullopt);
Config load_config(const std::filesystem::path& path,
                   std::optional<std::uint64_t> seed_override = std::nullopt);

// View of the experiment object; keys are checked against the schema shared
// by all subcommands, so one config file can drive several of them.
class Params {
 public:
  explicit Params(const nlohmann::json& j);
  bool has(const std::string& key) const { return j_.contains(key); }
  template <class T>
  T get(const std::string& key, const T& fallback) const {
    return jsonu::get_or<T>(j_, key, fallback, "experiment");
  }

 private:
  nlohmann::json j_;
};

}  // namespace icgm::cli
