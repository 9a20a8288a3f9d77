#include "icgm_cli/config.hpp"

#include <cstdlib>
#include <fstream>

#include "icgm/error.hpp"

namespace icgm::cli {

Config config_from_json(nlohmann::json j, std::optional<std::uint64_t> seed_override) {
  if (!j.is_object()) fail(Errc::config, "config must be a JSON object");
  nlohmann::json exp = nlohmann::json::object();
  if (j.contains("experiment")) {
    exp = j.at("experiment");
    if (!exp.is_object()) fail(Errc::config, "key 'experiment' must be an object");
    j.erase("experiment");
  }
  if (seed_override) {
    j["seed"] = *seed_override;
  } else if (!j.contains("seed")) {
    if (const char* s = std::getenv("ICGM_SEED")) {
      try {
        j["seed"] = std::stoull(s);
      } catch (const std::exception&) {
        fail(Errc::config, std::string("ICGM_SEED is not an unsigned integer: ") + s);
      }
    }
  }
  check_experiment(exp);
  return Config{environment_from_json(j), exp};
}

Config load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) fail(Errc::config, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::config, path.string() + ": " + e.what());
  }
  return config_from_json(std::move(j), seed_override);
}

void check_experiment(const nlohmann::json& j) {
  jsonu::check_keys(j,
                    {"x", "directions", "cdf_points", "size", "u", "v", "z", "side", "linear_side", "ks", "corr", "variant",
                     "xi", "k", "l", "horizon", "levels", "window", "band", "m_max", "direction_horizon",
                     "tolerance", "M", "t_max", "speed_floor", "n_hi"},
                    "experiment");
}

Params::Params(const nlohmann::json& j) : j_(j) { check_experiment(j_); }

}  // namespace icgm::cli
