#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "icgm_cli/config.hpp"

namespace icgm::cli {

struct RunOptions {
  std::optional<std::size_t> replicas;
  unsigned workers = 1;
  std::string mode;          // particles: tasep | zrp | couple-check
  std::optional<Index> size;  // couple-check window
};

// Result of one subcommand: JSON report, CSV table with a fixed header, and
// whether every check in the report passed.
struct Outcome {
  nlohmann::json report = nlohmann::json::object();
  std::string csv;
  bool pass = true;
};

Outcome cmd_shape(const Config& cfg, const RunOptions& opt);
Outcome cmd_lpp(const Config& cfg, const RunOptions& opt);
Outcome cmd_burke(const Config& cfg, const RunOptions& opt);
Outcome cmd_busemann(const Config& cfg, const RunOptions& opt);
Outcome cmd_geodesic(const Config& cfg, const RunOptions& opt);
Outcome cmd_cif(const Config& cfg, const RunOptions& opt);
Outcome cmd_particles(const Config& cfg, const RunOptions& opt);
Outcome cmd_couple_check(const Config& cfg, const RunOptions& opt);

// max |T - G| over [1,size]^2 for the event-driven TASEP, the swap-time
// recursion and the passage field, plus the once-per-pair check.
struct CouplingCheck {
  double max_table_diff = 0.0;
  double max_event_diff = 0.0;
  bool all_swapped_once = true;
};
CouplingCheck coupling_check(const Environment& env, Index size);

}  // namespace icgm::cli
