#include "icgm_cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "icgm/error.hpp"
#include "icgm_cli/commands.hpp"
#include "icgm_cli/suite.hpp"

#ifndef ICGM_CONFIG_DIR
#define ICGM_CONFIG_DIR "configs"
#endif

namespace icgm::cli {

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> replicas;
  unsigned workers = 1;
  std::string format = "json";
  std::string mode;
  std::optional<Index> size;
  std::vector<int> criteria;
  std::string config_dir;
};

void add_common(CLI::App* sub, Flags& f, bool config_required) {
  auto* c = sub->add_option("--config", f.config, "experiment config (JSON)");
  if (config_required) c->required();
  sub->add_option("--seed", f.seed, "master seed, overrides the config");
  sub->add_option("--out", f.out, "output file (default: stdout)");
  sub->add_option("--replicas", f.replicas, "Monte Carlo replicas");
  sub->add_option("--workers", f.workers, "worker threads (0: all cores)");
  sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("ICGM_SEED");
  if (!s) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    fail(Errc::config, std::string("ICGM_SEED is not an unsigned integer: ") + s);
  }
}

void emit(const std::string& text, const Flags& f, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) fail(Errc::config, "cannot write " + f.out);
  file << text;
}

int dispatch(const std::string& name, const Flags& f, std::ostream& out) {
  if (name == "verify-all") {
    SuiteOptions so;
    so.config_dir = !f.config_dir.empty() ? std::filesystem::path(f.config_dir)
                    : !f.config.empty()   ? std::filesystem::path(f.config).parent_path()
                                          : std::filesystem::path(ICGM_CONFIG_DIR);
    if (so.config_dir.empty()) so.config_dir = ".";
    so.seed = f.seed ? f.seed : env_seed();
    so.replicas = f.replicas;
    so.workers = f.workers;
    std::vector<int> ids = f.criteria;
    if (ids.empty())
      for (int k = 1; k <= kCriterionCount; ++k) ids.push_back(k);
    bool pass = false;
    const nlohmann::json j = run_suite(ids, so, pass);
    emit(j.dump(2) + "\n", f, out);
    return pass ? 0 : 1;
  }
  const Config cfg = load_config(f.config, f.seed);
  RunOptions ro;
  ro.replicas = f.replicas;
  ro.workers = f.workers;
  ro.mode = f.mode;
  ro.size = f.size;
  static const std::map<std::string, Outcome (*)(const Config&, const RunOptions&)> table = {
      {"shape", cmd_shape},       {"lpp", cmd_lpp},       {"burke", cmd_burke},
      {"busemann", cmd_busemann}, {"geodesic", cmd_geodesic}, {"cif", cmd_cif},
      {"particles", cmd_particles}, {"couple-check", cmd_couple_check}};
  const Outcome o = table.at(name)(cfg, ro);
  nlohmann::json report = o.report;
  report["command"] = name;
  report["seed"] = cfg.env.seed();
  report["pass"] = o.pass;
  emit(f.format == "csv" ? o.csv : report.dump(2) + "\n", f, out);
  return o.pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inhomogeneous corner growth model laboratory"};
  app.require_subcommand(1, 1);
  Flags f;
  for (const char* name : {"shape", "lpp", "burke", "busemann", "geodesic", "cif", "particles", "couple-check"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub, f, true);
    if (std::string(name) == "particles")
      sub->add_option("--mode", f.mode, "tasep, zrp or couple-check")
          ->check(CLI::IsMember({"tasep", "zrp", "couple-check"}));
    if (std::string(name) == "particles" || std::string(name) == "couple-check")
      sub->add_option("--size", f.size, "coupling window side");
  }
  auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
  add_common(va, f, false);
  va->add_option("--criteria", f.criteria, "comma-separated criterion ids")->delimiter(',');
  va->add_option("--config-dir", f.config_dir, "directory holding the shipped configs");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return dispatch(name, f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace icgm::cli
