#include "icgm/environment.hpp"

#include <algorithm>
#include <string>

#include "icgm/error.hpp"
#include "icgm/json_util.hpp"

namespace icgm {

void check_field_size(const Rect& r) {
  if (r.empty()) fail(Errc::size, "empty rectangle");
  if (r.width() > kMaxFieldSites || r.height() > kMaxFieldSites || r.area() > kMaxFieldSites)
    fail(Errc::size, "rectangle exceeds 1e8 sites");
}

namespace {
constexpr Index kDefaultBound = Index{1} << 30;

std::string site_str(Site s) { return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")"; }
}  // namespace

Environment::Environment(ParameterSequence a, ParameterSequence b, SubProbabilityMeasure alpha,
                         SubProbabilityMeasure beta, std::uint64_t seed, Rect window)
    : a_(std::move(a)),
      b_(std::move(b)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      seed_(seed),
      window_(window),
      bulk_(seed, rng::Stream::bulk) {
  validate();
}

Environment::Environment(ParameterSequence a, ParameterSequence b, SubProbabilityMeasure alpha,
                         SubProbabilityMeasure beta, std::uint64_t seed)
    : Environment(a, b, alpha, beta, seed,
                  Rect{{std::max(a.window_lo(), -kDefaultBound), std::max(b.window_lo(), -kDefaultBound)},
                       {std::min(a.window_hi(), kDefaultBound), std::min(b.window_hi(), kDefaultBound)}}) {}

void Environment::validate() const {
  if (window_.empty()) fail(Errc::invalid_environment, "empty window");
  if (!a_.in_window(window_.lo.i) || !a_.in_window(window_.hi.i) || !b_.in_window(window_.lo.j) ||
      !b_.in_window(window_.hi.j))
    fail(Errc::invalid_environment, "window exceeds the sequence windows");
  // Tail infima are nondecreasing in the start index, so the lower corner binds.
  const double s = a_.tail_inf(window_.lo.i) + b_.tail_inf(window_.lo.j);
  if (!(s > 0.0))
    fail(Errc::invalid_environment,
         "inf a + inf b must be positive at window corner " + site_str(window_.lo));
}

void Environment::check_in_window(const Rect& r) const {
  if (!window_.contains(r.lo) || !window_.contains(r.hi))
    fail(Errc::window_violation, "rectangle " + site_str(r.lo) + "-" + site_str(r.hi) + " outside window");
}

double Environment::rate(Site s) const {
  if (!window_.contains(s)) fail(Errc::window_violation, "site " + site_str(s) + " outside window");
  const double r = a_.at(s.i) + b_.at(s.j);
  if (!(r > 0.0)) fail(Errc::invalid_environment, "nonpositive rate at " + site_str(s));
  return r;
}

double Environment::weight(Site s) const { return tau(s) / rate(s); }

WeightField Environment::weights(const Rect& r) const {
  check_in_window(r);
  WeightField w(r);
  std::vector<double> av(static_cast<std::size_t>(r.width()));
  for (Index i = r.lo.i; i <= r.hi.i; ++i) av[static_cast<std::size_t>(i - r.lo.i)] = a_.at(i);
  for (Index j = r.lo.j; j <= r.hi.j; ++j) {
    const double bj = b_.at(j);
    double* out = w.row(j);
    for (Index i = r.lo.i; i <= r.hi.i; ++i) {
      const double rt = av[static_cast<std::size_t>(i - r.lo.i)] + bj;
      if (!(rt > 0.0)) fail(Errc::invalid_environment, "nonpositive rate at " + site_str({i, j}));
      out[i - r.lo.i] = bulk_.exp1(i, j) / rt;
    }
  }
  return w;
}

Environment Environment::with_seed(std::uint64_t seed) const {
  return Environment(a_, b_, alpha_, beta_, seed, window_);
}

void to_json(nlohmann::json& j, const Environment& e) {
  j = {{"a", e.a_}, {"b", e.b_}, {"alpha", e.alpha_}, {"beta", e.beta_}, {"seed", e.seed_},
       {"window", e.window_}};
}

namespace {
template <class T>
T nested(const nlohmann::json& j, const std::string& key) {
  try {
    return jsonu::require(j, key, "").get<T>();
  } catch (const Error& e) {
    if (e.code() != Errc::config) throw;
    fail(Errc::config, "in '" + key + "': " + e.what());
  }
}
}  // namespace

Environment environment_from_json(const nlohmann::json& j) {
  jsonu::check_keys(j, {"a", "b", "alpha", "beta", "seed", "window"}, "");
  auto a = nested<ParameterSequence>(j, "a");
  auto b = nested<ParameterSequence>(j, "b");
  auto alpha = nested<SubProbabilityMeasure>(j, "alpha");
  auto beta = nested<SubProbabilityMeasure>(j, "beta");
  const auto seed = jsonu::get_or<std::uint64_t>(j, "seed", 1, "");
  if (j.contains("window")) return Environment(a, b, alpha, beta, seed, j.at("window").get<Rect>());
  return Environment(a, b, alpha, beta, seed);
}

}  // namespace icgm
