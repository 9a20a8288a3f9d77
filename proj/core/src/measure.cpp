#include "icgm/measure.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "icgm/error.hpp"
#include "icgm/json_util.hpp"

namespace icgm {

namespace {

constexpr int kPanels = 64;

GaussLegendre build_gauss_legendre(int n) {
  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.x[k] = -x;
    g.x[n - 1 - k] = x;
    g.w[k] = g.w[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

SubProbabilityMeasure SubProbabilityMeasure::atomic(std::vector<Atom> atoms) {
  SubProbabilityMeasure m;
  m.atomic_ = true;
  double total = 0.0;
  double inf = INFINITY;
  for (const Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.location))
      fail(Errc::parameter, "atom mass must be >= 0 and location finite");
    total += a.mass;
    if (a.mass > 0.0) inf = std::min(inf, a.location);
  }
  if (!(total > 0.0) || total > 1.0 + 1e-12)
    fail(Errc::parameter, "measure total mass must lie in (0,1]");
  m.atoms_ = std::move(atoms);
  m.mass_ = total;
  m.ess_inf_ = inf;
  return m;
}

SubProbabilityMeasure SubProbabilityMeasure::dirac(double location, double mass) {
  return atomic({{location, mass}});
}

SubProbabilityMeasure SubProbabilityMeasure::power_density(double exponent, double lo, double hi,
                                                           double mass, int nodes) {
  if (!(exponent >= 0.0) || !(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(Errc::parameter, "power density needs exponent >= 0 and lo < hi");
  if (!(mass > 0.0) || mass > 1.0) fail(Errc::parameter, "measure total mass must lie in (0,1]");
  if (nodes < kPanels * 2) fail(Errc::parameter, "quadrature needs at least 128 nodes");
  SubProbabilityMeasure m;
  m.atomic_ = false;
  m.exponent_ = exponent;
  m.lo_ = lo;
  m.hi_ = hi;
  m.mass_ = mass;
  m.nodes_ = nodes;
  m.ess_inf_ = lo;
  return m;
}

SubProbabilityMeasure SubProbabilityMeasure::uniform_density(double lo, double hi, double mass,
                                                             int nodes) {
  return power_density(0.0, lo, hi, mass, nodes);
}

// Substituting t = lo + w u the integral is mass (k+1) * int_0^1 u^k (w u + c)^(-order) du
// with c = lo + z >= 0. Panels are graded geometrically toward u = 0.
double SubProbabilityMeasure::density_integral(double z, int order) const {
  const double w = hi_ - lo_;
  const double c = lo_ + z;
  const double k = exponent_;
  const double pref = mass_ * (k + 1.0);
  if (c == 0.0) return pref * std::pow(w, -order) / (k + 1.0 - order);

  const GaussLegendre& gl = gauss_legendre(nodes_ / kPanels);
  double total = 0.0;
  double right = 1.0;
  for (int p = 0; p < kPanels; ++p) {
    const double left = (p == kPanels - 1) ? 0.0 : right * 0.5;
    const double half = 0.5 * (right - left), mid = 0.5 * (right + left);
    double s = 0.0;
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double u = mid + half * gl.x[q];
      const double base = w * u + c;
      const double f = (k == 0.0 ? 1.0 : std::pow(u, k)) / (order == 1 ? base : base * base);
      s += gl.w[q] * f;
    }
    total += half * s;
    right = left;
  }
  return pref * total;
}

ExtReal SubProbabilityMeasure::moment(double z, int order) const {
  if (order != 1 && order != 2) fail(Errc::contract, "moment order must be 1 or 2");
  if (!std::isfinite(z) || z < -ess_inf_) fail(Errc::domain, "z below minus essential infimum");
  if (atomic_) {
    double s = 0.0;
    for (const Atom& a : atoms_) {
      if (a.mass == 0.0) continue;
      const double d = a.location + z;
      if (d == 0.0) return ExtReal::pos_inf();
      s += a.mass / (order == 1 ? d : d * d);
    }
    return s;
  }
  if (lo_ + z == 0.0 && exponent_ + 1.0 <= order) return ExtReal::pos_inf();
  return density_integral(z, order);
}

void to_json(nlohmann::json& j, const SubProbabilityMeasure& m) {
  if (m.atomic_) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : m.atoms_) atoms.push_back({a.location, a.mass});
    j = {{"type", "atomic"}, {"atoms", atoms}};
  } else {
    j = {{"type", "power"}, {"exponent", m.exponent_}, {"lo", m.lo_},
         {"hi", m.hi_},     {"mass", m.mass_},         {"nodes", m.nodes_}};
  }
}

void from_json(const nlohmann::json& j, SubProbabilityMeasure& m) {
  const std::string where = "measure";
  const auto type = jsonu::get<std::string>(j, "type", where);
  if (type == "atomic" || type == "dirac") {
    if (type == "dirac") {
      jsonu::check_keys(j, {"type", "at", "mass"}, where);
      m = SubProbabilityMeasure::dirac(jsonu::get<double>(j, "at", where),
                                       jsonu::get_or<double>(j, "mass", 1.0, where));
      return;
    }
    jsonu::check_keys(j, {"type", "atoms"}, where);
    std::vector<SubProbabilityMeasure::Atom> atoms;
    for (const auto& a : jsonu::require(j, "atoms", where)) {
      if (!a.is_array() || a.size() != 2) fail(Errc::config, "measure.atoms: expected [location, mass]");
      atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    m = SubProbabilityMeasure::atomic(std::move(atoms));
  } else if (type == "power" || type == "uniform") {
    jsonu::check_keys(j, {"type", "exponent", "lo", "hi", "mass", "nodes"}, where);
    const double k = type == "uniform" ? 0.0 : jsonu::get<double>(j, "exponent", where);
    m = SubProbabilityMeasure::power_density(k, jsonu::get<double>(j, "lo", where),
                                             jsonu::get<double>(j, "hi", where),
                                             jsonu::get_or<double>(j, "mass", 1.0, where),
                                             jsonu::get_or<int>(j, "nodes", 4096, where));
  } else {
    fail(Errc::config, "measure.type: unknown type '" + type + "'");
  }
}

}  // namespace icgm
