#include "icgm/shape.hpp"

#include <cmath>

#include "icgm/error.hpp"

namespace icgm {

namespace {

constexpr double kEndpointOffset = 1e-12;
constexpr double kZTol = 1e-12;
constexpr int kMaxIter = 200;

}  // namespace

ExtReal gamma_z(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                Direction xi, double z) {
  if (z < -alpha.essential_infimum() || z > beta.essential_infimum())
    fail(Errc::domain, "gamma_z: z outside [-ess inf alpha, ess inf beta]");
  ExtReal g = 0.0;
  if (xi.xi1() > 0.0) {
    const ExtReal m = alpha.moment(z, 1);
    g = g + (m.is_finite() ? ExtReal(xi.xi1() * m.value()) : m);
  }
  if (xi.xi2() > 0.0) {
    const ExtReal m = beta.moment(-z, 1);
    g = g + (m.is_finite() ? ExtReal(xi.xi2() * m.value()) : m);
  }
  return g;
}

double gamma_dz(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                Direction xi, double z) {
  double d = 0.0;
  if (xi.xi1() > 0.0) d -= xi.xi1() * alpha.moment(z, 2).as_double();
  if (xi.xi2() > 0.0) d += xi.xi2() * beta.moment(-z, 2).as_double();
  return d;
}

ShapeReport chi_min(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                    double inf_a, double inf_b, Direction xi) {
  const double lo = -inf_a, hi = inf_b;
  if (!(lo < hi)) fail(Errc::invalid_environment, "need inf a + inf b > 0");
  ShapeReport r;
  const double d_lo = gamma_dz(alpha, beta, xi, lo + kEndpointOffset);
  const double d_hi = gamma_dz(alpha, beta, xi, hi - kEndpointOffset);
  if (std::isnan(d_lo) || std::isnan(d_hi))
    fail(Errc::unresolvable, "derivative undefined at both endpoints");
  if (d_lo >= 0.0) {
    r.chi = lo;
    r.at_lower_endpoint = true;
  } else if (d_hi <= 0.0) {
    r.chi = hi;
    r.at_upper_endpoint = true;
  } else {
    double a = lo + kEndpointOffset, b = hi - kEndpointOffset;
    for (int it = 0; it < kMaxIter && b - a > kZTol; ++it) {
      const double m = 0.5 * (a + b);
      (gamma_dz(alpha, beta, xi, m) < 0.0 ? a : b) = m;
    }
    r.chi = 0.5 * (a + b);
  }
  const ExtReal g = gamma_z(alpha, beta, xi, r.chi);
  if (!g.is_finite()) fail(Errc::unresolvable, "shape function infinite at the minimizer");
  r.gamma = g.value();
  return r;
}

ShapeReport chi_min(const Environment& env, Site x, Direction xi) {
  return chi_min(env.alpha(), env.beta(), env.a().tail_inf(x.i), env.b().tail_inf(x.j), xi);
}

Direction rho(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta, double z) {
  if (!(z > -alpha.essential_infimum() && z < beta.essential_infimum()))
    fail(Errc::domain, "rho: z must lie strictly inside (-ess inf alpha, ess inf beta)");
  const ExtReal ma = alpha.moment(z, 2), mb = beta.moment(-z, 2);
  if (!ma.is_finite() || !mb.is_finite()) fail(Errc::domain, "rho: divergent second moment");
  return Direction(mb.value() / (ma.value() + mb.value()));
}

CriticalPair critical_dirs(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                           double inf_a, double inf_b) {
  CriticalPair cp;
  const ExtReal a1 = alpha.moment(-inf_a, 2);
  if (a1.is_pos_inf()) {
    cp.c1 = Direction(0.0);
  } else {
    const double b1 = beta.moment(inf_a, 2).value();
    cp.c1 = Direction(b1 / (a1.value() + b1));
  }
  const ExtReal b2 = beta.moment(-inf_b, 2);
  if (b2.is_pos_inf()) {
    cp.c2 = Direction(1.0);
  } else {
    const double a2 = alpha.moment(inf_b, 2).value();
    cp.c2 = Direction(b2.value() / (a2 + b2.value()));
  }
  return cp;
}

CriticalPair critical_dirs(const Environment& env, Site x) {
  return critical_dirs(env.alpha(), env.beta(), env.a().tail_inf(x.i), env.b().tail_inf(x.j));
}

double thin_limit(const Environment& env, Site x, Axis axis, Index level) {
  if (axis == Axis::vertical) {
    if (level < x.i) fail(Errc::domain, "thin_limit: column bound below x");
    const double amin = env.a().running_min(x.i, level).first;
    return env.beta().moment(amin, 1).as_double();
  }
  if (level < x.j) fail(Errc::domain, "thin_limit: row bound below x");
  const double bmin = env.b().running_min(x.j, level).first;
  return env.alpha().moment(bmin, 1).as_double();
}

Interval linear_limit_interval(const Environment& env, Site x, LinearSide side, Index cesaro_horizon) {
  const ParameterSequence& seq = side == LinearSide::c1 ? env.a() : env.b();
  const Index start = side == LinearSide::c1 ? x.i : x.j;
  const auto declared = seq.declared_cesaro(start);
  const CesaroBounds cb = declared ? *declared : estimate_cesaro(seq, start, cesaro_horizon);
  if (!std::isfinite(cb.limsup) || !std::isfinite(cb.liminf))
    fail(Errc::hypothesis_violation, "Cesaro averages of (c - inf c)^-2 are not finite");
  if (side == LinearSide::c1) {
    const double B = env.beta().moment(env.a().tail_inf(x.i), 2).value();
    return {B / (cb.limsup + B), B / (cb.liminf + B)};
  }
  const double A = env.alpha().moment(env.b().tail_inf(x.j), 2).value();
  return {cb.liminf / (A + cb.liminf), cb.limsup / (A + cb.limsup)};
}

SpeedLaw speed_law(const SubProbabilityMeasure& beta, double b1, double inf_b) {
  if (!(b1 > 0.0) || !(inf_b > 0.0) || inf_b > b1) fail(Errc::domain, "speed law needs 0 < inf b <= b1");
  return {1.0 - inf_b / b1, 1.0 / beta.moment(0.0, 1).value()};
}

double speed_cdf(const SubProbabilityMeasure& beta, double b1, double inf_b, double s) {
  const SpeedLaw law = speed_law(beta, b1, inf_b);
  if (!(s > 0.0) || s > law.max_speed) fail(Errc::domain, "speed_cdf: s outside (0, max speed]");
  if (s == law.max_speed) return 1.0;  // the bisection below only gets within sqrt(tol) here
  static const SubProbabilityMeasure zero = SubProbabilityMeasure::dirac(0.0);
  // xi2 / gamma(xi) decreases from max_speed (xi = e2) to 0 (xi = e1).
  auto ratio = [&](double xi1) {
    const Direction d(xi1);
    return d.xi2() / chi_min(zero, beta, 0.0, inf_b, d).gamma;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
    const double m = 0.5 * (lo + hi);
    (ratio(m) > s ? lo : hi) = m;
  }
  const double chi = chi_min(zero, beta, 0.0, inf_b, Direction(0.5 * (lo + hi))).chi;
  return 1.0 - chi / b1;
}

void to_json(nlohmann::json& j, const ShapeReport& r) {
  j = {{"gamma", r.gamma},
       {"chi", r.chi},
       {"at_lower_endpoint", r.at_lower_endpoint},
       {"at_upper_endpoint", r.at_upper_endpoint}};
}

void to_json(nlohmann::json& j, const Interval& r) { j = nlohmann::json::array({r.lo, r.hi}); }

}  // namespace icgm
