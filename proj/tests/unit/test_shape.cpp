#include <doctest.h>

#include <cmath>

#include "icgm/error.hpp"
#include "icgm/shape.hpp"

using namespace icgm;

namespace {

const SubProbabilityMeasure half = SubProbabilityMeasure::dirac(0.5);
const SubProbabilityMeasure one = SubProbabilityMeasure::dirac(1.0);

Environment sparse_env() {
  return Environment(ParameterSequence::sparse(0.5, 0.25), ParameterSequence::sparse(0.5, 0.25), half, half, 1);
}

// Independent minimizer: golden-section search on a fine grid.
double chi_by_search(const SubProbabilityMeasure& al, const SubProbabilityMeasure& be, double lo, double hi,
                     Direction xi) {
  auto f = [&](double z) { return gamma_z(al, be, xi, z).value(); };
  double a = lo + 1e-9, b = hi - 1e-9;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int k = 0; k < 200; ++k) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d))
      b = d;
    else
      a = c;
  }
  return (a + b) / 2;
}

}  // namespace

TEST_CASE("gamma_z") {
  CHECK(gamma_z(half, half, Direction(0.5), 0.0).value() == doctest::Approx(2.0));
  CHECK(gamma_z(half, half, Direction(1.0), 0.0).value() == doctest::Approx(2.0));
  CHECK(gamma_z(half, half, Direction(0.5), 0.25).value() == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("chi_min on the sparse-recipe measures") {
  auto r = chi_min(half, half, 0.25, 0.25, Direction(0.5));
  CHECK(r.chi == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(r.gamma == doctest::Approx(2.0));
  r = chi_min(half, half, 0.25, 0.25, Direction(0.0));
  CHECK(r.chi == doctest::Approx(-0.25));
  CHECK(r.gamma == doctest::Approx(4.0 / 3.0));
  r = chi_min(half, half, 0.25, 0.25, Direction(0.05));
  CHECK(r.chi == doctest::Approx(-0.25));
  CHECK(r.at_lower_endpoint);
  r = chi_min(half, half, 0.25, 0.25, Direction(0.95));
  CHECK(r.chi == doctest::Approx(0.25));
  CHECK(r.at_upper_endpoint);
  for (double x1 : {0.15, 0.3, 0.6, 0.85})
    CHECK(chi_min(half, half, 0.25, 0.25, Direction(x1)).chi ==
          doctest::Approx(chi_by_search(half, half, -0.25, 0.25, Direction(x1))).epsilon(1e-6));
}

TEST_CASE("rho inverts chi on the concave interval") {
  CHECK(rho(half, half, 0.0).xi1() == doctest::Approx(0.5));
  CHECK(rho(half, half, 0.25).xi1() == doctest::Approx(0.9));
  const double z = chi_min(half, half, 0.25, 0.25, Direction(0.3)).chi;
  CHECK(rho(half, half, z).xi1() == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("critical directions") {
  const CriticalPair f = critical_dirs(sparse_env(), {0, 0});
  CHECK(f.c1.xi1() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(f.c2.xi1() == doctest::Approx(0.9).epsilon(1e-12));
  const Environment ex5(ParameterSequence::iid_power(6, 0, 1, 35), ParameterSequence::constant(1.0),
                        SubProbabilityMeasure::power_density(6, 0, 1), one, 1);
  CHECK(critical_dirs(ex5, {1, 1}).c1.xi1() == doctest::Approx(5.0 / 12.0).epsilon(1e-9));
  const Environment ex3(ParameterSequence::geometric_blocks(1.0, 6, 0.25, 0.4), ParameterSequence::constant(1.0), one,
                        one, 1);
  CHECK(critical_dirs(ex3, {1, 1}).c1.xi1() == doctest::Approx(0.5));
}

TEST_CASE("thin_limit") {
  const Environment e(ParameterSequence::explicit_list({1, 0.5}, 1), ParameterSequence::constant(1.0), one, one, 1);
  CHECK(thin_limit(e, {1, 1}, Axis::vertical, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(thin_limit(e, {1, 1}, Axis::vertical, 1) == doctest::Approx(0.5));
  const Environment h(ParameterSequence::constant(0.5), ParameterSequence::constant(0.5), half, half, 1);
  CHECK(thin_limit(h, {1, 1}, Axis::vertical, 9) == doctest::Approx(1.0));
  CHECK(thin_limit(h, {1, 1}, Axis::horizontal, 4) == doctest::Approx(1.0));
}

TEST_CASE("linear_limit_interval") {
  const Environment ex3(ParameterSequence::geometric_blocks(1.0, 6, 0.25, 0.4), ParameterSequence::constant(1.0), one,
                        one, 1);
  const Interval iv = linear_limit_interval(ex3, {1, 1}, LinearSide::c1);
  CHECK(iv.lo == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(iv.hi == doctest::Approx(0.4).epsilon(1e-9));
  const Environment ex5(ParameterSequence::iid_power(6, 0, 1, 35), ParameterSequence::constant(1.0),
                        SubProbabilityMeasure::power_density(6, 0, 1), one, 1);
  const Interval i5 = linear_limit_interval(ex5, {1, 1}, LinearSide::c1);
  CHECK(i5.lo == doctest::Approx(5.0 / 12.0).epsilon(1e-6));
  CHECK(i5.hi == doctest::Approx(5.0 / 12.0).epsilon(1e-6));
  const Environment ex4(ParameterSequence::isolated_blocks(1.0, 0.25, 1.0), ParameterSequence::constant(1.0), one, one,
                        1);
  const Interval i4 = linear_limit_interval(ex4, {1, 1}, LinearSide::c1);
  CHECK(i4.lo == doctest::Approx(1.0 / 3.0));
  CHECK(i4.hi == doctest::Approx(1.0 / 3.0));
  try {
    (void)linear_limit_interval(sparse_env(), {0, 0}, LinearSide::c1);
    FAIL("no hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::hypothesis_violation);
  }
}

TEST_CASE("speed law") {
  SpeedLaw s = speed_law(one, 1.0, 1.0);
  CHECK(s.max_speed == doctest::Approx(1.0));
  CHECK(s.atom_at_zero == doctest::Approx(0.0));
  CHECK(speed_law(one, 1.0, 0.5).atom_at_zero == doctest::Approx(0.5));
  // homogeneous b = 1: P(v <= s) = sqrt(s)
  for (double v : {0.01, 0.25, 0.5, 0.81})
    CHECK(speed_cdf(one, 1.0, 1.0, v) == doctest::Approx(std::sqrt(v)).epsilon(1e-8));
  CHECK(speed_cdf(one, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  // with inf b = 0.5 the law is the atom plus a continuous part reaching 1 at the max speed
  const SpeedLaw t = speed_law(one, 1.0, 0.5);
  CHECK(speed_cdf(one, 1.0, 0.5, t.max_speed) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(speed_cdf(one, 1.0, 0.5, 1e-9) == doctest::Approx(0.5).epsilon(1e-4));
}
