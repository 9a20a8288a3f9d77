#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "icgm/error.hpp"
#include "icgm/lpp.hpp"
#include "icgm/stationary.hpp"
#include "icgm/stats.hpp"

using namespace icgm;

namespace {

Environment homog() {
  return Environment(ParameterSequence::constant(0.5), ParameterSequence::constant(0.5),
                     SubProbabilityMeasure::dirac(0.5), SubProbabilityMeasure::dirac(0.5), 3);
}

Environment inhom() {
  return Environment(ParameterSequence::explicit_list({1.0, 0.5}, 1.0), ParameterSequence::constant(1.0),
                     SubProbabilityMeasure::dirac(1.0), SubProbabilityMeasure::dirac(1.0), 8);
}

}  // namespace

TEST_CASE("boundary rates") {
  const Environment e = homog();
  std::vector<double> south, west;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    const StationaryModel m = build_stationary(e.with_seed(s), {1, 1}, {3, 3}, 0.0, Side::south_west);
    south.push_back(m.field({2, 0}));
    west.push_back(m.field({0, 2}));
    CHECK(m.field({0, 0}) == 0.0);
    CHECK(m.field({2, 2}) == e.with_seed(s).weight({2, 2}));
  }
  CHECK(ks_distance_exp(EmpiricalSample(south), 0.5) < 0.03);
  CHECK(ks_distance_exp(EmpiricalSample(west), 0.5) < 0.03);

  const Environment f = inhom();
  std::vector<double> col1;
  for (std::uint64_t s = 0; s < 4000; ++s)
    col1.push_back(build_stationary(f.with_seed(s), {2, 1}, {4, 3}, 0.2, Side::south_west).field({2, 0}));
  // a_2 = 0.5, z = 0.2
  CHECK(ks_distance_exp(EmpiricalSample(col1), 0.7) < 0.03);
}

TEST_CASE("boundary parameter must be interior") {
  const Environment e(ParameterSequence::constant(0.5), ParameterSequence::constant(0.25),
                      SubProbabilityMeasure::dirac(0.5), SubProbabilityMeasure::dirac(0.25), 1);
  CHECK_THROWS_AS(build_stationary(e, {1, 1}, {3, 3}, 0.25, Side::south_west), Error);
  CHECK_THROWS_AS(build_stationary(e, {1, 1}, {3, 3}, -0.5, Side::north_east), Error);
  CHECK_NOTHROW(build_stationary(e, {1, 1}, {3, 3}, 0.2, Side::north_east));
}

TEST_CASE("burke_increments counts and path partition") {
  const StationaryModel m = build_stationary(homog(), {1, 1}, {5, 5}, 0.0, Side::south_west);
  const LatticePath p = default_burke_path(m);
  const auto vars = burke_increments(m, p);
  const auto count = [&](BurkeVariable::Kind k) {
    return std::count_if(vars.begin(), vars.end(), [&](const BurkeVariable& b) { return b.kind == k; });
  };
  CHECK(count(BurkeVariable::Kind::I) == 5);
  CHECK(count(BurkeVariable::Kind::J) == 5);
  // the 11 path sites meet every diagonal once; the other 25 sites are dual or bulk
  CHECK(count(BurkeVariable::Kind::dual) + count(BurkeVariable::Kind::bulk) == 25);
  // increments along the path telescope between its end points
  const PassageField pf = passage_times(m.field, m.corner());
  double sum = 0.0;
  for (const BurkeVariable& b : vars)
    if (b.kind == BurkeVariable::Kind::I) sum += b.value;
    else if (b.kind == BurkeVariable::Kind::J) sum -= b.value;
  CHECK(sum == doctest::Approx(pf.G({5, 0}) - pf.G({0, 5})));
}

TEST_CASE("Burke property, south-west and north-east") {
  for (Side side : {Side::south_west, Side::north_east}) {
    const Environment e = inhom();
    const Site u{1, 1}, v{4, 4};
    const LatticePath p = default_burke_path(build_stationary(e, u, v, 0.1, side));
    const BurkeReport r = burke_test(e, u, v, 0.1, side, p, 4000, 1, BurkeThresholds{0.035, 0.08});
    CHECK_FALSE(r.insufficient_power);
    CHECK(r.max_ks < 0.035);
    CHECK(r.max_ks_bulk < 0.035);
    CHECK(r.max_abs_corr < 0.08);
    CHECK(r.pass);
  }
}

TEST_CASE("too few replicas is flagged, not judged") {
  const Environment e = homog();
  const LatticePath p = default_burke_path(build_stationary(e, {1, 1}, {3, 3}, 0.0, Side::south_west));
  const BurkeReport r = burke_test(e, {1, 1}, {3, 3}, 0.0, Side::south_west, p, 10);
  CHECK(r.insufficient_power);
  CHECK_FALSE(r.pass);
}

TEST_CASE("dependence is detected") {
  // bulk weights of a model with the wrong boundary rate fail the marginal test
  const Environment e = homog();
  std::vector<double> hat;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    const StationaryModel m = build_stationary(e.with_seed(s), {1, 1}, {4, 4}, 0.0, Side::south_west);
    const PassageField pf = passage_times(m.field, m.corner());
    hat.push_back(pf.G({4, 4}) - pf.G({3, 4}));
  }
  // terminal increment has law Exp(a + z) = Exp(0.5) and not Exp(1)
  CHECK(ks_distance_exp(EmpiricalSample(hat), 0.5) < 0.035);
  CHECK(ks_distance_exp(EmpiricalSample(hat), 1.0) > 0.1);
}
