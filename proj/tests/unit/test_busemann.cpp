#include <doctest.h>

#include <cmath>

#include "icgm/busemann.hpp"
#include "icgm/error.hpp"
#include "icgm/lpp.hpp"
#include "icgm/replicas.hpp"
#include "icgm/shape.hpp"
#include "icgm/stats.hpp"

using namespace icgm;

namespace {

const SubProbabilityMeasure one = SubProbabilityMeasure::dirac(1.0);
const SubProbabilityMeasure half = SubProbabilityMeasure::dirac(0.5);

Environment trap(std::uint64_t seed = 1) {
  return Environment(ParameterSequence::explicit_list({1.0, 0.5}, 1.0), ParameterSequence::constant(1.0), one, one,
                     seed);
}
Environment homog(std::uint64_t seed = 1) {
  return Environment(ParameterSequence::constant(0.5), ParameterSequence::constant(0.5), half, half, seed);
}

}  // namespace

TEST_CASE("thin Busemann oracles") {
  const BusemannPair p = thin_busemann(trap(), {1, 1}, BusemannIndex::column(2), 50);
  CHECK(p.hor.oracle_rate == doctest::Approx(0.5));
  CHECK(p.ver.oracle_rate == doctest::Approx(1.5));
  const BusemannPair q = thin_busemann(trap(), {1, 1}, BusemannIndex::column(1), 50);
  CHECK(q.hor.value == ExtReal::pos_inf());
  CHECK(q.ver.value.value() == doctest::Approx(trap().weight({1, 1})));
}

TEST_CASE("recovery: min(hor, ver) = w_x at finite horizon") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Environment e = homog(s);
    const BusemannPair p = directional_busemann(e, {1, 1}, Direction(0.3), 40);
    CHECK(min(p.hor.value, p.ver.value).value() == doctest::Approx(e.weight({1, 1})).epsilon(1e-12));
    const BusemannPair t = thin_busemann(trap(s), {1, 1}, BusemannIndex::row(3), 40);
    CHECK(min(t.hor.value, t.ver.value).value() == doctest::Approx(trap(s).weight({1, 1})).epsilon(1e-12));
  }
}

TEST_CASE("directional oracle rates") {
  const BusemannPair p = directional_busemann(homog(), {1, 1}, Direction(0.5), 20);
  CHECK(p.hor.oracle_rate == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p.ver.oracle_rate == doctest::Approx(0.5).epsilon(1e-9));
  const Environment sparse_env(ParameterSequence::sparse(0.5, 0.25), ParameterSequence::sparse(0.5, 0.25), half, half, 1);
  const BusemannPair f = directional_busemann(sparse_env, {3, 3}, Direction(0.05), 20);
  CHECK(f.hor.oracle_rate == doctest::Approx(sparse_env.a_at(3) - 0.25));
}

TEST_CASE("thin Busemann values are monotone in the horizon") {
  // column index: the horizontal increment increases and the vertical one decreases with n
  for (std::uint64_t s = 0; s < 10; ++s) {
    double prev_h = -1e300, prev_v = 1e300;
    for (Index n : {5, 10, 20, 40, 80}) {
      const BusemannPair p = thin_busemann(trap(s), {1, 1}, BusemannIndex::column(3), n);
      CHECK(p.hor.value.value() >= prev_h - 1e-12);
      CHECK(p.ver.value.value() <= prev_v + 1e-12);
      prev_h = p.hor.value.value();
      prev_v = p.ver.value.value();
    }
  }
}

TEST_CASE("thin Busemann law, small scale") {
  const auto pairs = run_replicas(2000, 77, 1, [](std::size_t, std::uint64_t seed) {
    return thin_busemann(trap(seed), {1, 1}, BusemannIndex::column(2), 400);
  });
  std::vector<double> h, v;
  for (const auto& p : pairs) {
    h.push_back(p.hor.value.value());
    v.push_back(p.ver.value.value());
  }
  CHECK(ks_distance_exp(EmpiricalSample(h), 0.5) < 0.045);
  CHECK(ks_distance_exp(EmpiricalSample(v), 1.5) < 0.045);
}

TEST_CASE("Busemann geodesics") {
  const BusemannGeodesic g = busemann_geodesic(trap(), {1, 1}, BusemannIndex::column(1), 30);
  for (const Site& s : g.path.sites()) CHECK(s.i == 1);
  std::size_t trapped = 0;
  for (std::uint64_t s = 0; s < 40; ++s) trapped += trapping_diagnostic(trap(s), {1, 1}, 2, 200).reached;
  CHECK(trapped >= 36);
  const TrapReport k1 = trapping_diagnostic(trap(), {1, 1}, 1, 10);
  CHECK(k1.trap_column == 1);
  CHECK(k1.first_hit == 0);
  // first global minimum ahead of x traps the column geodesic
  const Environment ex1(ParameterSequence::explicit_list({1.0, 0.8, 0.4, 0.9, 0.4}, 1.0),
                        ParameterSequence::constant(1.0), one, one, 5);
  CHECK(trapping_diagnostic(ex1, {1, 1}, 5, 50).trap_column == 3);
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const BusemannGeodesic d = busemann_geodesic(homog(s), {1, 1}, BusemannIndex::direction(Direction(0.5)), 200);
    mean += static_cast<double>(d.path.back().i - 1) / 200.0;
  }
  CHECK(mean / 100 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("coalescence") {
  const CoalescenceResult same = coalescence_check(homog(), {1, 1}, {1, 1}, Direction(0.5), 50, 20);
  CHECK(same.fraction == 1.0);
  const CoalescenceResult c = coalescence_check(homog(), {1, 1}, {3, 1}, Direction(0.5), 200, 40);
  double prev = 0.0;
  for (Index h : {10, 50, 100, 200}) {
    const double f = coalesced_fraction(c, 2, h);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(prev >= 0.8);
}

TEST_CASE("direction statistics") {
  std::vector<Site> s{{0, 0}};
  for (int k = 0; k < 100; ++k) s.push_back(s.back() + e1);
  const DirectionStats st = direction_statistics(LatticePath(PathKind::up_right, s), 10, 100);
  CHECK(st.min == 1.0);
  CHECK(st.max == 1.0);
  CHECK(st.count == 91);
}

TEST_CASE("stationary geodesic direction, iid power rates") {
  const Environment ex5(ParameterSequence::iid_power(6, 0, 1, 35), ParameterSequence::constant(1.0),
                        SubProbabilityMeasure::power_density(6, 0, 1), one, 2);
  const StationaryGeodesic g = stationary_busemann_geodesic(ex5, {1, 1}, 0.0, 3000);
  CHECK_FALSE(g.escaped);
  const DirectionStats st = direction_statistics(g.path, 1500, 3000);
  CHECK(st.mean == doctest::Approx(5.0 / 12.0).epsilon(0.12));
}
