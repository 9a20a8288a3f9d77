#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "icgm/competition.hpp"
#include "icgm/error.hpp"
#include "icgm/lpp.hpp"
#include "icgm/particles.hpp"
#include "icgm/replicas.hpp"
#include "icgm/stats.hpp"

using namespace icgm;

namespace {

const SubProbabilityMeasure one = SubProbabilityMeasure::dirac(1.0);

Environment inhom(std::uint64_t seed = 1) {
  return Environment(ParameterSequence::periodic({0.3, 0.8, 0.5}), ParameterSequence::explicit_list({1.0, 0.4}, 0.9),
                     SubProbabilityMeasure::dirac(0.5), SubProbabilityMeasure::dirac(0.9), seed);
}
Environment zrp(std::uint64_t seed = 1) {
  return Environment(ParameterSequence::constant(0.0), ParameterSequence::explicit_list({1.0, 0.5}, 1.0),
                     SubProbabilityMeasure::dirac(0.0), one, seed);
}
Environment zrp_homog(std::uint64_t seed = 1) {
  return Environment(ParameterSequence::constant(0.0), ParameterSequence::constant(1.0),
                     SubProbabilityMeasure::dirac(0.0), one, seed);
}
Environment homog(std::uint64_t seed = 1) {
  return Environment(ParameterSequence::constant(0.5), ParameterSequence::constant(0.5),
                     SubProbabilityMeasure::dirac(0.5), SubProbabilityMeasure::dirac(0.5), seed);
}

// Reference dynamics: hole i rings at rate a_i and particle j at rate b_j; a
// ring swaps the owner with its neighbour when they form an adjacent
// particle-hole pair. Only labels <= M take part.
struct TwoClock {
  std::vector<Index> P, H;  // positions, index label-1
};

std::vector<double> two_clock_swap_times(const Environment& e, Index M, std::mt19937_64& gen, Site watch_a, Site watch_b,
                                         double t_end, std::size_t& swaps_by_end) {
  std::vector<Index> P(M), H(M);
  for (Index j = 1; j <= M; ++j) P[j - 1] = 1 - j;
  for (Index i = 1; i <= M; ++i) H[i - 1] = i;
  std::vector<double> rates;
  for (Index i = 1; i <= M; ++i) rates.push_back(e.a_at(i));
  for (Index j = 1; j <= M; ++j) rates.push_back(e.b_at(j));
  std::discrete_distribution<std::size_t> pick(rates.begin(), rates.end());
  double total = 0.0;
  for (double r : rates) total += r;
  std::exponential_distribution<double> wait(total);
  // swaps[j] = holes passed by particle j; hole i is next to particle j iff
  // H_i = P_j + 1, which happens exactly when swaps[j] == i-1 and hole i has passed j-1 particles.
  std::vector<Index> passed_by_particle(M + 1, 0), passed_by_hole(M + 1, 0);
  double t = 0.0, ta = -1, tb = -1;
  swaps_by_end = 0;
  while (ta < 0 || tb < 0 || t < t_end) {
    t += wait(gen);
    const std::size_t c = pick(gen);
    Index i, j;
    if (c < static_cast<std::size_t>(M)) {
      i = static_cast<Index>(c) + 1;
      j = passed_by_hole[i] + 1;  // the particle hole i would pass next
      if (j > M || passed_by_particle[j] != i - 1) continue;
    } else {
      j = static_cast<Index>(c) - M + 1;
      i = passed_by_particle[j] + 1;
      if (i > M || passed_by_hole[i] != j - 1) continue;
    }
    ++passed_by_particle[j];
    ++passed_by_hole[i];
    if (t <= t_end) ++swaps_by_end;
    if (Site{i, j} == watch_a) ta = t;
    if (Site{i, j} == watch_b) tb = t;
  }
  return {ta, tb};
}

}  // namespace

TEST_CASE("swap-time recursion") {
  const Environment e = inhom(4);
  const Field<double> T = rost_swap_times(e, 30);
  CHECK(T({1, 1}) == e.weight({1, 1}));
  CHECK(T({2, 1}) == doctest::Approx(e.weight({1, 1}) + e.weight({2, 1})));
  for (Index M : {5, 20, 50}) {
    const Field<double> t = rost_swap_times(e, M);
    const PassageField pf = passage_times(e.weights(Rect{{1, 1}, {M, M}}), {1, 1});
    double worst = 0.0;
    for (Index j = 1; j <= M; ++j)
      for (Index i = 1; i <= M; ++i) worst = std::max(worst, std::abs(t({i, j}) - pf.G({i, j})));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("event-driven TASEP") {
  const Environment e = inhom(6);
  const Index M = 12;
  const TasepTrajectory full = simulate_tasep(e, M, std::numeric_limits<double>::infinity(), false);
  CHECK(full.events.front().t == e.weight({1, 1}));
  CHECK(full.events.size() == static_cast<std::size_t>(M * M));
  const Field<double> T = rost_swap_times(e, M);
  for (double t : {0.5, 2.0, 5.0, 9.0}) {
    std::size_t by_t = 0, table = 0;
    for (const SwapEvent& ev : full.events) by_t += ev.t <= t;
    for (double v : T.data()) table += v <= t;
    CHECK(by_t == table);
  }
  // exclusion order and adjacency at every event
  for (std::size_t k = 0; k < full.events.size(); ++k) {
    const double t = full.events[k].t;
    const auto P = full.particle_positions(t), H = full.hole_positions(t);
    for (Index q = 0; q + 1 < M; ++q) {
      CHECK(P[q + 1] < P[q]);
      CHECK(H[q] < H[q + 1]);
    }
    const SwapEvent& ev = full.events[k];
    // after swapping, hole i sits at i-j and particle j at i-j+1
    CHECK(H[ev.i - 1] == ev.i - ev.j);
    CHECK(P[ev.j - 1] == ev.i - ev.j + 1);
  }
  const TasepTrajectory clipped = simulate_tasep(e, M, 100.0);
  CHECK(clipped.truncated);
  for (const SwapEvent& ev : clipped.events) CHECK(ev.t <= clipped.horizon);
}

TEST_CASE("star pair equals the competition interface") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Environment e = inhom(s);
    const Index M = 15;
    const TasepTrajectory tr = simulate_tasep(e, M, std::numeric_limits<double>::infinity(), false);
    const StarPair sp = star_pair_trajectory(tr);
    const WeightField w = e.weights(Rect{{1, 1}, {M, M}});
    const PassageField pf = passage_times(w, {1, 1});
    const CompetitionInterface ci = competition_interface(w);
    REQUIRE(sp.jumps.size() >= ci.dual.size() - 1);
    CHECK(sp.jumps[0].t == 0.0);
    CHECK(sp.jumps[0].I == 1);
    CHECK(sp.jumps[0].J == 1);
    for (std::size_t n = 0; n < ci.dual.size(); ++n) {
      const Site p = ci.dual[n];
      CHECK(sp.jumps[n].I == p.i);
      CHECK(sp.jumps[n].J == p.j);
      CHECK(sp.jumps[n].t == doctest::Approx(pf.G(p) - w({1, 1})).epsilon(1e-12));
    }
    for (std::size_t n = 1; n < sp.jumps.size(); ++n) {
      const Index dx = (sp.jumps[n].I - sp.jumps[n].J) - (sp.jumps[n - 1].I - sp.jumps[n - 1].J);
      CHECK(std::abs(dx) == 1);
    }
    CHECK(sp.second_class_position(0.0) == 0);
  }
}

TEST_CASE("per-pair clocks and the two-clock dynamics agree in law") {
  const Environment e = inhom(2);
  const Index M = 6;
  std::mt19937_64 gen(12345);
  std::vector<double> a_ref, b_ref, a_ev, b_ev, n_ref, n_ev;
  for (std::uint64_t r = 0; r < 3000; ++r) {
    std::size_t by_end = 0;
    const auto t = two_clock_swap_times(e, M, gen, {2, 2}, {3, 1}, 2.5, by_end);
    a_ref.push_back(t[0]);
    b_ref.push_back(t[1]);
    n_ref.push_back(static_cast<double>(by_end));
    const TasepTrajectory tr = simulate_tasep(e.with_seed(r + 1000), M, std::numeric_limits<double>::infinity(), false);
    std::size_t c = 0;
    for (const SwapEvent& ev : tr.events) {
      if (ev.i == 2 && ev.j == 2) a_ev.push_back(ev.t);
      if (ev.i == 3 && ev.j == 1) b_ev.push_back(ev.t);
      c += ev.t <= 2.5;
    }
    n_ev.push_back(static_cast<double>(c));
  }
  CHECK(ks_two_sample(EmpiricalSample(a_ref), EmpiricalSample(a_ev)) < 0.045);
  CHECK(ks_two_sample(EmpiricalSample(b_ref), EmpiricalSample(b_ev)) < 0.045);
  CHECK(ks_two_sample(EmpiricalSample(n_ref), EmpiricalSample(n_ev)) < 0.045);
}

TEST_CASE("second-class particle drift, homogeneous") {
  const auto xs = run_replicas(1000, 5, 1, [](std::size_t, std::uint64_t seed) {
    const TasepTrajectory tr = simulate_tasep(homog(seed), 500, 201.0);
    return static_cast<double>(star_pair_trajectory(tr).second_class_position(200.0)) / 200.0;
  });
  double m = 0.0;
  for (double x : xs) m += x;
  CHECK(std::abs(m / 1000.0) < 0.05);
}

TEST_CASE("zero range view") {
  CHECK_THROWS_AS(simulate_zrp(inhom(), 50, 10.0), Error);
  try {
    (void)simulate_zrp(inhom(), 50, 10.0);
  } catch (const Error& err) {
    CHECK(err.code() == Errc::mode);
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ZrpRun run = simulate_zrp(zrp(s), 150, 50.0);
    CHECK(run.Z(0.0) == 2);
    Index prev = 2;
    for (double t = 0.0; t <= 50.0; t += 2.5) {
      CHECK(run.Z(t) >= prev);
      prev = run.Z(t);
      for (Index q : zrp_queues(run.tasep, t, 40)) CHECK(q >= 0);
    }
    // I - 1 first-class customers passed the second-class one
    const StarJump last = run.star.at(50.0);
    CHECK(last.I - 1 >= 0);
  }
}

TEST_CASE("limit law of Z") {
  const AtomLaw l = z_limit_distribution(zrp(), 8);
  CHECK(l.atoms.at(2) == doctest::Approx(0.5));
  for (Index n = 3; n <= 8; ++n) CHECK(l.atoms.at(n) == 0.0);
  CHECK(l.at_inf == doctest::Approx(0.5));
  CHECK(l.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z_limit_distribution(zrp_homog(), 5).at_inf == doctest::Approx(1.0));
}

TEST_CASE("speed of the second-class customer, homogeneous") {
  const auto v = run_replicas(1000, 21, 1, [](std::size_t, std::uint64_t seed) {
    const ZrpRun run = simulate_zrp(zrp_homog(seed), 1100, 500.0);
    CHECK_FALSE(run.tasep.truncated);
    return static_cast<double>(run.Z(500.0)) / 500.0;
  });
  // Z starts at 2, so the lattice dominates a plain KS near s = 0 where sqrt
  // is steep; compare on a grid away from the origin.
  double d = 0.0;
  for (double s = 0.05; s < 1.0; s += 0.05) {
    const double f = static_cast<double>(std::count_if(v.begin(), v.end(), [&](double x) { return x <= s; })) / 1000.0;
    d = std::max(d, std::abs(f - std::sqrt(s)));
  }
  CHECK(d < 0.05);
}
