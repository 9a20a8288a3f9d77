#include <doctest.h>

#include <cmath>
#include <random>

#include "icgm/replicas.hpp"
#include "icgm/stats.hpp"

using namespace icgm;

TEST_CASE("KS distance") {
  // a single point at the median of Exp(1)
  CHECK(ks_distance_exp(EmpiricalSample({std::log(2.0)}), 1.0) == doctest::Approx(0.5));
  std::mt19937_64 g(3);
  std::exponential_distribution<double> e1(1.0), e2(2.0);
  std::vector<double> a, b;
  for (int k = 0; k < 5000; ++k) {
    a.push_back(e1(g));
    b.push_back(e2(g));
  }
  CHECK(ks_distance_exp(EmpiricalSample(a), 1.0) < 0.03);
  CHECK(ks_distance_exp(EmpiricalSample(b), 1.0) > 0.1);
  CHECK(ks_two_sample(EmpiricalSample(a), EmpiricalSample(a)) == 0.0);
  CHECK(ks_two_sample(EmpiricalSample(a), EmpiricalSample(b)) > 0.1);
  const RateFit f = exp_rate_fit(b);
  CHECK(std::abs(f.rate - 2.0) < 4 * f.stderr_);
}

TEST_CASE("infinite values count against the CDF") {
  const double inf = std::numeric_limits<double>::infinity();
  const EmpiricalSample s({0.1, inf, inf, 0.2});
  CHECK(s.infinite_count() == 2);
  CHECK(s.finite_count() == 2);
  CHECK(ks_distance(s, [](double x) { return std::min(1.0, x); }) >= 0.5 - 1e-12);
}

TEST_CASE("atom chi-square") {
  const std::map<Index, double> pmf{{1, 0.25}, {2, 0.25}, {kInfAtom, 0.5}};
  const ChiSquare perfect = atom_chisq({{1, 250}, {2, 250}, {kInfAtom, 500}}, pmf);
  CHECK(perfect.statistic == doctest::Approx(0.0));
  CHECK(perfect.pass);
  const ChiSquare missing = atom_chisq({{1, 500}, {kInfAtom, 500}}, pmf);
  CHECK_FALSE(missing.pass);
  const ChiSquare impossible = atom_chisq({{1, 250}, {3, 1}, {2, 250}, {kInfAtom, 500}}, pmf);
  CHECK_FALSE(impossible.pass);
  CHECK(impossible.note.find("zero probability") != std::string::npos);
  CHECK(chisq_quantile99(1) == doctest::Approx(6.635).epsilon(0.02));
  CHECK(chisq_quantile99(10) == doctest::Approx(23.209).epsilon(0.01));
}

TEST_CASE("correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5.5};
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));
  const CorrMatrix m = pairwise_corr({x, neg, x});
  CHECK(max_offdiag_abs(m) == doctest::Approx(1.0));
}

TEST_CASE("replica results do not depend on the worker count") {
  auto f = [](std::size_t r, std::uint64_t seed) { return static_cast<double>(seed % 1000) + static_cast<double>(r); };
  CHECK(run_replicas(257, 42, 1, f) == run_replicas(257, 42, 3, f));
  CHECK(run_replicas(10, 42, 1, f) != run_replicas(10, 43, 1, f));
}
