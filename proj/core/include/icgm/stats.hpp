#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "icgm/lattice.hpp"

namespace icgm {

// Sorted finite values; +inf values are kept as a separate count.
class EmpiricalSample {
 public:
  EmpiricalSample() = default;
  explicit EmpiricalSample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t finite_count() const { return values_.size(); }
  std::size_t infinite_count() const { return n_inf_; }
  std::size_t count() const { return values_.size() + n_inf_; }
  double mean() const;

 private:
  std::vector<double> values_;
  std::size_t n_inf_ = 0;
};

struct TestReport {
  std::string name;
  double value = 0.0;
  std::optional<double> threshold;
  bool pass = false;
  std::size_t n = 0;
  std::string notes;
  nlohmann::json extra = nlohmann::json::object();

  // pass = value <= threshold when a threshold is set.
  static TestReport upper_bound(std::string name, double value, double threshold, std::size_t n,
                                std::string notes = {});
};
void to_json(nlohmann::json& j, const TestReport& r);

double ks_distance(const EmpiricalSample& s, const std::function<double(double)>& cdf);
double ks_distance_exp(const EmpiricalSample& s, double rate);
double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

struct RateFit {
  double rate, stderr_;
};
RateFit exp_rate_fit(const std::vector<double>& values);

// Atom key for an infinite outcome.
inline constexpr Index kInfAtom = std::numeric_limits<Index>::max();

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double critical99 = 0.0;
  bool pass = false;
  std::string note;
};
// Pearson chi-square; adjacent cells (in key order) are merged until every
// expected count is >= 5.
ChiSquare atom_chisq(const std::map<Index, std::size_t>& observed, const std::map<Index, double>& pmf);
TestReport to_report(const ChiSquare& c, std::string name, std::size_t n);
// 99th percentile of chi-square(k) via the Wilson-Hilferty approximation.
double chisq_quantile99(int k);

using CorrMatrix = std::vector<std::vector<double>>;
double pearson(const std::vector<double>& x, const std::vector<double>& y);
CorrMatrix pairwise_corr(const std::vector<std::vector<double>>& samples);
double max_offdiag_abs(const CorrMatrix& m);

// Permutation test of mutual independence for a triple using the normalized
// third joint central moment; returns the fraction of permutations whose
// statistic is at least the observed one.
double triple_permutation_rank(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& z, int permutations, std::uint64_t seed);

}  // namespace icgm
