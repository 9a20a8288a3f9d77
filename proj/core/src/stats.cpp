#include "icgm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icgm/error.hpp"
#include "icgm/rng.hpp"

namespace icgm {

EmpiricalSample::EmpiricalSample(std::vector<double> values) {
  values_.reserve(values.size());
  for (double v : values) {
    if (std::isnan(v)) fail(Errc::sample, "NaN in sample");
    if (v == std::numeric_limits<double>::infinity())
      ++n_inf_;
    else if (std::isinf(v))
      fail(Errc::sample, "-inf in sample");
    else
      values_.push_back(v);
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalSample::mean() const {
  if (values_.empty()) fail(Errc::sample, "mean of empty sample");
  if (n_inf_ > 0) return std::numeric_limits<double>::infinity();
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

TestReport TestReport::upper_bound(std::string name, double value, double threshold, std::size_t n,
                                   std::string notes) {
  TestReport r;
  r.name = std::move(name);
  r.value = value;
  r.threshold = threshold;
  r.pass = value <= threshold;
  r.n = n;
  r.notes = std::move(notes);
  return r;
}

void to_json(nlohmann::json& j, const TestReport& r) {
  j = {{"name", r.name}, {"value", r.value}, {"pass", r.pass}, {"n", r.n}};
  if (r.threshold) j["threshold"] = *r.threshold;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.extra.empty()) j["extra"] = r.extra;
}

double ks_distance(const EmpiricalSample& s, const std::function<double(double)>& cdf) {
  const std::size_t n = s.count();
  if (n == 0) fail(Errc::sample, "KS distance of empty sample");
  const double dn = static_cast<double>(n);
  const auto& v = s.values();
  double d = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double F = cdf(v[k]);
    d = std::max({d, std::abs(static_cast<double>(k + 1) / dn - F), std::abs(F - static_cast<double>(k) / dn)});
  }
  // Remaining mass at +inf: compare the empirical plateau with the cdf limit.
  const double plateau = static_cast<double>(v.size()) / dn;
  const double f_top = cdf(std::numeric_limits<double>::max());
  d = std::max(d, std::abs(plateau - f_top));
  return d;
}

double ks_distance_exp(const EmpiricalSample& s, double rate) {
  if (rate == 0.0) {
    // Exp(0) is the point mass at +inf.
    return static_cast<double>(s.finite_count()) / static_cast<double>(s.count());
  }
  return ks_distance(s, [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); });
}

double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.count() == 0 || b.count() == 0) fail(Errc::sample, "KS distance of empty sample");
  const auto& x = a.values();
  const auto& y = b.values();
  const double na = static_cast<double>(a.count()), nb = static_cast<double>(b.count());
  std::size_t i = 0, k = 0;
  double d = 0.0;
  while (i < x.size() || k < y.size()) {
    const double t = (k >= y.size() || (i < x.size() && x[i] <= y[k])) ? x[i] : y[k];
    while (i < x.size() && x[i] <= t) ++i;
    while (k < y.size() && y[k] <= t) ++k;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(k) / nb));
  }
  return d;
}

RateFit exp_rate_fit(const std::vector<double>& values) {
  if (values.empty()) fail(Errc::sample, "rate fit of empty sample");
  double s = 0.0;
  for (double v : values) {
    if (!(v > 0.0) || std::isinf(v)) fail(Errc::sample, "rate fit needs positive finite values");
    s += v;
  }
  const double n = static_cast<double>(values.size());
  const double rate = n / s;
  return {rate, rate / std::sqrt(n)};
}

double chisq_quantile99(int k) {
  if (k <= 0) return 0.0;
  const double z = 2.3263478740408408;
  const double kd = k;
  const double c = 1.0 - 2.0 / (9.0 * kd) + z * std::sqrt(2.0 / (9.0 * kd));
  return kd * c * c * c;
}

ChiSquare atom_chisq(const std::map<Index, std::size_t>& observed, const std::map<Index, double>& pmf) {
  ChiSquare out;
  double total_p = 0.0;
  for (const auto& [k, p] : pmf) total_p += p;
  if (std::abs(total_p - 1.0) > 1e-9) fail(Errc::contract, "pmf does not sum to 1");
  std::size_t n = 0;
  for (const auto& [k, c] : observed) {
    n += c;
    auto it = pmf.find(k);
    if (c > 0 && (it == pmf.end() || it->second <= 0.0)) {
      out.note = "observed outcome " + (k == kInfAtom ? std::string("inf") : std::to_string(k)) +
                 " has zero probability";
      out.statistic = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  if (n == 0) fail(Errc::sample, "chi-square of empty sample");
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double obs = 0.0, expd = 0.0;
  for (const auto& [k, p] : pmf) {
    auto it = observed.find(k);
    obs += it == observed.end() ? 0.0 : static_cast<double>(it->second);
    expd += p * static_cast<double>(n);
    if (expd >= 5.0) {
      cells.emplace_back(obs, expd);
      obs = expd = 0.0;
    }
  }
  if (expd > 0.0 || obs > 0.0) {
    if (cells.empty())
      cells.emplace_back(obs, expd);
    else {
      cells.back().first += obs;
      cells.back().second += expd;
    }
  }
  for (const auto& [o, e] : cells) out.statistic += (o - e) * (o - e) / e;
  out.dof = static_cast<int>(cells.size()) - 1;
  out.critical99 = chisq_quantile99(out.dof);
  out.pass = out.dof == 0 ? out.statistic < 1e-12 : out.statistic <= out.critical99;
  return out;
}

TestReport to_report(const ChiSquare& c, std::string name, std::size_t n) {
  TestReport r;
  r.name = std::move(name);
  r.value = c.statistic;
  r.threshold = c.critical99;
  r.pass = c.pass;
  r.n = n;
  r.notes = c.note;
  r.extra = {{"dof", c.dof}};
  return r;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) fail(Errc::sample, "correlation needs equal nonzero counts");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

CorrMatrix pairwise_corr(const std::vector<std::vector<double>>& samples) {
  const std::size_t m = samples.size();
  for (const auto& s : samples)
    if (s.size() != samples.front().size()) fail(Errc::sample, "correlation needs equal counts");
  CorrMatrix c(m, std::vector<double>(m, 1.0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) c[a][b] = c[b][a] = pearson(samples[a], samples[b]);
  return c;
}

double max_offdiag_abs(const CorrMatrix& m) {
  double best = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (a != b) best = std::max(best, std::abs(m[a][b]));
  return best;
}

namespace {
std::vector<double> standardize(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / n);
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = sd > 0.0 ? (x[k] - m) / sd : 0.0;
  return out;
}

double third_moment(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z,
                    const std::vector<std::size_t>& py, const std::vector<std::size_t>& pz) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[py[k]] * z[pz[k]];
  return std::abs(s / static_cast<double>(x.size()));
}
}  // namespace

double triple_permutation_rank(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& z, int permutations, std::uint64_t seed) {
  if (x.size() != y.size() || x.size() != z.size() || x.size() < 2)
    fail(Errc::sample, "triple test needs equal counts");
  const auto sx = standardize(x), sy = standardize(y), sz = standardize(z);
  std::vector<std::size_t> py(x.size()), pz(x.size());
  std::iota(py.begin(), py.end(), 0);
  std::iota(pz.begin(), pz.end(), 0);
  const double observed = third_moment(sx, sy, sz, py, pz);
  rng::Sequential g(seed);
  int at_least = 0;
  auto shuffle = [&](std::vector<std::size_t>& p) {
    for (std::size_t k = p.size() - 1; k > 0; --k) std::swap(p[k], p[g.below(k + 1)]);
  };
  for (int r = 0; r < permutations; ++r) {
    shuffle(py);
    shuffle(pz);
    if (third_moment(sx, sy, sz, py, pz) >= observed) ++at_least;
  }
  return (1.0 + at_least) / (1.0 + permutations);
}

}  // namespace icgm
