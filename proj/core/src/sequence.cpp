#include "icgm/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "icgm/error.hpp"
#include "icgm/json_util.hpp"
#include "icgm/rng.hpp"

namespace icgm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(Errc::parameter, std::string(what) + " must be positive");
}

double geometric_value(const ParameterSequence::GeometricBlocks& g, Index i) {
  if (i < 1) return g.base;
  const double x = static_cast<double>(i);
  const auto k0 = static_cast<Index>(std::floor(std::log(x) / std::log(g.t)));
  for (Index k = std::max<Index>(1, k0 - 1); k <= k0 + 1; ++k) {
    const double start = std::pow(g.t, static_cast<double>(k));
    const double len = std::pow(g.t, (1.0 - 2.0 * g.p) * static_cast<double>(k));
    if (x >= start && x < start + len)
      return std::sqrt(g.r) * std::pow(g.t, -g.p * static_cast<double>(k));
  }
  return g.base;
}

double isolated_value(const ParameterSequence::IsolatedBlocks& b, Index i) {
  if (i < 1) return b.base;
  auto k = static_cast<Index>(std::sqrt(static_cast<double>(i)));
  while (k * k > i) --k;
  while ((k + 1) * (k + 1) <= i) ++k;
  const double kd = static_cast<double>(k);
  if (static_cast<double>(i - k * k) < std::pow(kd, b.p))
    return std::sqrt(b.r / 2.0) * std::pow(kd, -(1.0 - b.p) / 2.0);
  return b.base;
}

bool is_power_of(Index i, Index radix) {
  if (i < 1) return false;
  while (i % radix == 0) i /= radix;
  return i == 1;
}

}  // namespace

ParameterSequence::ParameterSequence(Recipe r, Index lo, Index hi)
    : recipe_(std::move(r)), window_lo_(lo), window_hi_(hi) {}

ParameterSequence ParameterSequence::constant(double c) {
  if (!std::isfinite(c)) fail(Errc::parameter, "constant rate must be finite");
  return ParameterSequence(Constant{c});
}

ParameterSequence ParameterSequence::explicit_list(std::vector<double> values, double tail,
                                                   Index start) {
  for (double v : values)
    if (!std::isfinite(v)) fail(Errc::parameter, "explicit rates must be finite");
  if (!std::isfinite(tail)) fail(Errc::parameter, "tail rate must be finite");
  return ParameterSequence(Explicit{std::move(values), tail, start}, start, kIndexBound);
}

ParameterSequence ParameterSequence::periodic(std::vector<double> values, Index offset) {
  if (values.empty()) fail(Errc::parameter, "periodic recipe needs at least one value");
  for (double v : values)
    if (!std::isfinite(v)) fail(Errc::parameter, "periodic rates must be finite");
  return ParameterSequence(Periodic{std::move(values), offset});
}

ParameterSequence ParameterSequence::geometric_blocks(double base, double t, double p, double r) {
  require_positive(base, "base");
  require_positive(r, "r");
  if (!(t > 1.0)) fail(Errc::parameter, "geometric blocks need t > 1");
  if (!(p > 0.0 && p < 0.5)) fail(Errc::parameter, "geometric blocks need p in (0, 1/2)");
  // blocks must not reach the next block start: 1 + t^(-2pk) < t for all k >= 1
  if (!(1.0 + std::pow(t, -2.0 * p) < t)) fail(Errc::parameter, "geometric blocks overlap");
  return ParameterSequence(GeometricBlocks{base, t, p, r});
}

ParameterSequence ParameterSequence::isolated_blocks(double base, double p, double r) {
  require_positive(base, "base");
  require_positive(r, "r");
  if (!(p > 0.0 && p < 0.5)) fail(Errc::parameter, "isolated blocks need p in (0, 1/2)");
  return ParameterSequence(IsolatedBlocks{base, p, r});
}

ParameterSequence ParameterSequence::sparse(double base, double special, Index radix) {
  if (!std::isfinite(base) || !std::isfinite(special)) fail(Errc::parameter, "rates must be finite");
  if (radix < 2) fail(Errc::parameter, "sparse radix must be >= 2");
  return ParameterSequence(Sparse{base, special, radix});
}

ParameterSequence ParameterSequence::iid_power(double exponent, double lo, double hi,
                                               std::uint64_t seed) {
  if (!(exponent >= 0.0) || !(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(Errc::parameter, "iid recipe needs exponent >= 0 and lo < hi");
  return ParameterSequence(Iid{exponent, lo, hi, seed});
}

ParameterSequence ParameterSequence::iid_uniform(double lo, double hi, std::uint64_t seed) {
  return iid_power(0.0, lo, hi, seed);
}

double ParameterSequence::value(Index i) const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.c; },
          [i](const Explicit& e) {
            const Index n = i - e.start;
            return n < static_cast<Index>(e.values.size()) ? e.values[static_cast<std::size_t>(n)]
                                                           : e.tail;
          },
          [i](const Periodic& p) {
            const auto len = static_cast<Index>(p.values.size());
            const Index n = ((i - p.offset) % len + len) % len;
            return p.values[static_cast<std::size_t>(n)];
          },
          [i](const GeometricBlocks& g) { return geometric_value(g, i); },
          [i](const IsolatedBlocks& b) { return isolated_value(b, i); },
          [i](const Sparse& s) { return is_power_of(i, s.radix) ? s.special : s.base; },
          [i](const Iid& d) {
            // Parameter stream is separate from every weight stream.
            const rng::SiteRng g(d.seed, rng::Stream::parameters);
            const double u = g.uniform(i, 0);
            return d.lo + (d.hi - d.lo) * std::pow(u, 1.0 / (d.exponent + 1.0));
          },
      },
      recipe_);
}

double ParameterSequence::at(Index i) const {
  if (!in_window(i))
    fail(Errc::window_violation, "index " + std::to_string(i) + " outside sequence window");
  return value(i);
}

double ParameterSequence::tail_inf(Index i) const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.c; },
          [i](const Explicit& e) {
            double m = e.tail;
            for (Index n = std::max<Index>(0, i - e.start); n < static_cast<Index>(e.values.size()); ++n)
              m = std::min(m, e.values[static_cast<std::size_t>(n)]);
            return m;
          },
          [](const Periodic& p) { return *std::min_element(p.values.begin(), p.values.end()); },
          [](const GeometricBlocks&) { return 0.0; },
          [](const IsolatedBlocks&) { return 0.0; },
          [](const Sparse& s) { return std::min(s.base, s.special); },
          [](const Iid& d) { return d.lo; },
      },
      recipe_);
}

std::pair<double, Index> ParameterSequence::running_min(Index i, Index k) const {
  if (i > k) fail(Errc::empty_range, "running_min with i > k");
  if (!in_window(i) || !in_window(k)) fail(Errc::window_violation, "running_min range outside window");
  double best = value(i);
  Index arg = i;
  for (Index n = i + 1; n <= k; ++n) {
    const double v = value(n);
    if (v < best) {
      best = v;
      arg = n;
    }
  }
  return {best, arg};
}

std::optional<CesaroBounds> ParameterSequence::declared_cesaro(Index) const {
  return std::visit(
      Overloaded{
          [](const GeometricBlocks& g) -> std::optional<CesaroBounds> {
            const double b = 1.0 / (g.base * g.base);
            return CesaroBounds{b + g.t / (g.r * (g.t - 1.0)), b + 1.0 / (g.r * (g.t - 1.0)), true};
          },
          [](const IsolatedBlocks& s) -> std::optional<CesaroBounds> {
            const double v = 1.0 / (s.base * s.base) + 1.0 / s.r;
            return CesaroBounds{v, v, true};
          },
          [](const Iid& d) -> std::optional<CesaroBounds> {
            if (d.exponent <= 1.0) return CesaroBounds{kInf, kInf, true};
            const double w = d.hi - d.lo;
            const double v = (d.exponent + 1.0) / ((d.exponent - 1.0) * w * w);
            return CesaroBounds{v, v, true};
          },
          // The infimum is attained, so some term is 1/0.
          [](const auto&) -> std::optional<CesaroBounds> { return CesaroBounds{kInf, kInf, true}; },
      },
      recipe_);
}

CesaroBounds estimate_cesaro(const ParameterSequence& s, Index i, Index horizon, int k_min) {
  const double inf = s.tail_inf(i);
  CesaroBounds out{-kInf, kInf, false};
  double sum = 0.0;
  Index next = Index{1} << k_min;
  for (Index n = 1; n <= horizon; ++n) {
    const double d = s.at(i + n - 1) - inf;
    sum += d > 0.0 ? 1.0 / (d * d) : kInf;
    if (n == next) {
      const double avg = sum / static_cast<double>(n);
      out.limsup = std::max(out.limsup, avg);
      out.liminf = std::min(out.liminf, avg);
      next *= 2;
    }
  }
  if (out.limsup == -kInf) fail(Errc::parameter, "cesaro horizon shorter than 2^k_min");
  return out;
}

void to_json(nlohmann::json& j, const ParameterSequence& s) {
  std::visit(Overloaded{
                 [&](const ParameterSequence::Constant& c) { j = {{"type", "constant"}, {"c", c.c}}; },
                 [&](const ParameterSequence::Explicit& e) {
                   j = {{"type", "explicit"}, {"values", e.values}, {"tail", e.tail}, {"start", e.start}};
                 },
                 [&](const ParameterSequence::Periodic& p) {
                   j = {{"type", "periodic"}, {"values", p.values}, {"offset", p.offset}};
                 },
                 [&](const ParameterSequence::GeometricBlocks& g) {
                   j = {{"type", "block"}, {"rule", "geometric"}, {"base", g.base},
                        {"t", g.t},        {"p", g.p},             {"r", g.r}};
                 },
                 [&](const ParameterSequence::IsolatedBlocks& b) {
                   j = {{"type", "block"}, {"rule", "isolated"}, {"base", b.base}, {"p", b.p}, {"r", b.r}};
                 },
                 [&](const ParameterSequence::Sparse& sp) {
                   j = {{"type", "block"}, {"rule", "sparse"}, {"base", sp.base},
                        {"special", sp.special}, {"radix", sp.radix}};
                 },
                 [&](const ParameterSequence::Iid& d) {
                   j = {{"type", "iid"}, {"exponent", d.exponent}, {"lo", d.lo}, {"hi", d.hi}, {"seed", d.seed}};
                 },
             },
             s.recipe_);
}

void from_json(const nlohmann::json& j, ParameterSequence& s) {
  const std::string w = "sequence";
  const auto type = jsonu::get<std::string>(j, "type", w);
  if (type == "constant") {
    jsonu::check_keys(j, {"type", "c"}, w);
    s = ParameterSequence::constant(jsonu::get<double>(j, "c", w));
  } else if (type == "explicit") {
    jsonu::check_keys(j, {"type", "values", "tail", "start"}, w);
    s = ParameterSequence::explicit_list(jsonu::get<std::vector<double>>(j, "values", w),
                                         jsonu::get<double>(j, "tail", w),
                                         jsonu::get_or<Index>(j, "start", 1, w));
  } else if (type == "periodic") {
    jsonu::check_keys(j, {"type", "values", "offset"}, w);
    s = ParameterSequence::periodic(jsonu::get<std::vector<double>>(j, "values", w),
                                    jsonu::get_or<Index>(j, "offset", 0, w));
  } else if (type == "block") {
    const auto rule = jsonu::get<std::string>(j, "rule", w);
    if (rule == "geometric") {
      jsonu::check_keys(j, {"type", "rule", "base", "t", "p", "r"}, w);
      s = ParameterSequence::geometric_blocks(jsonu::get_or<double>(j, "base", 1.0, w),
                                              jsonu::get<double>(j, "t", w), jsonu::get<double>(j, "p", w),
                                              jsonu::get<double>(j, "r", w));
    } else if (rule == "isolated") {
      jsonu::check_keys(j, {"type", "rule", "base", "p", "r"}, w);
      s = ParameterSequence::isolated_blocks(jsonu::get_or<double>(j, "base", 1.0, w),
                                             jsonu::get<double>(j, "p", w), jsonu::get<double>(j, "r", w));
    } else if (rule == "sparse") {
      jsonu::check_keys(j, {"type", "rule", "base", "special", "radix"}, w);
      s = ParameterSequence::sparse(jsonu::get<double>(j, "base", w), jsonu::get<double>(j, "special", w),
                                    jsonu::get_or<Index>(j, "radix", 2, w));
    } else {
      fail(Errc::config, "sequence.rule: unknown block rule '" + rule + "'");
    }
  } else if (type == "iid") {
    jsonu::check_keys(j, {"type", "distribution", "exponent", "lo", "hi", "seed"}, w);
    const auto dist = jsonu::get_or<std::string>(j, "distribution", "power", w);
    double k = 0.0;
    if (dist == "power")
      k = jsonu::get<double>(j, "exponent", w);
    else if (dist != "uniform")
      fail(Errc::config, "sequence.distribution: unknown '" + dist + "'");
    s = ParameterSequence::iid_power(k, jsonu::get<double>(j, "lo", w), jsonu::get<double>(j, "hi", w),
                                     jsonu::get<std::uint64_t>(j, "seed", w));
  } else {
    fail(Errc::config, "sequence.type: unknown type '" + type + "'");
  }
}

}  // namespace icgm
