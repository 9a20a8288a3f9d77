#pragma once

#include <json.hpp>

#include "icgm/environment.hpp"
#include "icgm/extended.hpp"
#include "icgm/lattice.hpp"
#include "icgm/measure.hpp"

namespace icgm {

struct ShapeReport {
  double gamma = 0.0;
  double chi = 0.0;
  bool at_lower_endpoint = false;  // chi = -inf a_{i:oo}
  bool at_upper_endpoint = false;  // chi = inf b_{j:oo}
};

struct CriticalPair {
  Direction c1, c2;
};

struct Interval {
  double lo = 0.0, hi = 0.0;
};

enum class Axis { horizontal, vertical };
enum class LinearSide { c1, c2 };

// xi1 * int (a+z)^-1 alpha(da) + xi2 * int (b-z)^-1 beta(db).
ExtReal gamma_z(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                Direction xi, double z);

// d/dz of gamma_z; strictly increasing in z.
double gamma_dz(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                Direction xi, double z);

// Minimizer of z -> gamma_z(xi) over [-inf_a, inf_b].
ShapeReport chi_min(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                    double inf_a, double inf_b, Direction xi);
ShapeReport chi_min(const Environment& env, Site x, Direction xi);

Direction rho(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta, double z);

CriticalPair critical_dirs(const SubProbabilityMeasure& alpha, const SubProbabilityMeasure& beta,
                           double inf_a, double inf_b);
CriticalPair critical_dirs(const Environment& env, Site x);

// Prop. on thin rectangles: vertical growth in column range [i, level] gives
// int beta/(b + a^min_{i:level}); horizontal growth in row range [j, level]
// gives int alpha/(a + b^min_{j:level}).
double thin_limit(const Environment& env, Site x, Axis axis, Index level);

// Interval of xi1 values that the linear-segment geodesic accumulates on.
Interval linear_limit_interval(const Environment& env, Site x, LinearSide side,
                               Index cesaro_horizon = Index{1} << 20);

struct SpeedLaw {
  double atom_at_zero = 0.0;  // P(v = 0)
  double max_speed = 0.0;     // (int b^-1 beta)^-1
};

// Second-class customer speed law for a == 0: P(v <= s) on (0, max_speed].
SpeedLaw speed_law(const SubProbabilityMeasure& beta, double b1, double inf_b);
double speed_cdf(const SubProbabilityMeasure& beta, double b1, double inf_b, double s);

void to_json(nlohmann::json& j, const ShapeReport& r);
void to_json(nlohmann::json& j, const Interval& r);

}  // namespace icgm
