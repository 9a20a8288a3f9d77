#pragma once

#include <vector>

#include <json.hpp>

#include "icgm/extended.hpp"

namespace icgm {

// Finite non-zero measure of total mass <= 1 on the reals: either a finite
// list of atoms, or a density from the power family
//   mass * (k+1) (t - lo)^k / (hi - lo)^(k+1)  on (lo, hi),  k >= 0,
// (k = 0 is the uniform density).
class SubProbabilityMeasure {
 public:
  struct Atom {
    double location;
    double mass;
  };

  static SubProbabilityMeasure atomic(std::vector<Atom> atoms);
  static SubProbabilityMeasure dirac(double location, double mass = 1.0);
  static SubProbabilityMeasure power_density(double exponent, double lo, double hi,
                                             double mass = 1.0, int nodes = 4096);
  static SubProbabilityMeasure uniform_density(double lo, double hi, double mass = 1.0,
                                               int nodes = 4096);

  bool is_atomic() const { return atomic_; }
  double total_mass() const { return mass_; }
  double essential_infimum() const { return ess_inf_; }

  // Integral of (t + z)^(-order), order in {1, 2}. Returns +inf when the
  // integral diverges at z = -essential_infimum(); throws domain below that.
  ExtReal moment(double z, int order) const;

  const std::vector<Atom>& atoms() const { return atoms_; }

  friend void to_json(nlohmann::json& j, const SubProbabilityMeasure& m);
  friend void from_json(const nlohmann::json& j, SubProbabilityMeasure& m);

 private:
  double density_integral(double z, int order) const;

  bool atomic_ = true;
  std::vector<Atom> atoms_;
  double exponent_ = 0.0, lo_ = 0.0, hi_ = 1.0;
  int nodes_ = 4096;
  double mass_ = 0.0;
  double ess_inf_ = 0.0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace icgm
