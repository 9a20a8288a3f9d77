#pragma once

#include <cstdint>

#include <json.hpp>

#include "icgm/field.hpp"
#include "icgm/measure.hpp"
#include "icgm/rng.hpp"
#include "icgm/sequence.hpp"

namespace icgm {

// Rates a, b with declared limit measures alpha, beta and the seeded weight
// field w(i,j) = tau(i,j) / (a_i + b_j). Immutable; weight() is a pure
// function of (seed, site), so there is nothing to memoize.
class Environment {
 public:
  Environment(ParameterSequence a, ParameterSequence b, SubProbabilityMeasure alpha,
              SubProbabilityMeasure beta, std::uint64_t seed, Rect window);
  // Window defaults to the sequence windows clipped to [-2^30, 2^30]^2.
  Environment(ParameterSequence a, ParameterSequence b, SubProbabilityMeasure alpha,
              SubProbabilityMeasure beta, std::uint64_t seed);

  const ParameterSequence& a() const { return a_; }
  const ParameterSequence& b() const { return b_; }
  const SubProbabilityMeasure& alpha() const { return alpha_; }
  const SubProbabilityMeasure& beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }
  const Rect& window() const { return window_; }

  double a_at(Index i) const { return a_.at(i); }
  double b_at(Index j) const { return b_.at(j); }
  double rate(Site s) const;
  double weight(Site s) const;
  double tau(Site s) const { return bulk_.exp1(s.i, s.j); }
  WeightField weights(const Rect& r) const;

  Environment with_seed(std::uint64_t seed) const;
  void check_in_window(const Rect& r) const;

  friend void to_json(nlohmann::json& j, const Environment& e);

 private:
  void validate() const;

  ParameterSequence a_, b_;
  SubProbabilityMeasure alpha_, beta_;
  std::uint64_t seed_;
  Rect window_;
  rng::SiteRng bulk_;
};

Environment environment_from_json(const nlohmann::json& j);

// Free-function form of Environment::weight.
inline double sample_weight(const Environment& env, Site s) { return env.weight(s); }

}  // namespace icgm
