#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "icgm/lattice.hpp"

namespace icgm {

inline constexpr Index kIndexBound = Index{1} << 40;

struct CesaroBounds {
  double limsup = 0.0;  // limsup of n^-1 sum_{k<i+n} (c_k - inf c)^-2
  double liminf = 0.0;
  bool analytic = false;
};

// Recipe-defined bi-infinite rate sequence.
class ParameterSequence {
 public:
  struct Constant {
    double c;
  };
  struct Explicit {
    std::vector<double> values;  // values[n] is the rate at index start + n
    double tail;                 // rate for indices past the list
    Index start;
  };
  struct Periodic {
    std::vector<double> values;  // values[(i - offset) mod p]
    Index offset;
  };
  // k >= 1, t^k <= i < t^k + t^((1-2p)k): rate sqrt(r) t^(-pk); base elsewhere.
  struct GeometricBlocks {
    double base, t, p, r;
  };
  // k >= 1, k^2 <= i < k^2 + k^p: rate sqrt(r/2) k^(-(1-p)/2); base elsewhere.
  struct IsolatedBlocks {
    double base, p, r;
  };
  // Rate `special` at indices radix^k (k >= 0), base elsewhere.
  struct Sparse {
    double base, special;
    Index radix;
  };
  // iid draws from a power density (exponent k on (lo, hi)), keyed by seed.
  struct Iid {
    double exponent, lo, hi;
    std::uint64_t seed;
  };
  using Recipe = std::variant<Constant, Explicit, Periodic, GeometricBlocks, IsolatedBlocks,
                              Sparse, Iid>;

  ParameterSequence() : ParameterSequence(Constant{1.0}) {}

  static ParameterSequence constant(double c);
  static ParameterSequence explicit_list(std::vector<double> values, double tail, Index start = 1);
  static ParameterSequence periodic(std::vector<double> values, Index offset = 0);
  static ParameterSequence geometric_blocks(double base, double t, double p, double r);
  static ParameterSequence isolated_blocks(double base, double p, double r);
  static ParameterSequence sparse(double base, double special, Index radix = 2);
  static ParameterSequence iid_power(double exponent, double lo, double hi, std::uint64_t seed);
  static ParameterSequence iid_uniform(double lo, double hi, std::uint64_t seed);

  // Same recipe, defined only on [lo, hi].
  ParameterSequence with_window(Index lo, Index hi) const { return ParameterSequence(recipe_, lo, hi); }

  const Recipe& recipe() const { return recipe_; }
  Index window_lo() const { return window_lo_; }
  Index window_hi() const { return window_hi_; }
  bool in_window(Index i) const { return i >= window_lo_ && i <= window_hi_; }

  // Throws window_violation outside the window.
  double at(Index i) const;
  // inf over indices >= i (analytic per recipe).
  double tail_inf(Index i) const;
  // (min over [i, k], first index attaining it). Throws empty_range if i > k.
  std::pair<double, Index> running_min(Index i, Index k) const;
  // Analytic Cesaro bounds of (c_k - tail_inf)^-2 where the recipe declares
  // them; nullopt otherwise. +inf entries signal divergence.
  std::optional<CesaroBounds> declared_cesaro(Index i) const;

  friend void to_json(nlohmann::json& j, const ParameterSequence& s);
  friend void from_json(const nlohmann::json& j, ParameterSequence& s);

 private:
  explicit ParameterSequence(Recipe r, Index lo = -kIndexBound, Index hi = kIndexBound);
  double value(Index i) const;

  Recipe recipe_;
  Index window_lo_, window_hi_;
};

// Numerical Cesaro estimate over prefix lengths 2^k, k_min <= k <= log2(horizon):
// max and min of the running averages at those lengths.
CesaroBounds estimate_cesaro(const ParameterSequence& s, Index i, Index horizon, int k_min = 4);

}  // namespace icgm
