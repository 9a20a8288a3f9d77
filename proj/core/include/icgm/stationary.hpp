#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "icgm/environment.hpp"
#include "icgm/lpp.hpp"
#include "icgm/stats.hpp"

namespace icgm {

enum class Side { south_west, north_east };

// Increment-stationary model. SW: boundary on row u2-1 and column u1-1 of
// [u-e1-e2, v], zero at the corner. NE: boundary on row v2+1 and column v1+1
// of [u, v+e1+e2], zero at the corner.
struct StationaryModel {
  Site u, v;
  double z = 0.0;
  Side side = Side::south_west;
  WeightField field;
  std::vector<double> a, b;  // a_{u1..v1}, b_{u2..v2}

  Site corner() const { return side == Side::south_west ? u - e1 - e2 : v + e1 + e2; }
  double a_at(Index i) const { return a[static_cast<std::size_t>(i - u.i)]; }
  double b_at(Index j) const { return b[static_cast<std::size_t>(j - u.j)]; }
};

StationaryModel build_stationary(const Environment& env, Site u, Site v, double z, Side side);

// The default corner-to-corner path of the model: an alternating staircase.
LatticePath default_burke_path(const StationaryModel& m);

struct BurkeVariable {
  enum class Kind { I, J, dual, bulk };
  Kind kind;
  Site site;
  double value;
  double rate;
};
std::string to_string(BurkeVariable::Kind k);

// Increments along the path, dual weights on one side and bulk weights on
// the other (SW: dual below, bulk above; NE: bulk below, dual above).
std::vector<BurkeVariable> burke_increments(const StationaryModel& m, const LatticePath& path);

struct BurkeThresholds {
  double ks = 0.02;
  double corr = 0.05;
};

struct BurkeReport {
  bool insufficient_power = false;
  bool pass = false;
  std::size_t replicas = 0;
  double max_ks = 0.0;           // over increments and dual weights
  double max_ks_bulk = 0.0;
  double max_abs_corr = 0.0;     // over all pairs of the collection
  double triple_rank = 1.0;      // permutation rank for one triple
  std::vector<TestReport> variables;
};
void to_json(nlohmann::json& j, const BurkeReport& r);

BurkeReport burke_test(const Environment& env, Site u, Site v, double z, Side side,
                       const LatticePath& path, std::size_t replicas, unsigned workers = 1,
                       BurkeThresholds th = {});

}  // namespace icgm
