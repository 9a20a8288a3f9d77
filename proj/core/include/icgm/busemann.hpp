#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "icgm/environment.hpp"
#include "icgm/extended.hpp"
#include "icgm/lpp.hpp"
#include "icgm/shape.hpp"

namespace icgm {

struct BusemannIndex {
  enum class Variant { direction, column, row };
  Variant variant = Variant::direction;
  Direction xi;
  Index k = 0;         // column index for (k, inf)
  Index l = 0;         // row index for (inf, l)
  bool plus = false;   // xi+ versus xi-; only the tie rule sees it at finite horizon

  static BusemannIndex column(Index k) { return {Variant::column, Direction(), k, 0, false}; }
  static BusemannIndex row(Index l) { return {Variant::row, Direction(), 0, l, true}; }
  static BusemannIndex direction(Direction xi, bool plus = false) {
    return {Variant::direction, xi, 0, 0, plus};
  }
};

struct BusemannEstimate {
  Site from, to;  // the edge
  Index horizon = 0;
  ExtReal value;
  double oracle_rate = 0.0;  // 0 encodes the point mass at +inf
  bool stable = true;
};

struct BusemannPair {
  BusemannEstimate hor, ver;
};
void to_json(nlohmann::json& j, const BusemannEstimate& e);

// Target used at horizon n for each index kind.
Site busemann_target(Site x, const BusemannIndex& idx, Index n);
// Rounds n*xi to a lattice point, ties toward e1.
Site directed_target(Site x, Direction xi, Index n);

BusemannPair thin_busemann(const Environment& env, Site x, const BusemannIndex& idx, Index n);
// With check_stability the estimate is also computed at 0.9 n and flagged
// unstable if the two values differ.
BusemannPair directional_busemann(const Environment& env, Site x, Direction xi, Index n,
                                  bool check_stability = false);

// Increments toward the fixed target of a finite horizon; the path is
// `horizon` steps long. `target_horizon` (default: horizon) sets the target.
struct BusemannGeodesic {
  LatticePath path;
  bool tie = false;
};
BusemannGeodesic busemann_geodesic(const Environment& env, Site x, const BusemannIndex& idx,
                                   Index horizon, std::optional<Index> target_horizon = std::nullopt);

// Exact-in-law sample of the Busemann geodesic with boundary parameter z,
// from the competition interface of the stationary model cornered at x.
struct StationaryGeodesic {
  LatticePath path;
  bool escaped = false;  // hit the column budget before `levels` steps
};
StationaryGeodesic stationary_busemann_geodesic(const Environment& env, Site x, double z, Index levels,
                                                double width_fraction = 0.55);

struct TrapReport {
  bool reached = false;
  Index trap_column = 0;
  Index first_hit = -1;  // step count of the first visit to the trap column; -1 if never
};
TrapReport trapping_diagnostic(const Environment& env, Site x, Index k, Index horizon,
                               Index lookahead = 2);

struct CoalescenceResult {
  double fraction = 0.0;
  std::vector<Index> meet_levels;  // per replica; -1 if no meeting within the target rectangle
};
// Geodesics from x and y toward one target at lookahead * horizon from x meet y.
// A replica counts as coalesced when they meet at a level <= meet(x,y).level + horizon.
CoalescenceResult coalescence_check(const Environment& env, Site x, Site y, Direction xi, Index horizon,
                                    std::size_t replicas, Index lookahead = 2, unsigned workers = 1);
double coalesced_fraction(const CoalescenceResult& r, Index base_level, Index horizon);

struct DirectionStats {
  double min = 0.0, max = 0.0, mean = 0.0;
  std::size_t count = 0;
};
// pi_n . e1 / n over sites with level n in [n_lo, n_hi].
DirectionStats direction_statistics(const LatticePath& path, Index n_lo, Index n_hi);

}  // namespace icgm
