#pragma once

#include <ostream>
#include <vector>

#include "icgm/competition.hpp"
#include "icgm/environment.hpp"
#include "icgm/field.hpp"

namespace icgm {

// TASEP with holes i >= 1 and particles j >= 1 from the step configuration
// (P_j = 1 - j, H_i = i). Hole i and particle j swap after an Exp(a_i + b_j)
// wait once adjacent, so the swap time is T(i,j) = L((1,1),(i,j)).
Field<double> rost_swap_times(const Environment& env, Index M);

struct SwapEvent {
  double t;
  Index i, j;
};

struct TasepTrajectory {
  Index M = 0;
  double t_max = 0.0;
  double t11 = 0.0;      // time of the first swap
  double horizon = 0.0;  // window dynamics agree with the infinite system up to here
  bool truncated = false;
  std::vector<SwapEvent> events;  // time ordered, t <= min(t_max, horizon)

  // Positions after all events with time <= t.
  std::vector<Index> particle_positions(double t) const;  // index j-1 -> P_j
  std::vector<Index> hole_positions(double t) const;      // index i-1 -> H_i
};

// Event-driven: a pair is scheduled when it becomes adjacent. Without
// clipping, events past the light-cone horizon are kept (window dynamics).
TasepTrajectory simulate_tasep(const Environment& env, Index M, double t_max, bool clip_to_horizon = true);

void write_trajectory_csv(std::ostream& os, const TasepTrajectory& tr);

// Hole I and particle J of the *pair (0 1)*. Times use the clock started at
// the first swap, so the pair is (1,1) at time 0.
struct StarJump {
  double t;
  Index I, J;
};
struct StarPair {
  std::vector<StarJump> jumps;  // jumps[0] = {0, 1, 1}
  double horizon = 0.0;         // shifted clock
  StarJump at(double t) const;
  Index second_class_position(double t) const;  // X = I - J
};
StarPair star_pair_trajectory(const TasepTrajectory& tr);

// Queue content eta_j = P_{j-1} - P_j - 1 (j >= 2) at shifted time t.
std::vector<Index> zrp_queues(const TasepTrajectory& tr, double t, Index j_max);

struct ZrpRun {
  TasepTrajectory tasep;
  StarPair star;
  Index Z(double t) const { return star.at(t).J + 1; }
};
// Requires a == 0 on [1, M].
ZrpRun simulate_zrp(const Environment& env, Index M, double t_max);

// Law of lim Z(t) for a == 0, indices 2..n_hi, mass above, atom at infinity.
AtomLaw z_limit_distribution(const Environment& env, Index n_hi);

enum class ZrpFate { stabilized, escaping, ambiguous };
struct ZrpClassification {
  ZrpFate fate;
  Index z_final;
  double last_change;
};
// Stable over the last quarter of [0, t_max] -> stabilized; otherwise
// escaping if Z/t_max >= speed_floor; otherwise ambiguous.
ZrpClassification classify_zrp(const StarPair& star, double t_max, double speed_floor = 0.02);

}  // namespace icgm
