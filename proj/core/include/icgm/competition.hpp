#pragma once

#include <map>
#include <vector>

#include <json.hpp>

#include "icgm/environment.hpp"
#include "icgm/lpp.hpp"
#include "icgm/shape.hpp"
#include "icgm/stats.hpp"

namespace icgm {

// Competition interface phi^x on a rectangle with lower corner x. The dual
// path stores phi* = phi - (1/2,1/2), starting at x.
struct CompetitionInterface {
  Site base;
  Rect rect;
  LatticePath dual;
  // U[k] = U(base.j + 1 + k); U_censored[k] when the e2-subtree reaches the right edge.
  std::vector<Index> U;
  std::vector<bool> U_censored;
  // V[k] = V(base.i + 1 + k); V_censored[k] when the e1-subtree reaches the top edge.
  std::vector<Index> V;
  std::vector<bool> V_censored;
  bool tie = false;

  Index U_at(Index n) const { return U.at(static_cast<std::size_t>(n - base.j - 1)); }
  Index V_at(Index m) const { return V.at(static_cast<std::size_t>(m - base.i - 1)); }
};

CompetitionInterface competition_interface(const WeightField& w);
// Square [x, x + (horizon, horizon)].
CompetitionInterface competition_interface(const Environment& env, Site x, Index horizon);

enum class CifMode { U, V };

// Law of U(inf) (or V(inf)) on [start, m_hi], the finite mass above m_hi,
// and the atom at infinity. Total is 1 by telescoping.
struct AtomLaw {
  std::map<Index, double> atoms;
  double beyond = 0.0;
  double at_inf = 0.0;
  Index m_hi = 0;
  double total() const;
  // Atoms on [start, m_hi] plus one cell m_hi + 1 holding beyond + at_inf.
  std::map<Index, double> collapsed() const;
};
void to_json(nlohmann::json& j, const AtomLaw& law);

AtomLaw cif_atom_distribution(const Environment& env, Site x, CifMode mode, Index m_hi);

// P(xi* <= xi) for xi in [e2, e1).
double cif_direction_cdf(const Environment& env, Site x, Direction xi);

struct CifMonteCarlo {
  std::size_t replicas = 0;
  Index horizon = 0;
  Index m_max = 0;
  std::map<Index, std::size_t> counts;  // U(row x.j + horizon) on [x.i, m_max]
  std::size_t beyond = 0;               // U > m_max
  std::size_t not_stabilized = 0;       // U changed within the final 25% of rows
  bool finite_horizon_caveat = true;    // U(n) increases to U(inf)
};
// Uses the strip of columns [x.i, m_max + 1], which decides U up to m_max.
// Requires replicas >= 100.
CifMonteCarlo mc_cif_atoms(const Environment& env, Site x, Index horizon, Index m_max,
                           std::size_t replicas, unsigned workers = 1);
// (phi*_n - x) . e1 / horizon at level x.level + horizon, one per replica.
std::vector<double> mc_cif_directions(const Environment& env, Site x, Index horizon,
                                      std::size_t replicas, unsigned workers = 1);

}  // namespace icgm
