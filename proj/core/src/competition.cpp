#include "icgm/competition.hpp"

#include <algorithm>
#include <cstdint>

#include "icgm/error.hpp"
#include "icgm/replicas.hpp"

namespace icgm {

CompetitionInterface competition_interface(const WeightField& w) {
  const Rect& r = w.rect();
  const Site x = r.lo;
  const PassageField pf = passage_times(w, x);
  CompetitionInterface ci;
  ci.base = x;
  ci.rect = r;

  // Subtree labels: 1 through x+e1, 2 through x+e2 (0 at x).
  Field<std::uint8_t> lab(r, 0);
  for (Index j = r.lo.j; j <= r.hi.j; ++j)
    for (Index i = r.lo.i; i <= r.hi.i; ++i) {
      const Site y{i, j};
      if (y == x) continue;
      if (j == x.j) {
        lab(y) = 1;
      } else if (i == x.i) {
        lab(y) = 2;
      } else {
        const double gl = pf.G(y - e1), gd = pf.G(y - e2);
        if (gl == gd) ci.tie = true;
        lab(y) = gl > gd ? lab(y - e1) : lab(y - e2);
      }
    }

  for (Index n = x.j + 1; n <= r.hi.j; ++n) {
    Index u = x.i;  // (x.i, n) always lies in the e2 subtree
    for (Index m = x.i + 1; m <= r.hi.i && lab({m, n}) == 2; ++m) u = m;
    ci.U.push_back(u);
    ci.U_censored.push_back(u == r.hi.i);
  }
  for (Index m = x.i + 1; m <= r.hi.i; ++m) {
    Index v = x.j;
    for (Index n = x.j + 1; n <= r.hi.j && lab({m, n}) == 1; ++n) v = n;
    ci.V.push_back(v);
    ci.V_censored.push_back(v == r.hi.j);
  }

  ci.dual = LatticePath(PathKind::dual, {x});
  Site p = x;
  while (p.i + 1 <= r.hi.i && p.j + 1 <= r.hi.j) {
    const double ge1 = pf.G(p + e1), ge2 = pf.G(p + e2);
    if (ge1 == ge2) ci.tie = true;
    p = p + (ge1 <= ge2 ? e1 : e2);
    ci.dual.push_back(p);
  }
  return ci;
}

CompetitionInterface competition_interface(const Environment& env, Site x, Index horizon) {
  if (horizon < 1) fail(Errc::parameter, "horizon must be >= 1");
  return competition_interface(env.weights(Rect{x, x + Site{horizon, horizon}}));
}

double AtomLaw::total() const {
  double s = beyond + at_inf;
  for (const auto& [m, p] : atoms) s += p;
  return s;
}

std::map<Index, double> AtomLaw::collapsed() const {
  std::map<Index, double> out = atoms;
  out[m_hi + 1] = beyond + at_inf;
  return out;
}

void to_json(nlohmann::json& j, const AtomLaw& law) {
  nlohmann::json atoms = nlohmann::json::object();
  for (const auto& [m, p] : law.atoms) atoms[std::to_string(m)] = p;
  j = {{"atoms", atoms}, {"beyond", law.beyond}, {"m_hi", law.m_hi}, {"inf", law.at_inf}};
}

AtomLaw cif_atom_distribution(const Environment& env, Site x, CifMode mode, Index m_hi) {
  const ParameterSequence& s = mode == CifMode::U ? env.a() : env.b();
  const Index start = mode == CifMode::U ? x.i : x.j;
  if (m_hi < start) fail(Errc::empty_range, "m range below the base index");
  const double denom = env.a_at(x.i) + env.b_at(x.j);
  const double other = mode == CifMode::U ? env.b_at(x.j) : env.a_at(x.i);
  AtomLaw law;
  law.m_hi = m_hi;
  double run = s.at(start);
  for (Index m = start; m <= m_hi; ++m) {
    const double next = std::min(run, s.at(m + 1));
    law.atoms[m] = (run - next) / denom;
    run = next;
  }
  const double inf = s.tail_inf(start);
  law.beyond = (run - inf) / denom;
  law.at_inf = (inf + other) / denom;
  return law;
}

double cif_direction_cdf(const Environment& env, Site x, Direction xi) {
  if (xi.xi1() >= 1.0) fail(Errc::domain, "direction cdf defined on [e2, e1)");
  const ShapeReport sr = chi_min(env, x, xi);
  return (env.a_at(x.i) + sr.chi) / (env.a_at(x.i) + env.b_at(x.j));
}

CifMonteCarlo mc_cif_atoms(const Environment& env, Site x, Index horizon, Index m_max,
                           std::size_t replicas, unsigned workers) {
  if (m_max < x.i) fail(Errc::parameter, "m_max below x.i");
  if (replicas < 100) fail(Errc::parameter, "need at least 100 replicas");
  if (horizon < 4) fail(Errc::parameter, "horizon must be >= 4");
  const Rect strip{x, {m_max + 1, x.j + horizon}};
  struct Out {
    Index u;
    bool stable;
  };
  auto runs = run_replicas(replicas, env.seed(), workers, [&](std::size_t, std::uint64_t seed) {
    const CompetitionInterface ci = competition_interface(env.with_seed(seed).weights(strip));
    const Index last = ci.U.back();
    const std::size_t k0 = ci.U.size() - ci.U.size() / 4 - 1;
    return Out{last, ci.U[k0] == last};
  });
  CifMonteCarlo mc;
  mc.replicas = replicas;
  mc.horizon = horizon;
  mc.m_max = m_max;
  for (Index m = x.i; m <= m_max; ++m) mc.counts[m] = 0;
  for (const Out& o : runs) {
    if (o.u > m_max)
      ++mc.beyond;
    else
      ++mc.counts[o.u];
    if (!o.stable) ++mc.not_stabilized;
  }
  return mc;
}

std::vector<double> mc_cif_directions(const Environment& env, Site x, Index horizon, std::size_t replicas,
                                      unsigned workers) {
  return run_replicas(replicas, env.seed(), workers, [&](std::size_t, std::uint64_t seed) {
    const CompetitionInterface ci = competition_interface(env.with_seed(seed), x, horizon);
    for (const Site& p : ci.dual.sites())
      if (p.level() == x.level() + horizon) return static_cast<double>(p.i - x.i) / static_cast<double>(horizon);
    fail(Errc::contract, "interface shorter than the horizon");
  });
}

}  // namespace icgm
