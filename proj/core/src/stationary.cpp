#include "icgm/stationary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "icgm/error.hpp"
#include "icgm/replicas.hpp"

namespace icgm {

StationaryModel build_stationary(const Environment& env, Site u, Site v, double z, Side side) {
  if (!leq(u, v)) fail(Errc::contract, "stationary model needs u <= v");
  StationaryModel m;
  m.u = u;
  m.v = v;
  m.z = z;
  m.side = side;
  for (Index i = u.i; i <= v.i; ++i) m.a.push_back(env.a_at(i));
  for (Index j = u.j; j <= v.j; ++j) m.b.push_back(env.b_at(j));
  const double amin = *std::min_element(m.a.begin(), m.a.end());
  const double bmin = *std::min_element(m.b.begin(), m.b.end());
  if (!(z > -amin && z < bmin))
    fail(Errc::parameter, "boundary parameter must lie strictly inside (-min a, min b)");

  const Rect bulk{u, v};
  const Rect padded = side == Side::south_west ? Rect{u - e1 - e2, v} : Rect{u, v + e1 + e2};
  env.check_in_window(bulk);
  m.field = WeightField(padded);
  const WeightField w = env.weights(bulk);
  for (Index j = u.j; j <= v.j; ++j) std::copy(w.row(j), w.row(j) + bulk.width(), m.field.row(j) + (u.i - padded.lo.i));

  const rng::SiteRng bd(env.seed(), rng::Stream::boundary,
                        rng::combine(static_cast<std::uint64_t>(side), std::bit_cast<std::uint64_t>(z)));
  const Index row = side == Side::south_west ? u.j - 1 : v.j + 1;
  const Index col = side == Side::south_west ? u.i - 1 : v.i + 1;
  for (Index i = u.i; i <= v.i; ++i) m.field({i, row}) = bd.exp1(i, row) / (m.a_at(i) + z);
  for (Index j = u.j; j <= v.j; ++j) m.field({col, j}) = bd.exp1(col, j) / (m.b_at(j) - z);
  m.field(m.corner()) = 0.0;
  return m;
}

LatticePath default_burke_path(const StationaryModel& m) {
  if (m.side == Side::south_west) return staircase({m.u.i - 1, m.v.j}, {m.v.i, m.u.j - 1});
  return staircase({m.u.i, m.v.j + 1}, {m.v.i + 1, m.u.j});
}

std::string to_string(BurkeVariable::Kind k) {
  switch (k) {
    case BurkeVariable::Kind::I: return "I";
    case BurkeVariable::Kind::J: return "J";
    case BurkeVariable::Kind::dual: return "dual";
    case BurkeVariable::Kind::bulk: return "bulk";
  }
  return "?";
}

std::vector<BurkeVariable> burke_increments(const StationaryModel& m, const LatticePath& path) {
  const Rect& r = m.field.rect();
  const bool sw = m.side == Side::south_west;
  const Site start = sw ? Site{m.u.i - 1, m.v.j} : Site{m.u.i, m.v.j + 1};
  const Site end = sw ? Site{m.v.i, m.u.j - 1} : Site{m.v.i + 1, m.u.j};
  if (path.kind() != PathKind::down_right || path.size() < 2 || !(path.front() == start) ||
      !(path.back() == end))
    fail(Errc::path, "path must be down-right from corner to corner of the model");

  // Both step types raise i - j by one, so the path meets each diagonal once.
  const Index d0 = start.i - start.j;
  std::vector<Index> path_i(path.size());
  for (std::size_t n = 0; n < path.size(); ++n) path_i[n] = path[n].i;

  std::vector<BurkeVariable> out;
  using K = BurkeVariable::Kind;
  if (sw) {
    const PassageField G = passage_times(m.field, r.lo);
    for (std::size_t n = 0; n + 1 < path.size(); ++n) {
      const Site p = path[n], q = path[n + 1];
      if (q == p + e1)
        out.push_back({K::I, q, G.G(q) - G.G(p), m.a_at(q.i) + m.z});
      else
        out.push_back({K::J, p, G.G(p) - G.G(q), m.b_at(p.j) - m.z});
    }
    for (Index j = r.lo.j; j <= r.hi.j; ++j)
      for (Index i = r.lo.i; i <= r.hi.i; ++i) {
        const Site x{i, j};
        const Index pi = path_i[static_cast<std::size_t>(i - j - d0)];
        if (i < pi) {
          const double dual = std::min(G.G(x + e1) - G.G(x), G.G(x + e2) - G.G(x));
          out.push_back({K::dual, x, dual, m.a_at(i + 1) + m.b_at(j + 1)});
        } else if (i > pi) {
          out.push_back({K::bulk, x, m.field(x), m.a_at(i) + m.b_at(j)});
        }
      }
  } else {
    const Field<double> L = passage_to_corner(m.field);
    for (std::size_t n = 0; n + 1 < path.size(); ++n) {
      const Site p = path[n], q = path[n + 1];
      if (q == p + e1)
        out.push_back({K::I, p, L(p) - L(q), m.a_at(p.i) + m.z});
      else
        out.push_back({K::J, q, L(q) - L(p), m.b_at(q.j) - m.z});
    }
    for (Index j = r.lo.j; j <= r.hi.j; ++j)
      for (Index i = r.lo.i; i <= r.hi.i; ++i) {
        const Site x{i, j};
        const Index pi = path_i[static_cast<std::size_t>(i - j - d0)];
        if (i < pi) {
          out.push_back({K::bulk, x, m.field(x), m.a_at(i) + m.b_at(j)});
        } else if (i > pi) {
          const double dual = std::min(L(x - e1) - L(x), L(x - e2) - L(x));
          out.push_back({K::dual, x, dual, m.a_at(i - 1) + m.b_at(j - 1)});
        }
      }
  }
  return out;
}

void to_json(nlohmann::json& j, const BurkeReport& r) {
  j = {{"insufficient_power", r.insufficient_power},
       {"pass", r.pass},
       {"replicas", r.replicas},
       {"max_ks", r.max_ks},
       {"max_ks_bulk", r.max_ks_bulk},
       {"max_abs_corr", r.max_abs_corr},
       {"triple_permutation_rank", r.triple_rank},
       {"variables", r.variables}};
}

BurkeReport burke_test(const Environment& env, Site u, Site v, double z, Side side,
                       const LatticePath& path, std::size_t replicas, unsigned workers,
                       BurkeThresholds th) {
  auto runs = run_replicas(replicas, env.seed(), workers, [&](std::size_t, std::uint64_t seed) {
    const StationaryModel m = build_stationary(env.with_seed(seed), u, v, z, side);
    return burke_increments(m, path);
  });
  BurkeReport rep;
  rep.replicas = replicas;
  if (runs.empty()) {
    rep.insufficient_power = true;
    return rep;
  }
  const std::size_t nv = runs.front().size();
  std::vector<std::vector<double>> columns(nv, std::vector<double>(replicas));
  for (std::size_t r = 0; r < replicas; ++r)
    for (std::size_t k = 0; k < nv; ++k) columns[k][r] = runs[r][k].value;

  for (std::size_t k = 0; k < nv; ++k) {
    const BurkeVariable& var = runs.front()[k];
    const double ks = ks_distance_exp(EmpiricalSample(columns[k]), var.rate);
    TestReport t = TestReport::upper_bound(
        to_string(var.kind) + "(" + std::to_string(var.site.i) + "," + std::to_string(var.site.j) + ")", ks,
        th.ks, replicas);
    t.extra = {{"rate", var.rate}, {"kind", to_string(var.kind)}, {"site", var.site}};
    if (var.kind == BurkeVariable::Kind::bulk)
      rep.max_ks_bulk = std::max(rep.max_ks_bulk, ks);
    else
      rep.max_ks = std::max(rep.max_ks, ks);
    rep.variables.push_back(std::move(t));
  }
  rep.max_abs_corr = max_offdiag_abs(pairwise_corr(columns));
  if (nv >= 3) rep.triple_rank = triple_permutation_rank(columns[0], columns[1], columns[nv - 1], 200, env.seed());
  rep.insufficient_power = replicas < 100;
  rep.pass = !rep.insufficient_power && rep.max_ks <= th.ks && rep.max_ks_bulk <= th.ks &&
             rep.max_abs_corr <= th.corr;
  return rep;
}

}  // namespace icgm
