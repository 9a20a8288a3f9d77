#include "icgm/busemann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "icgm/error.hpp"
#include "icgm/replicas.hpp"
#include "icgm/rng.hpp"

namespace icgm {

namespace {

struct CornerIncrements {
  ExtReal hor, ver;
  double w_x;
};

// L(x, t) - L(x+e1, t) and L(x, t) - L(x+e2, t) from one backward pass.
CornerIncrements corner_increments(const Environment& env, Site x, Site t) {
  const WeightField w = env.weights(Rect{x, t});
  const Field<double> B = passage_to_corner(w);
  CornerIncrements c{ExtReal::pos_inf(), ExtReal::pos_inf(), w(x)};
  if (x.i < t.i) c.hor = B(x) - B(x + e1);
  if (x.j < t.j) c.ver = B(x) - B(x + e2);
  return c;
}

}  // namespace

void to_json(nlohmann::json& j, const BusemannEstimate& e) {
  j = {{"from", e.from}, {"to", e.to},           {"horizon", e.horizon},
       {"value", e.value}, {"oracle_rate", e.oracle_rate}, {"stable", e.stable}};
}

Site directed_target(Site x, Direction xi, Index n) {
  if (n < 1) fail(Errc::parameter, "horizon must be >= 1");
  const auto d1 = static_cast<Index>(std::floor(static_cast<double>(n) * xi.xi1() + 0.5));
  return {x.i + d1, x.j + (n - d1)};
}

Site busemann_target(Site x, const BusemannIndex& idx, Index n) {
  switch (idx.variant) {
    case BusemannIndex::Variant::column:
      if (idx.k < x.i) fail(Errc::parameter, "column index must be >= x.i");
      return {idx.k, x.j + n};
    case BusemannIndex::Variant::row:
      if (idx.l < x.j) fail(Errc::parameter, "row index must be >= x.j");
      return {x.i + n, idx.l};
    case BusemannIndex::Variant::direction:
      return directed_target(x, idx.xi, n);
  }
  return x;
}

BusemannPair thin_busemann(const Environment& env, Site x, const BusemannIndex& idx, Index n) {
  if (idx.variant == BusemannIndex::Variant::direction)
    fail(Errc::contract, "thin_busemann needs a column or row index");
  if (n < 1) fail(Errc::parameter, "horizon must be >= 1");
  const Site t = busemann_target(x, idx, n);
  const CornerIncrements c = corner_increments(env, x, t);
  BusemannPair p;
  p.hor = {x, x + e1, n, c.hor, 0.0, true};
  p.ver = {x, x + e2, n, c.ver, 0.0, true};
  const double ai = env.a_at(x.i), bj = env.b_at(x.j);
  if (idx.variant == BusemannIndex::Variant::column) {
    const double amin = env.a().running_min(x.i, idx.k).first;
    p.hor.oracle_rate = ai - amin;
    p.ver.oracle_rate = bj + amin;
  } else {
    const double bmin = env.b().running_min(x.j, idx.l).first;
    p.hor.oracle_rate = ai + bmin;
    p.ver.oracle_rate = bj - bmin;
  }
  return p;
}

BusemannPair directional_busemann(const Environment& env, Site x, Direction xi, Index n,
                                  bool check_stability) {
  const Site t = directed_target(x, xi, n);
  const CornerIncrements c = corner_increments(env, x, t);
  const ShapeReport sr = chi_min(env, x, xi);
  BusemannPair p;
  p.hor = {x, x + e1, n, c.hor, env.a_at(x.i) + sr.chi, true};
  p.ver = {x, x + e2, n, c.ver, env.b_at(x.j) - sr.chi, true};
  if (check_stability) {
    const Index n0 = std::max<Index>(1, (9 * n) / 10);
    const CornerIncrements c0 = corner_increments(env, x, directed_target(x, xi, n0));
    auto same = [](const ExtReal& u, const ExtReal& v) {
      if (!u.is_finite() || !v.is_finite()) return u == v;
      return std::abs(u.value() - v.value()) <= 1e-12 * std::max(1.0, std::abs(u.value()));
    };
    p.hor.stable = same(c.hor, c0.hor);
    p.ver.stable = same(c.ver, c0.ver);
  }
  return p;
}

BusemannGeodesic busemann_geodesic(const Environment& env, Site x, const BusemannIndex& idx,
                                   Index horizon, std::optional<Index> target_horizon) {
  if (horizon < 0) fail(Errc::parameter, "horizon must be >= 0");
  const Index tn = target_horizon.value_or(horizon);
  if (tn < horizon) fail(Errc::parameter, "target horizon shorter than the path");
  const Site t = busemann_target(x, idx, std::max<Index>(tn, 1));
  const Field<double> B = passage_to_corner(env.weights(Rect{x, t}));
  // e2 for column and xi-, e1 for row and xi+.
  const bool tie_e1 = idx.variant == BusemannIndex::Variant::row ||
                      (idx.variant == BusemannIndex::Variant::direction && idx.plus);
  BusemannGeodesic g;
  g.path = LatticePath(PathKind::up_right, {x});
  Site y = x;
  for (Index s = 0; s < horizon && !(y == t); ++s) {
    bool step_e1;
    if (y.i == t.i) {
      step_e1 = false;
    } else if (y.j == t.j) {
      step_e1 = true;
    } else {
      const double r = B(y + e1), u = B(y + e2);
      if (r == u) {
        g.tie = true;
        step_e1 = tie_e1;
      } else {
        step_e1 = r > u;
      }
    }
    y = y + (step_e1 ? e1 : e2);
    g.path.push_back(y);
  }
  return g;
}

StationaryGeodesic stationary_busemann_geodesic(const Environment& env, Site x, double z, Index levels,
                                                double width_fraction) {
  if (levels < 1) fail(Errc::parameter, "levels must be >= 1");
  const Index W = std::max<Index>(2, static_cast<Index>(std::ceil(width_fraction * static_cast<double>(levels))) + 2);
  // Column c holds site (x.i + c); its south-boundary and bulk rates use a_{x.i + c - 1}.
  std::vector<double> ar(static_cast<std::size_t>(W));
  for (Index c = 1; c < W; ++c) {
    ar[static_cast<std::size_t>(c)] = env.a_at(x.i + c - 1);
    if (!(ar[static_cast<std::size_t>(c)] + z > 0.0))
      fail(Errc::hypothesis_violation, "stationary representation needs a_i + z > 0 for every column");
  }
  const rng::SiteRng g(env.seed(), rng::Stream::busemann, std::bit_cast<std::uint64_t>(z));

  std::vector<double> prev(static_cast<std::size_t>(W)), cur(static_cast<std::size_t>(W));
  prev[0] = 0.0;
  for (Index c = 1; c < W; ++c)
    prev[static_cast<std::size_t>(c)] = prev[static_cast<std::size_t>(c - 1)] +
                                        g.exp1(x.i + c, x.j) / (ar[static_cast<std::size_t>(c)] + z);

  StationaryGeodesic out;
  out.path = LatticePath(PathKind::up_right, {x});
  Index yc = 0;  // path column offset; the path sits in row `prev`
  Index steps = 0;
  for (Index r = x.j + 1; steps < levels; ++r) {
    const double bm = env.b_at(r - 1);
    if (!(bm - z > 0.0)) fail(Errc::hypothesis_violation, "stationary representation needs b_j - z > 0");
    cur[0] = prev[0] + g.exp1(x.i, r) / (bm - z);
    for (Index c = 1; c < W; ++c) {
      const auto k = static_cast<std::size_t>(c);
      cur[k] = g.exp1(x.i + c, r) / (ar[k] + bm) + std::max(cur[k - 1], prev[k]);
    }
    // Advance along row r-1 until the path steps up into row r.
    for (;;) {
      if (steps >= levels) break;
      if (yc + 1 >= W) {
        out.escaped = true;
        return out;
      }
      const double right = prev[static_cast<std::size_t>(yc + 1)];
      const double up = cur[static_cast<std::size_t>(yc)];
      ++steps;
      if (right < up) {
        ++yc;
        out.path.push_back({x.i + yc, r - 1});
      } else {
        out.path.push_back({x.i + yc, r});
        break;
      }
    }
    std::swap(prev, cur);
  }
  return out;
}

TrapReport trapping_diagnostic(const Environment& env, Site x, Index k, Index horizon, Index lookahead) {
  if (k < x.i) fail(Errc::parameter, "column index must be >= x.i");
  TrapReport rep;
  rep.trap_column = env.a().running_min(x.i, k).second;
  if (k == x.i) {
    rep.reached = true;
    rep.first_hit = 0;
    return rep;
  }
  const BusemannGeodesic g =
      busemann_geodesic(env, x, BusemannIndex::column(k), horizon, std::max<Index>(1, lookahead) * horizon);
  const auto& s = g.path.sites();
  for (std::size_t n = 0; n < s.size(); ++n)
    if (s[n].i == rep.trap_column) {
      rep.first_hit = static_cast<Index>(n);
      break;
    }
  rep.reached = s.back().i == rep.trap_column;
  return rep;
}

CoalescenceResult coalescence_check(const Environment& env, Site x, Site y, Direction xi, Index horizon,
                                    std::size_t replicas, Index lookahead, unsigned workers) {
  const Site m = meet(x, y);
  const Index tn = std::max<Index>(1, lookahead) * horizon + std::max(x.level(), y.level()) - m.level();
  const Site t = directed_target(m, xi, tn);
  if (!leq(x, t) || !leq(y, t)) fail(Errc::parameter, "target does not dominate both starting points");
  CoalescenceResult res;
  res.meet_levels = run_replicas(replicas, env.seed(), workers, [&](std::size_t, std::uint64_t seed) -> Index {
    if (x == y) return x.level();
    const Field<double> B = passage_to_corner(env.with_seed(seed).weights(Rect{m, t}));
    auto step = [&](Site p) {
      if (p.i == t.i) return p + e2;
      if (p.j == t.j) return p + e1;
      return B(p + e1) > B(p + e2) ? p + e1 : p + e2;
    };
    Site p = x, q = y;
    while (!(p == t) && !(q == t)) {
      // advance whichever is behind; equal levels are compared directly
      if (p.level() < q.level())
        p = step(p);
      else if (q.level() < p.level())
        q = step(q);
      else {
        if (p == q) return p.level();
        p = step(p);
        q = step(q);
      }
    }
    return p == q ? p.level() : Index{-1};
  });
  res.fraction = coalesced_fraction(res, m.level(), horizon);
  return res;
}

double coalesced_fraction(const CoalescenceResult& r, Index base_level, Index horizon) {
  if (r.meet_levels.empty()) return 0.0;
  std::size_t c = 0;
  for (Index lv : r.meet_levels)
    if (lv >= 0 && lv <= base_level + horizon) ++c;
  return static_cast<double>(c) / static_cast<double>(r.meet_levels.size());
}

DirectionStats direction_statistics(const LatticePath& path, Index n_lo, Index n_hi) {
  DirectionStats st;
  if (n_lo > n_hi || n_lo < 1) fail(Errc::parameter, "bad level window");
  double sum = 0.0;
  st.min = INFINITY;
  st.max = -INFINITY;
  for (const Site& s : path.sites()) {
    const Index n = s.level();
    if (n < n_lo || n > n_hi) continue;
    const double r = static_cast<double>(s.i) / static_cast<double>(n);
    st.min = std::min(st.min, r);
    st.max = std::max(st.max, r);
    sum += r;
    ++st.count;
  }
  if (st.count == 0) fail(Errc::parameter, "level window outside the path");
  if (path.back().level() < n_hi) fail(Errc::parameter, "path shorter than the level window");
  st.mean = sum / static_cast<double>(st.count);
  return st;
}

}  // namespace icgm
