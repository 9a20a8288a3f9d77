#include "icgm/particles.hpp"

#include <algorithm>
#include <queue>

#include "icgm/error.hpp"

namespace icgm {

namespace {

void check_window(Index M) {
  if (M < 2) fail(Errc::parameter, "particle window must have M >= 2");
}

}  // namespace

Field<double> rost_swap_times(const Environment& env, Index M) {
  check_window(M);
  const Rect r{{1, 1}, {M, M}};
  const WeightField w = env.weights(r);
  Field<double> T(r, 0.0);
  for (Index j = 1; j <= M; ++j)
    for (Index i = 1; i <= M; ++i) {
      const double left = i > 1 ? T({i - 1, j}) : 0.0;
      const double down = j > 1 ? T({i, j - 1}) : 0.0;
      T({i, j}) = std::max(left, down) + w({i, j});
    }
  return T;
}

TasepTrajectory simulate_tasep(const Environment& env, Index M, double t_max, bool clip_to_horizon) {
  check_window(M);
  if (!(t_max > 0.0)) fail(Errc::parameter, "t_max must be positive");
  env.check_in_window(Rect{{1, 1}, {M, M}});
  TasepTrajectory tr;
  tr.M = M;
  tr.t_max = t_max;
  double col = 0.0, row = 0.0;
  for (Index k = 1; k <= M; ++k) {
    col += env.weight({k, 1});
    row += env.weight({1, k});
  }
  tr.horizon = std::min(col, row);
  tr.truncated = tr.horizon < t_max;
  const double stop = clip_to_horizon ? std::min(t_max, tr.horizon) : t_max;

  // swaps[j] = number of holes particle j has passed; particle j meets the
  // holes in order, so pair (i,j) is done iff i <= swaps[j].
  std::vector<Index> swaps(static_cast<std::size_t>(M) + 2, 0);
  auto done = [&](Index i, Index j) { return i <= swaps[static_cast<std::size_t>(j)]; };
  using Item = std::pair<double, Site>;
  auto later = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
  heap.push({env.weight({1, 1}), Site{1, 1}});
  bool first = true;
  while (!heap.empty()) {
    const auto [t, s] = heap.top();
    if (t > stop) break;
    heap.pop();
    if (first) tr.t11 = t;
    first = false;
    tr.events.push_back({t, s.i, s.j});
    ++swaps[static_cast<std::size_t>(s.j)];
    if (s.i < M && (s.j == 1 || done(s.i + 1, s.j - 1))) heap.push({t + env.weight({s.i + 1, s.j}), {s.i + 1, s.j}});
    if (s.j < M && (s.i == 1 || done(s.i - 1, s.j + 1))) heap.push({t + env.weight({s.i, s.j + 1}), {s.i, s.j + 1}});
  }
  if (first) tr.t11 = heap.empty() ? 0.0 : heap.top().first;
  return tr;
}

std::vector<Index> TasepTrajectory::particle_positions(double t) const {
  std::vector<Index> p(static_cast<std::size_t>(M));
  for (Index j = 1; j <= M; ++j) p[static_cast<std::size_t>(j - 1)] = 1 - j;
  for (const SwapEvent& e : events) {
    if (e.t > t) break;
    ++p[static_cast<std::size_t>(e.j - 1)];
  }
  return p;
}

std::vector<Index> TasepTrajectory::hole_positions(double t) const {
  std::vector<Index> h(static_cast<std::size_t>(M));
  for (Index i = 1; i <= M; ++i) h[static_cast<std::size_t>(i - 1)] = i;
  for (const SwapEvent& e : events) {
    if (e.t > t) break;
    --h[static_cast<std::size_t>(e.i - 1)];
  }
  return h;
}

void write_trajectory_csv(std::ostream& os, const TasepTrajectory& tr) {
  os << "t,event,i,j\n";
  os.precision(17);
  for (const SwapEvent& e : tr.events) os << e.t << ",swap," << e.i << ',' << e.j << '\n';
}

StarPair star_pair_trajectory(const TasepTrajectory& tr) {
  if (tr.events.empty()) fail(Errc::contract, "trajectory ends before the first swap");
  StarPair sp;
  sp.horizon = std::min(tr.t_max, tr.horizon) - tr.t11;
  Index I = 1, J = 1;
  sp.jumps.push_back({0.0, I, J});
  for (const SwapEvent& e : tr.events) {
    if (e.i == I && e.j == J + 1) {
      ++J;  // particle J+1 takes the *pair hole: pair moves left
    } else if (e.i == I + 1 && e.j == J) {
      ++I;  // *pair particle passes hole I+1: pair moves right
    } else {
      continue;
    }
    sp.jumps.push_back({e.t - tr.t11, I, J});
  }
  return sp;
}

StarJump StarPair::at(double t) const {
  auto it = std::upper_bound(jumps.begin(), jumps.end(), t,
                             [](double v, const StarJump& s) { return v < s.t; });
  if (it == jumps.begin()) fail(Errc::domain, "time before the first swap");
  return *(it - 1);
}

Index StarPair::second_class_position(double t) const {
  const StarJump s = at(t);
  return s.I - s.J;
}

std::vector<Index> zrp_queues(const TasepTrajectory& tr, double t, Index j_max) {
  if (j_max < 2 || j_max > tr.M) fail(Errc::parameter, "j_max outside [2, M]");
  const std::vector<Index> p = tr.particle_positions(t + tr.t11);
  std::vector<Index> eta;
  for (Index j = 2; j <= j_max; ++j)
    eta.push_back(p[static_cast<std::size_t>(j - 2)] - p[static_cast<std::size_t>(j - 1)] - 1);
  return eta;
}

ZrpRun simulate_zrp(const Environment& env, Index M, double t_max) {
  check_window(M);
  for (Index i = 1; i <= M; ++i)
    if (env.a_at(i) != 0.0) fail(Errc::mode, "zrp mode requires a == 0");
  // The ZRP clock starts at the first swap, which happens at w(1,1).
  ZrpRun run{simulate_tasep(env, M, env.weight({1, 1}) + t_max), {}};
  run.star = star_pair_trajectory(run.tasep);
  return run;
}

AtomLaw z_limit_distribution(const Environment& env, Index n_hi) {
  if (n_hi < 2) fail(Errc::empty_range, "n_hi must be >= 2");
  const double b1 = env.b_at(1);
  AtomLaw law;
  law.m_hi = n_hi;
  double run = b1;  // b^min_{1:n-1}
  for (Index n = 2; n <= n_hi; ++n) {
    const double next = std::min(run, env.b_at(n));
    law.atoms[n] = (run - next) / b1;
    run = next;
  }
  const double inf = env.b().tail_inf(1);
  law.beyond = (run - inf) / b1;
  law.at_inf = inf / b1;
  return law;
}

ZrpClassification classify_zrp(const StarPair& star, double t_max, double speed_floor) {
  const Index z = star.at(t_max).J + 1;
  double last = 0.0;
  for (std::size_t k = 1; k < star.jumps.size() && star.jumps[k].t <= t_max; ++k)
    if (star.jumps[k].J != star.jumps[k - 1].J) last = star.jumps[k].t;
  ZrpFate fate;
  if (last < 0.75 * t_max)
    fate = ZrpFate::stabilized;
  else if (static_cast<double>(z) / t_max >= speed_floor)
    fate = ZrpFate::escaping;
  else
    fate = ZrpFate::ambiguous;
  return {fate, z, last};
}

}  // namespace icgm
