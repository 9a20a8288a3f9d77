#include "icgm/lpp.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <ostream>

#include "icgm/error.hpp"

namespace icgm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_inside(const Rect& r, Site s, const char* what) {
  if (!r.contains(s)) fail(Errc::window_violation, std::string(what) + ": site outside rectangle");
}

}  // namespace

ExtReal PassageField::at(Site y) const {
  if (!leq(base, y)) return ExtReal::neg_inf();
  require_inside(rect(), y, "PassageField::at");
  return G(y);
}

PassageField passage_times(const WeightField& w, Site x) {
  const Rect& r = w.rect();
  if (!(x == r.lo)) fail(Errc::contract, "passage base must be the rectangle's lower corner");
  PassageField pf{x, Field<double>(r)};
  const Index W = r.width();
  const double* w0 = w.row(r.lo.j);
  double* g0 = pf.G.row(r.lo.j);
  g0[0] = w0[0];
  for (Index i = 1; i < W; ++i) g0[i] = g0[i - 1] + w0[i];
  for (Index j = r.lo.j + 1; j <= r.hi.j; ++j) {
    const double* wr = w.row(j);
    const double* below = pf.G.row(j - 1);
    double* g = pf.G.row(j);
    double left = kNegInf;
    for (Index i = 0; i < W; ++i) {
      left = wr[i] + std::max(left, below[i]);
      g[i] = left;
    }
  }
  return pf;
}

Field<double> passage_to_corner(const WeightField& w) {
  const Rect& r = w.rect();
  Field<double> B(r);
  const Index W = r.width();
  {
    const double* wr = w.row(r.hi.j);
    double* b = B.row(r.hi.j);
    b[W - 1] = wr[W - 1];
    for (Index i = W - 2; i >= 0; --i) b[i] = b[i + 1] + wr[i];
  }
  for (Index j = r.hi.j - 1; j >= r.lo.j; --j) {
    const double* wr = w.row(j);
    const double* above = B.row(j + 1);
    double* b = B.row(j);
    double right = kNegInf;
    for (Index i = W - 1; i >= 0; --i) {
      right = wr[i] + std::max(right, above[i]);
      b[i] = right;
    }
  }
  return B;
}

double brute_force_passage(const WeightField& w, Site x, Site y) {
  if (!leq(x, y)) fail(Errc::contract, "brute force needs x <= y");
  require_inside(w.rect(), x, "brute_force_passage");
  require_inside(w.rect(), y, "brute_force_passage");
  if (y.i - x.i + 1 > 12 || y.j - x.j + 1 > 12) fail(Errc::size, "brute force limited to side 12");
  double best = kNegInf;
  // Each path is a sequence of steps; enumerate by bitmask over the step
  // positions taking e1.
  const int n1 = static_cast<int>(y.i - x.i), n2 = static_cast<int>(y.j - x.j);
  const int n = n1 + n2;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != n1) continue;
    Site s = x;
    double sum = w(s);
    for (int k = 0; k < n; ++k) {
      s = s + ((mask >> k) & 1u ? e1 : e2);
      sum += w(s);
    }
    best = std::max(best, sum);
  }
  return best;
}

IncrementField terminal_increments(const PassageField& pf) {
  const Rect& r = pf.rect();
  IncrementField inc{Field<ExtReal>(r), Field<ExtReal>(r)};
  for (Index j = r.lo.j; j <= r.hi.j; ++j)
    for (Index i = r.lo.i; i <= r.hi.i; ++i) {
      const Site y{i, j};
      inc.I(y) = i > pf.base.i ? ExtReal(pf.G(y) - pf.G(y - e1)) : ExtReal::pos_inf();
      inc.J(y) = j > pf.base.j ? ExtReal(pf.G(y) - pf.G(y - e2)) : ExtReal::pos_inf();
    }
  return inc;
}

IncrementField initial_increments(const WeightField& w) {
  // L(x, hi; w) = L(lo, lo+hi-x; w<-): initial increments are terminal
  // increments of the reflected field read at the mirrored site.
  const Rect& r = w.rect();
  const PassageField pr = passage_times(reflect_weights(w), r.lo);
  IncrementField inc{Field<ExtReal>(r), Field<ExtReal>(r)};
  const Site s = r.lo + r.hi;
  for (Index j = r.lo.j; j <= r.hi.j; ++j)
    for (Index i = r.lo.i; i <= r.hi.i; ++i) {
      const Site x{i, j}, m = s - x;
      inc.I(x) = i < r.hi.i ? ExtReal(pr.G(m) - pr.G(m - e1)) : ExtReal::pos_inf();
      inc.J(x) = j < r.hi.j ? ExtReal(pr.G(m) - pr.G(m - e2)) : ExtReal::pos_inf();
    }
  return inc;
}

IncrementField increments(const PassageField& pf, IncrementMode mode, const WeightField* w) {
  if (mode == IncrementMode::terminal) return terminal_increments(pf);
  if (w == nullptr) fail(Errc::contract, "initial increments need the weight field");
  return initial_increments(*w);
}

WeightField restrict_field(const WeightField& w, const Rect& r) {
  if (!w.rect().contains(r.lo) || !w.rect().contains(r.hi) || r.empty())
    fail(Errc::window_violation, "restriction outside the field");
  if (r == w.rect()) return w;
  WeightField out(r);
  for (Index j = r.lo.j; j <= r.hi.j; ++j) {
    const double* src = w.row(j) + (r.lo.i - w.rect().lo.i);
    std::copy(src, src + r.width(), out.row(j));
  }
  return out;
}

Geodesic finite_geodesic(const WeightField& w, Site x, Site y) {
  if (!leq(x, y)) fail(Errc::contract, "geodesic needs x <= y");
  const WeightField sub = restrict_field(w, Rect{x, y});
  const PassageField pf = passage_times(sub, x);
  Geodesic g;
  std::vector<Site> rev{y};
  Site z = y;
  while (!(z == x)) {
    if (z.i == x.i) {
      z = z - e2;
    } else if (z.j == x.j) {
      z = z - e1;
    } else {
      const double gl = pf.G(z - e1), gd = pf.G(z - e2);
      if (gl == gd) g.tie = true;
      z = gl > gd ? z - e1 : z - e2;
    }
    rev.push_back(z);
  }
  std::reverse(rev.begin(), rev.end());
  g.path = LatticePath(PathKind::up_right, std::move(rev));
  return g;
}

Geodesic finite_geodesic_forward(const WeightField& w, Site x, Site y) {
  if (!leq(x, y)) fail(Errc::contract, "geodesic needs x <= y");
  const Field<double> B = passage_to_corner(restrict_field(w, Rect{x, y}));
  Geodesic g;
  LatticePath p(PathKind::up_right, {x});
  Site z = x;
  while (!(z == y)) {
    if (z.i == y.i) {
      z = z + e2;
    } else if (z.j == y.j) {
      z = z + e1;
    } else {
      const double r = B(z + e1), u = B(z + e2);
      if (r == u) g.tie = true;
      z = r > u ? z + e1 : z + e2;
    }
    p.push_back(z);
  }
  g.path = std::move(p);
  return g;
}

double path_weight(const WeightField& w, const LatticePath& p) {
  double s = 0.0;
  for (const Site& z : p.sites()) s += w(z);
  return s;
}

std::tuple<double, double, double> lindley_F(double I, double J, double W) {
  return {W + std::max(I - J, 0.0), W + std::max(J - I, 0.0), std::min(I, J)};
}

WeightField reflect_weights(const WeightField& w) {
  const Rect& r = w.rect();
  WeightField out(r);
  const auto& src = w.data();
  auto& dst = out.data();
  std::reverse_copy(src.begin(), src.end(), dst.begin());
  return out;
}

WeightField dual_weights(const WeightField& w) {
  const Rect& r = w.rect();
  WeightField w0 = w;
  w0(r.lo) = 0.0;
  const PassageField pf = passage_times(w0, r.lo);
  WeightField out(r);
  for (Index j = r.lo.j; j <= r.hi.j; ++j)
    for (Index i = r.lo.i; i <= r.hi.i; ++i) {
      const Site x{i, j};
      const bool east = i == r.hi.i, north = j == r.hi.j;
      double v;
      if (east && north) {
        v = 0.0;
      } else if (north) {
        v = pf.G(x + e1) - pf.G(x);
      } else if (east) {
        v = pf.G(x + e2) - pf.G(x);
      } else {
        v = std::min(pf.G(x + e1) - pf.G(x), pf.G(x + e2) - pf.G(x));
      }
      out(x) = v;
    }
  return out;
}

ExtReal passage_no_init(const WeightField& w, Site x, Site y) {
  if (!leq(x, y)) return ExtReal::neg_inf();
  WeightField sub = restrict_field(w, Rect{x, y});
  sub(x) = 0.0;
  return passage_times(sub, x).G(y);
}

void write_field_csv(std::ostream& os, const WeightField& w, const PassageField& pf) {
  os << "i,j,w,G\n";
  os.precision(17);
  const Rect& r = pf.rect();
  for (Index j = r.lo.j; j <= r.hi.j; ++j)
    for (Index i = r.lo.i; i <= r.hi.i; ++i)
      os << i << ',' << j << ',' << w({i, j}) << ',' << pf.G({i, j}) << '\n';
}

void write_path_csv(std::ostream& os, const LatticePath& p) {
  os << "n,i,j\n";
  for (const Site& s : p.sites()) os << s.level() << ',' << s.i << ',' << s.j << '\n';
}

}  // namespace icgm
