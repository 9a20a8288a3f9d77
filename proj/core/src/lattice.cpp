#include "icgm/lattice.hpp"

#include "icgm/error.hpp"
#include "icgm/json_util.hpp"

namespace icgm {

Direction::Direction(double xi1) : xi1_(xi1) {
  if (!(xi1 >= 0.0 && xi1 <= 1.0)) fail(Errc::domain, "direction xi1 must lie in [0,1]");
}

LatticePath::LatticePath(PathKind kind, std::vector<Site> sites) : kind_(kind) {
  sites_.reserve(sites.size());
  for (const Site& s : sites) push_back(s);
}

void LatticePath::push_back(Site s) {
  if (!sites_.empty()) check_step(sites_.back(), s);
  sites_.push_back(s);
}

void LatticePath::check_step(Site from, Site to) const {
  Site d = to - from;
  bool ok = false;
  switch (kind_) {
    case PathKind::up_right:
    case PathKind::dual: ok = (d == e1 || d == e2); break;
    case PathKind::down_right: ok = (d == e1 || d == Site{0, -1}); break;
  }
  if (!ok) fail(Errc::path, "step does not match path kind");
}

LatticePath staircase(Site start, Site end) {
  if (start.i > end.i || start.j < end.j) fail(Errc::path, "staircase endpoints not down-right");
  LatticePath p(PathKind::down_right, {start});
  Site cur = start;
  bool right = true;
  while (!(cur == end)) {
    if ((right && cur.i < end.i) || cur.j == end.j) {
      cur = cur + e1;
    } else {
      cur = cur - e2;
    }
    right = !right;
    p.push_back(cur);
  }
  return p;
}

void to_json(nlohmann::json& j, const Site& s) { j = nlohmann::json::array({s.i, s.j}); }

void from_json(const nlohmann::json& j, Site& s) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(Errc::config, "site must be an array [i, j] of integers");
  s = {j[0].get<Index>(), j[1].get<Index>()};
}

void to_json(nlohmann::json& j, const Rect& r) { j = {{"lo", r.lo}, {"hi", r.hi}}; }

void from_json(const nlohmann::json& j, Rect& r) {
  jsonu::check_keys(j, {"lo", "hi"}, "window");
  r.lo = jsonu::require(j, "lo", "window").get<Site>();
  r.hi = jsonu::require(j, "hi", "window").get<Site>();
  if (r.empty()) fail(Errc::config, "window: lo must be <= hi");
}

}  // namespace icgm
