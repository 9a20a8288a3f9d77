#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace icgm {

using Index = std::int64_t;

struct Site {
  Index i = 0;
  Index j = 0;

  constexpr Index level() const { return i + j; }
  friend constexpr bool operator==(const Site&, const Site&) = default;
  friend constexpr Site operator+(Site a, Site b) { return {a.i + b.i, a.j + b.j}; }
  friend constexpr Site operator-(Site a, Site b) { return {a.i - b.i, a.j - b.j}; }
};

inline constexpr Site e1{1, 0};
inline constexpr Site e2{0, 1};

// Coordinatewise order.
constexpr bool leq(Site a, Site b) { return a.i <= b.i && a.j <= b.j; }
constexpr Site meet(Site a, Site b) { return {a.i < b.i ? a.i : b.i, a.j < b.j ? a.j : b.j}; }

struct Rect {
  Site lo;
  Site hi;

  constexpr bool empty() const { return !leq(lo, hi); }
  constexpr Index width() const { return empty() ? 0 : hi.i - lo.i + 1; }
  constexpr Index height() const { return empty() ? 0 : hi.j - lo.j + 1; }
  constexpr Index area() const { return width() * height(); }
  constexpr bool contains(Site s) const { return leq(lo, s) && leq(s, hi); }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

// xi = (xi1, 1 - xi1); ordering is the ordering of xi1.
class Direction {
 public:
  Direction() = default;
  explicit Direction(double xi1);
  double xi1() const { return xi1_; }
  double xi2() const { return 1.0 - xi1_; }
  friend bool operator==(const Direction&, const Direction&) = default;
  friend auto operator<=>(const Direction& a, const Direction& b) { return a.xi1_ <=> b.xi1_; }

 private:
  double xi1_ = 0.5;
};

enum class PathKind { up_right, down_right, dual };

// For dual paths the stored sites are the lower-left lattice corners
// phi - (1/2, 1/2), so the steps are e1/e2 as for up-right paths.
class LatticePath {
 public:
  LatticePath() = default;
  LatticePath(PathKind kind, std::vector<Site> sites);

  PathKind kind() const { return kind_; }
  const std::vector<Site>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  const Site& operator[](std::size_t n) const { return sites_[n]; }
  const Site& front() const { return sites_.front(); }
  const Site& back() const { return sites_.back(); }

  void push_back(Site s);

 private:
  void check_step(Site from, Site to) const;
  PathKind kind_ = PathKind::up_right;
  std::vector<Site> sites_;
};

// Down-right staircase from `start` to `end` (start.i <= end.i, start.j >= end.j)
// alternating e1 and -e2 steps, taking e1 first.
LatticePath staircase(Site start, Site end);

void to_json(nlohmann::json& j, const Site& s);
void from_json(const nlohmann::json& j, Site& s);
void to_json(nlohmann::json& j, const Rect& r);
void from_json(const nlohmann::json& j, Rect& r);

}  // namespace icgm
