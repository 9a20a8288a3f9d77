#pragma once

#include <iosfwd>
#include <tuple>

#include "icgm/extended.hpp"
#include "icgm/field.hpp"
#include "icgm/lattice.hpp"

namespace icgm {

// G(y) = L(base, y) over a rectangle whose lower corner is the base.
struct PassageField {
  Site base;
  Field<double> G;

  const Rect& rect() const { return G.rect(); }
  // -inf when base <= y fails; throws window_violation outside the rectangle.
  ExtReal at(Site y) const;
};

PassageField passage_times(const WeightField& w, Site x);

// L(p, hi) for every p in the rectangle.
Field<double> passage_to_corner(const WeightField& w);

// Enumerates every up-right path; rectangle sides are capped at 12.
double brute_force_passage(const WeightField& w, Site x, Site y);

struct IncrementField {
  Field<ExtReal> I, J;
};

enum class IncrementMode { initial, terminal };

// terminal: I = G(y) - G(y-e1), J = G(y) - G(y-e2) from the field's base.
// initial: I = L(x,hi) - L(x+e1,hi), J = L(x,hi) - L(x+e2,hi), computed on
// the reflected field. +inf where the shifted point leaves the ordering.
IncrementField increments(const PassageField& pf, IncrementMode mode, const WeightField* w = nullptr);
IncrementField terminal_increments(const PassageField& pf);
IncrementField initial_increments(const WeightField& w);

struct Geodesic {
  LatticePath path;
  bool tie = false;  // an exact floating tie was broken toward e2
};

// Backtracking from y through the larger predecessor.
Geodesic finite_geodesic(const WeightField& w, Site x, Site y);
// Forward local rule from x using L(., y).
Geodesic finite_geodesic_forward(const WeightField& w, Site x, Site y);

double path_weight(const WeightField& w, const LatticePath& p);

std::tuple<double, double, double> lindley_F(double I, double J, double W);

WeightField restrict_field(const WeightField& w, const Rect& r);
WeightField reflect_weights(const WeightField& w);
WeightField dual_weights(const WeightField& w);

// L(x, y) without the weight at x; -inf unless x <= y.
ExtReal passage_no_init(const WeightField& w, Site x, Site y);

void write_field_csv(std::ostream& os, const WeightField& w, const PassageField& pf);
void write_path_csv(std::ostream& os, const LatticePath& p);

}  // namespace icgm
