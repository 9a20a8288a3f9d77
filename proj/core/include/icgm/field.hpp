#pragma once

#include <vector>

#include "icgm/lattice.hpp"

namespace icgm {

inline constexpr Index kMaxFieldSites = 100'000'000;

// Dense row-major array over a rectangle; rows run along j.
template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(Rect rect, T fill = T{});

  const Rect& rect() const { return rect_; }
  Index width() const { return rect_.width(); }
  Index height() const { return rect_.height(); }

  std::size_t offset(Site s) const {
    return static_cast<std::size_t>((s.j - rect_.lo.j) * rect_.width() + (s.i - rect_.lo.i));
  }
  T& operator()(Site s) { return data_[offset(s)]; }
  const T& operator()(Site s) const { return data_[offset(s)]; }
  T* row(Index j) { return data_.data() + (j - rect_.lo.j) * rect_.width(); }
  const T* row(Index j) const { return data_.data() + (j - rect_.lo.j) * rect_.width(); }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  Rect rect_{};
  std::vector<T> data_;
};

void check_field_size(const Rect& r);

template <class T>
Field<T>::Field(Rect rect, T fill) : rect_(rect) {
  check_field_size(rect);
  data_.assign(static_cast<std::size_t>(rect.area()), fill);
}

using WeightField = Field<double>;

}  // namespace icgm
