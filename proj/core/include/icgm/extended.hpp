#pragma once

#include <compare>
#include <limits>
#include <string>

#include <json.hpp>

namespace icgm {

// Extended real: -inf, finite, +inf as explicit states so that no float
// infinity leaks into arithmetic or serialized output.
class ExtReal {
 public:
  enum class Kind : unsigned char { neg_inf, finite, pos_inf };

  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : kind_(Kind::finite), v_(v) {}  // NOLINT implicit

  static constexpr ExtReal pos_inf() { return ExtReal(Kind::pos_inf); }
  static constexpr ExtReal neg_inf() { return ExtReal(Kind::neg_inf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  // Throws if not finite.
  double value() const;
  // Maps the infinite states onto IEEE infinities; for numeric helpers only.
  constexpr double as_double() const {
    switch (kind_) {
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      default: return v_;
    }
  }
  static ExtReal from_double(double d);

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.v_ == b.v_);
  }
  friend constexpr std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    return a.as_double() <=> b.as_double();
  }

  std::string to_string() const;

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  double v_ = 0.0;
};

// Sum with the convention that -inf + anything finite stays -inf; mixing
// opposite infinities is a contract error.
ExtReal operator+(const ExtReal& a, const ExtReal& b);
ExtReal operator-(const ExtReal& a, const ExtReal& b);
ExtReal min(const ExtReal& a, const ExtReal& b);
ExtReal max(const ExtReal& a, const ExtReal& b);

void to_json(nlohmann::json& j, const ExtReal& x);
void from_json(const nlohmann::json& j, ExtReal& x);

}  // namespace icgm
