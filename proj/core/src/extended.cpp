#include "icgm/extended.hpp"

#include <cmath>
#include <sstream>

#include "icgm/error.hpp"

namespace icgm {

double ExtReal::value() const {
  if (!is_finite()) fail(Errc::contract, "value() on infinite extended real");
  return v_;
}

ExtReal ExtReal::from_double(double d) {
  if (std::isnan(d)) fail(Errc::contract, "NaN cannot be an extended real");
  if (std::isinf(d)) return d > 0 ? pos_inf() : neg_inf();
  return ExtReal(d);
}

std::string ExtReal::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v_;
  return os.str();
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.is_finite() && b.is_finite()) return ExtReal(a.value() + b.value());
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    fail(Errc::contract, "inf + (-inf) is undefined");
  return (a.is_pos_inf() || b.is_pos_inf()) ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

ExtReal operator-(const ExtReal& a, const ExtReal& b) {
  ExtReal nb = b.is_finite() ? ExtReal(-b.value())
               : b.is_pos_inf() ? ExtReal::neg_inf()
                                : ExtReal::pos_inf();
  return a + nb;
}

ExtReal min(const ExtReal& a, const ExtReal& b) { return (b < a) ? b : a; }
ExtReal max(const ExtReal& a, const ExtReal& b) { return (b > a) ? b : a; }

void to_json(nlohmann::json& j, const ExtReal& x) {
  if (x.is_finite())
    j = x.value();
  else
    j = x.to_string();
}

void from_json(const nlohmann::json& j, ExtReal& x) {
  if (j.is_number()) {
    x = ExtReal(j.get<double>());
  } else if (j.is_string() && j.get<std::string>() == "inf") {
    x = ExtReal::pos_inf();
  } else if (j.is_string() && j.get<std::string>() == "-inf") {
    x = ExtReal::neg_inf();
  } else {
    fail(Errc::config, "expected number, \"inf\" or \"-inf\"");
  }
}

}  // namespace icgm
