#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace icgm {

enum class Errc {
  window_violation,
  empty_range,
  invalid_environment,
  domain,
  unresolvable,
  size,
  contract,
  parameter,
  path,
  hypothesis_violation,
  mode,
  config,
  sample,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace icgm
