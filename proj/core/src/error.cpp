#include "icgm/error.hpp"

namespace icgm {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::window_violation: return "window-violation";
    case Errc::empty_range: return "empty-range";
    case Errc::invalid_environment: return "invalid-environment";
    case Errc::domain: return "domain";
    case Errc::unresolvable: return "unresolvable";
    case Errc::size: return "size";
    case Errc::contract: return "contract";
    case Errc::parameter: return "parameter";
    case Errc::path: return "path";
    case Errc::hypothesis_violation: return "hypothesis-violation";
    case Errc::mode: return "mode";
    case Errc::config: return "config";
    case Errc::sample: return "sample";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace icgm
