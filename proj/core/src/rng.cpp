#include "icgm/rng.hpp"

#include "icgm/error.hpp"

namespace icgm::rng {

SiteRng::SiteRng(std::uint64_t seed, Stream stream, std::uint64_t subkey) {
  const std::uint64_t k = combine(combine(seed, static_cast<std::uint64_t>(stream)), subkey);
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

std::uint64_t Sequential::below(std::uint64_t bound) {
  if (bound == 0) fail(Errc::contract, "below(0)");
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

}  // namespace icgm::rng
