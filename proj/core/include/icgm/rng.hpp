#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "icgm/lattice.hpp"

namespace icgm::rng {

// splitmix64 finalizer; used for key derivation and replica seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

// Seed of replica r derived from a master seed.
constexpr std::uint64_t replica_seed(std::uint64_t master, std::uint64_t r) {
  return combine(combine(master, 0x5245504cULL), r);
}

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32-10 (Salmon et al., SC'11).
inline Counter philox4x32(Counter ctr, Key key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{M0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{M1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += W0;
    key[1] += W1;
  }
  return ctr;
}

enum class Stream : std::uint64_t {
  bulk = 1,
  boundary = 2,
  parameters = 3,
  busemann = 4,
  auxiliary = 5,
};

// Stateless site-keyed generator: a pure function of (key, i, j, slot).
class SiteRng {
 public:
  SiteRng() = default;
  SiteRng(std::uint64_t seed, Stream stream, std::uint64_t subkey = 0);

  std::uint64_t bits(Index i, Index j) const {
    const auto ui = static_cast<std::uint64_t>(i), uj = static_cast<std::uint64_t>(j);
    Counter c = philox4x32({static_cast<std::uint32_t>(ui), static_cast<std::uint32_t>(ui >> 32),
                            static_cast<std::uint32_t>(uj), static_cast<std::uint32_t>(uj >> 32)},
                           key_);
    return (std::uint64_t{c[0]} << 32) | c[1];
  }
  // Uniform on the open interval (0,1).
  double uniform(Index i, Index j) const {
    return (static_cast<double>(bits(i, j) >> 11) + 0.5) * 0x1.0p-53;
  }
  // Unit-rate exponential.
  double exp1(Index i, Index j) const { return -std::log(uniform(i, j)); }

 private:
  Key key_{0, 0};
};

// Sequential generator for replica-level randomness (permutations etc.).
class Sequential {
 public:
  explicit Sequential(std::uint64_t seed, Stream stream = Stream::auxiliary)
      : rng_(seed, stream), n_(0) {}
  std::uint64_t next() { return rng_.bits(n_++, 0); }
  double uniform() { return rng_.uniform(n_++, 0); }
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  SiteRng rng_;
  Index n_;
};

}  // namespace icgm::rng
