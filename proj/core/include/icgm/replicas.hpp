#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

#include "icgm/rng.hpp"

namespace icgm {

// Runs f(replica_index, replica_seed) for every replica on a small worker
// pool. Results land in replica order, so any reduction over the returned
// vector is independent of the worker count.
template <class F>
auto run_replicas(std::size_t replicas, std::uint64_t master_seed, unsigned workers, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::size_t, std::uint64_t>> {
  using R = std::invoke_result_t<F&, std::size_t, std::uint64_t>;
  std::vector<R> out(replicas);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(replicas, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= replicas) return;
      try {
        out[r] = f(r, rng::replica_seed(master_seed, r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = replicas;
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace icgm
