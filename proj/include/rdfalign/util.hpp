#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace rdfalign {

// Runs fn(begin, end) over [0, n) split into contiguous chunks. threads <= 1
// runs inline. Results must be written to disjoint slots.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || n < 2048) {
    fn(0, n);
    return;
  }
  std::size_t workers = std::min<std::size_t>(threads, n);
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// Deterministic RNG helpers on top of a splitmix64 engine. Kept stdlib-free
// so generated artifacts are bit-identical across standard library
// implementations.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  // Uniform in [0, 1).
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return real01() < p; }
};

} // namespace rdfalign
