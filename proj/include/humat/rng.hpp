#pragma once

// Bit-exact random streams. Every draw is fully specified so that another
// implementation can reproduce a run:
//
//   stream seeding   SplitMix64 seeded with (root_seed + stream * 0x9E3779B97F4A7C15)
//                    fills the four xoshiro256** state words in order
//   next()           xoshiro256** 1.0
//   uniform01()      (next() >> 11) * 2^-53
//   uniform(lo, hi)  lo + (hi - lo) * uniform01()
//   bounded(n)       draw x until x >= (2^64 - n) mod n, return x mod n
//   shuffle          Fisher-Yates, i = n-1 down to 1, j = bounded(i + 1)

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace humat {

inline constexpr std::string_view kRngAlgorithm =
    "xoshiro256starstar/splitmix64-streams/v1";

enum class RngStream : std::uint64_t { Init = 1, Network = 2, Schedule = 3 };

constexpr std::uint64_t stream_seed(std::uint64_t root_seed, RngStream stream) {
  return root_seed + static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

class Rng {
 public:
  using State = std::array<std::uint64_t, 4>;
  using result_type = std::uint64_t;

  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed);
  static Rng from_state(const State& state);
  static Rng for_stream(std::uint64_t root_seed, RngStream stream);

  std::uint64_t next();
  double uniform01();
  double uniform(double lo, double hi);
  std::uint64_t bounded(std::uint64_t n);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(bounded(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  const State& state() const { return s_; }

  bool operator==(const Rng&) const = default;

 private:
  State s_{};
};

}  // namespace humat
