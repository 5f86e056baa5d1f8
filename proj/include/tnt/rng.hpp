#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "tnt/geometry.hpp"

namespace tnt {

// splitmix64 — used to derive well-mixed child seeds from a master seed plus
// salts (needle index, thread index, episode index, ...), so per-episode
// streams are independent of execution order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t combine_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x8f1bbcdcbfa53e0bULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

// Deterministic across platforms: all draws go through gen() directly instead
// of the implementation-defined std <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on [0, 1).
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal(double mean, double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + sigma * spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return mean + sigma * r * std::cos(a);
  }

  // Uniform over the disk of given radius (density uniform in area).
  Vec2 in_disk(double radius) {
    double r = radius * std::sqrt(uniform01());
    double a = 2.0 * M_PI * uniform01();
    return {r * std::cos(a), r * std::sin(a)};
  }

  // Uniform direction on the unit sphere.
  Vec3 unit_vector() {
    double z = uniform(-1.0, 1.0);
    double a = 2.0 * M_PI * uniform01();
    double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(a), s * std::sin(a), z};
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tnt
