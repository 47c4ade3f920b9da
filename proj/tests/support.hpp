#pragma once

#include <cmath>
#include <functional>
#include <random>

#include <doctest.h>

#include "minkflex/core.hpp"
#include "minkflex/errors.hpp"

namespace testing {

using minkflex::Errc;
using minkflex::Vec2M;
using minkflex::Vec3M;

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

inline Vec3M random_vec3(std::mt19937_64& g, double r = 2.0) {
  return {uniform(g, -r, r), uniform(g, -r, r), uniform(g, -r, r)};
}

inline Vec2M random_vec2(std::mt19937_64& g, double r = 2.0) { return {uniform(g, -r, r), uniform(g, -r, r)}; }

// Random plane vector whose squared length is at least `margin` away from zero.
inline Vec2M random_nonnull_vec2(std::mt19937_64& g, double margin = 1e-2) {
  for (;;) {
    const Vec2M v = random_vec2(g);
    if (std::abs(minkflex::dot(v, v)) > margin) return v;
  }
}

inline Errc error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const minkflex::Error& e) {
    return e.code();
  }
  FAIL("expected a minkflex::Error");
  return Errc::Usage;
}

inline double dist(const Vec3M& a, const Vec3M& b) { return minkflex::euclidean_norm(a - b); }

}  // namespace testing
