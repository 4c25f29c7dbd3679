#pragma once

#include <cmath>
#include <cstdint>

#include "bkit/types.hpp"

namespace bkit {

// Counter-based generator: a single 64-bit seed plus an index yields a value
// with no sequential state, so parallel loops sample identically to serial
// ones regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from (seed, index, stream).
inline double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  std::uint64_t v = splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL * (stream + 1)));
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

namespace detail {
// Kronecker (additive-recurrence) sequence: u_i = frac(offset + i * alpha)
// with alpha = frac(sqrt(prime)). Low-discrepancy in each stream; the seeded
// offset decorrelates runs while keeping them reproducible.
inline double kronecker(std::uint64_t seed, std::uint64_t index, int stream) {
  static constexpr double kAlphas[] = {
      0.41421356237309515,   // sqrt(2) - 1
      0.7320508075688772,    // sqrt(3) - 1
      0.2360679774997896,    // sqrt(5) - 2
      0.6457513110645907,    // sqrt(7) - 2
      0.3166247903553998,    // sqrt(11) - 3
      0.605551275463989,     // sqrt(13) - 3
      0.123105625617661,     // sqrt(17) - 4
      0.35889894354067355,   // sqrt(19) - 4
      0.79583152331271954,   // sqrt(23) - 4
      0.38516480713450403,   // sqrt(29) - 5
      0.56776436283002192,   // sqrt(31) - 5
      0.08276253029821934,   // sqrt(37) - 6
  };
  constexpr int kStreams = static_cast<int>(sizeof(kAlphas) / sizeof(kAlphas[0]));
  double alpha = kAlphas[stream % kStreams];
  double offset =
      static_cast<double>(splitmix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(stream + 1)) >> 11) *
      0x1.0p-53;
  double u = offset + static_cast<double>(index) * alpha;
  return u - std::floor(u);
}
}  // namespace detail

// Low-discrepancy point in the closed disk of the given radius, area-uniform.
// `stream` separates independent coordinates (z vs w, or polydisk factors).
inline Complex disk_sample(std::uint64_t seed, std::uint64_t index, int stream, double radius) {
  double u = detail::kronecker(seed, index, 2 * stream);
  double v = detail::kronecker(seed, index, 2 * stream + 1);
  double r = radius * std::sqrt(u);
  return Complex(r * std::cos(2.0 * kPi * v), r * std::sin(2.0 * kPi * v));
}

}  // namespace bkit
