#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace soti {

inline constexpr const char* kVersion = "0.1.0";

using complexd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Invalid physical or configuration input.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation not defined for the given input (e.g. momentum space of a
/// disordered lattice).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical validity check failed (gapless spectrum, broken symmetry, ...).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymmetryMismatchError : NumericalError {
  using NumericalError::NumericalError;
};

/// Wrap x into [0, 1).
inline double mod1(double x) {
  double y = x - std::floor(x);
  if (y >= 1.0) y -= 1.0;
  return y;
}

/// Distance between a and b on the unit circle (both taken mod 1).
inline double mod1_distance(double a, double b) {
  double d = mod1(a - b);
  return std::min(d, 1.0 - d);
}

/// Wrap an angle into [-pi, pi).
inline double wrap_pi(double k) {
  double y = std::remainder(k, 2.0 * kPi);
  if (y >= kPi) y -= 2.0 * kPi;
  if (y < -kPi) y += 2.0 * kPi;
  return y;
}

/// Counter-based generator with a portable uniform mapping. std::mt19937_64
/// plus uniform_real_distribution is not bit-reproducible across standard
/// libraries; this is, so seeded disorder realizations are stable artifacts.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) { next(); }

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

/// FNV-1a, used for config hashes in run manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace soti
