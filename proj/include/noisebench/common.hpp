// Shared plumbing: error types, deterministic RNG, hashing, summary statistics.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noisebench {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed container / unparseable text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed container, but a codec/layout we do not support.
class FormatError : public Error {
 public:
  using Error::Error;
};

// An argument violates an operation precondition.
class ParamError : public Error {
 public:
  using Error::Error;
};

// Input too short for the requested analysis.
class TooShortError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Structured data does not match the expected schema (dimension, alignment).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A required record set is incomplete (e.g. embedding sidecar misses clips).
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Data degenerate for the requested computation (single class, zero power).
class DataError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions do not, so all draws go through hand-rolled mappings. Every
// random decision in the toolkit flows through this class so that a seed
// pins outputs bit-exactly.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform in [0, n) by rejection; n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Inclusive integer range.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Box-Muller; consumes two draws per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Hashing (FNV-1a, 64-bit) — cache keys and derived seeds, not security.

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stable sub-seed derivation: one master seed plus a context tag.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  return splitmix64(base ^ fnv1a64(tag));
}

// ---------------------------------------------------------------------------
// Summary statistics over a sample (population moments throughout).

inline double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double stddev_pop(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

// Linear-interpolated percentile, p in [0, 100].
inline double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v[0];
  const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

inline double median_of(const std::vector<double>& v) { return percentile(v, 50.0); }

// Fisher skewness g1 = m3 / m2^(3/2); 0 for near-constant samples.
inline double skewness_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(v.size());
  m3 /= static_cast<double>(v.size());
  if (m2 < 1e-24) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

// Coefficient of variation; 0 when the mean is (near) zero.
inline double coef_variation(const std::vector<double>& v) {
  const double m = mean_of(v);
  if (std::fabs(m) < 1e-12) return 0.0;
  return stddev_pop(v) / std::fabs(m);
}

// Pairwise (cascade) summation of f(x) over v. Splits at the midpoint down to
// single elements, so summing a sequence concatenated with itself yields
// exactly twice the standalone sum for every length.
template <typename F>
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi, F f) {
  if (hi == lo) return 0.0;
  if (hi - lo == 1) return f(v[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid, f) + pairwise_sum(v, mid, hi, f);
}

template <typename F>
double pairwise_sum(const std::vector<double>& v, F f) {
  return pairwise_sum(v, 0, v.size(), f);
}

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace noisebench
