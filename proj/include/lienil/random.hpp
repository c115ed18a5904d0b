#pragma once

#include <cstdint>
#include <random>

#include "lienil/algebra.hpp"
#include "lienil/subspace.hpp"

namespace lienil {

/// Seeded generator with platform-independent draws. std distributions are
/// implementation-defined, so ranges are mapped by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, index), used to make per-trial and
  /// per-worker sampling independent of scheduling.
  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix(seed ^ splitmix(index + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

/// Small integers in [-3, 3] over Q, uniform residues over F_p.
inline Scalar random_scalar(const Field& f, Rng& rng) {
  if (f.is_rational()) return Scalar(f, static_cast<long>(rng.between(-3, 3)));
  return Scalar(f, static_cast<long>(rng.below(f.modulus())));
}

inline Scalar random_nonzero_scalar(const Field& f, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

inline Vector random_vector(const Field& f, std::size_t n, Rng& rng) {
  Vector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(f, rng));
  return v;
}

/// Random element whose coordinates are each nonzero with probability
/// num/den; sparse draws hit non-invertible elements far more often.
inline Element random_element(const Algebra& a, Rng& rng, std::uint64_t num = 1,
                              std::uint64_t den = 1) {
  Terms t;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (rng.chance(num, den)) {
      Scalar s = random_scalar(a.field(), rng);
      if (!s.is_zero()) t.emplace_back(static_cast<std::uint32_t>(i), s);
    }
  return a.element(t);
}

inline Element random_in_subspace(const Algebra& a, const Subspace& s, Rng& rng) {
  Vector coeffs = random_vector(a.field(), s.dim(), rng);
  return a.element(s.combination(coeffs));
}

}  // namespace lienil
