#pragma once

// Deterministic random generation for property tests and CLI sampling.
// Everything is driven by a single mt19937_64 stream so a seed reproduces a
// run exactly; the default seed comes from the SPINORLAB_SEED environment
// variable when present.

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spinorlab/fock.hpp"
#include "spinorlab/scalar.hpp"

namespace spinorlab {

constexpr std::uint64_t kDefaultSeed = 20230815;

inline std::uint64_t seed_from_environment() {
  if (const char* env = std::getenv("SPINORLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      // fall through to the default on malformed input
    }
  }
  return kDefaultSeed;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  static Rng from_environment() { return Rng(seed_from_environment()); }

  std::uint64_t raw() { return eng_(); }

  int int_in(int lo, int hi) {  // inclusive bounds
    return int(lo + std::uint64_t(eng_() % std::uint64_t(hi - lo + 1)));
  }

  // Small nonzero rational with numerator in [-max_num, max_num] and
  // denominator in [1, max_den].
  Rational rational(int max_num = 9, int max_den = 4, bool allow_zero = true) {
    while (true) {
      Rational r(int_in(-max_num, max_num), int_in(1, max_den));
      r.canonicalize();
      if (allow_zero || sgn(r) != 0) return r;
    }
  }

  GaussianRational gaussian_rational(int max_num = 9, int max_den = 4,
                                     bool allow_zero = true, bool real_only = false) {
    while (true) {
      GaussianRational z(rational(max_num, max_den), real_only ? Rational(0)
                                                               : rational(max_num, max_den));
      if (allow_zero || !z.is_zero()) return z;
    }
  }

  Mask mask(int modes) { return Mask(eng_() & full_mask(modes)); }

  // Sparse random state with `nterms` distinct basis kets (capped at the
  // space dimension), never zero.
  FockState<GaussianRational> state(int modes, int nterms, bool real_only = false) {
    nterms = std::min(nterms, 1 << modes);
    FockState<GaussianRational> s(modes);
    while (int(s.terms.size()) < nterms) {
      Mask m = mask(modes);
      if (s.terms.count(m)) continue;
      s.terms.emplace(m, gaussian_rational(9, 4, false, real_only));
    }
    return s;
  }

  // Random state supported on a fixed particle-number parity (0 = even).
  FockState<GaussianRational> weyl_state(int modes, int parity, int nterms,
                                         bool real_only = false) {
    nterms = std::min(nterms, 1 << (modes - 1));
    if (modes == 0) {
      nterms = parity == 0 ? 1 : 0;
    }
    FockState<GaussianRational> s(modes);
    while (int(s.terms.size()) < nterms) {
      Mask m = mask(modes);
      if ((occupancy(m) & 1) != parity || s.terms.count(m)) continue;
      s.terms.emplace(m, gaussian_rational(9, 4, false, real_only));
    }
    return s;
  }

  // Dense n-qubit amplitude vector (index bit 0 of qubit 1 is the most
  // significant position), never the zero vector.
  std::vector<GaussianRational> qubit_amplitudes(int n, bool real_only = false) {
    while (true) {
      std::vector<GaussianRational> amp(std::size_t(1) << n);
      bool nonzero = false;
      for (auto& a : amp) {
        a = gaussian_rational(7, 3, true, real_only);
        nonzero = nonzero || !a.is_zero();
      }
      if (nonzero) return amp;
    }
  }

  Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> matrix(int rows, int cols) {
    Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = gaussian_rational(5, 3);
    return m;
  }

  Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> antisymmetric(int n) {
    Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = GaussianRational(0);
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) {
        m(r, c) = gaussian_rational(5, 3);
        m(c, r) = GaussianRational(0) - m(r, c);
      }
    return m;
  }

  // Random SL(2) matrix: pick a, b, c with a != 0 and solve d = (1 + b c)/a.
  Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> sl2() {
    Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> m(2, 2);
    GaussianRational a = gaussian_rational(4, 2, false);
    GaussianRational b = gaussian_rational(4, 2);
    GaussianRational c = gaussian_rational(4, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = (GaussianRational(1) + b * c) / a;
    return m;
  }

  // Random SL(n) matrix as a product of elementary transvections, so the
  // determinant is exactly 1 by construction.
  Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic> sl(int n, int factors = 0) {
    using M = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
    if (factors <= 0) factors = 2 * n;
    M m = M::Identity(n, n);
    for (int f = 0; f < factors; ++f) {
      int r = int_in(0, n - 1);
      int c = int_in(0, n - 1);
      if (r == c) continue;
      M t = M::Identity(n, n);
      t(r, c) = gaussian_rational(3, 2, false);
      m = m * t;
    }
    return m;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace spinorlab
