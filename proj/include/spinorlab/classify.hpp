// Annihilator subspace, nullity, and the pure-spinor (separability) test.
//
// A one-particle operator x = sum_i a_i n_i + sum_i b_i p^i annihilating a
// state spans, together with its peers, a totally isotropic subspace of the
// 2N-dimensional operator space.  Its dimension -- the nullity -- is at most
// N, and a nonzero state is a pure spinor exactly when the bound is attained.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spinorlab/clifford.hpp"
#include "spinorlab/fock.hpp"
#include "spinorlab/linalg.hpp"
#include "spinorlab/random.hpp"

namespace spinorlab {

// Basis of the space of one-particle operators killing a state.  Coefficient
// vectors have 2N entries: the first N multiply the annihilators n_1..n_N,
// the last N the creators p^1..p^N.
template <class S>
struct AnnihilatorBasis {
  std::vector<Vec<S>> vectors;
  int nullity = 0;
};

// Apply the operator with coefficient vector x in the (n, p) ordering.
template <class S>
FockState<S> mixed_ladder_apply(const Vec<S>& x, const FockState<S>& psi) {
  const int n = psi.modes;
  if (int(x.size()) != 2 * n)
    throw std::invalid_argument("coefficient vector must have 2N entries");
  FockState<S> out(n);
  for (int i = 1; i <= n; ++i) {
    if (!ScalarOps<S>::is_zero(x(i - 1)))
      out += x(i - 1) * apply_ladder(psi, annihilate(i));
    if (!ScalarOps<S>::is_zero(x(n + i - 1)))
      out += x(n + i - 1) * apply_ladder(psi, create(i));
  }
  return out;
}

// Anticommutator metric between two coefficient vectors: the (n, p) blocks
// pair off-diagonally.
template <class S>
S car_metric_pairing(const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != y.size() || x.size() % 2 != 0)
    throw std::invalid_argument("coefficient vectors must share an even length");
  const int n = int(x.size()) / 2;
  S total(0);
  for (int i = 0; i < n; ++i) total += x(i) * y(n + i) + x(n + i) * y(i);
  return total;
}

// Exact kernel of the linear map x -> x|psi> from the 2N coefficient vectors
// into the Fock space.
template <class S>
AnnihilatorBasis<S> annihilator_basis(const FockState<S>& psi) {
  if (psi.terms.empty())
    throw std::domain_error("annihilator of the zero state is undefined");
  const int n = psi.modes;
  const int dim = 1 << n;
  Mat<S> m = Mat<S>::Zero(dim, 2 * n);
  for (int col = 0; col < 2 * n; ++col) {
    const Ladder op = col < n ? annihilate(col + 1) : create(col - n + 1);
    const FockState<S> image = apply_ladder(psi, op);
    for (const auto& [mask, coeff] : image.terms) m(int(mask), col) = coeff;
  }
  const Mat<S> kernel = exact_kernel(m);
  AnnihilatorBasis<S> out;
  out.nullity = int(kernel.cols());
  out.vectors.reserve(out.nullity);
  for (int c = 0; c < kernel.cols(); ++c) out.vectors.push_back(kernel.col(c));
  return out;
}

template <class S>
int nullity(const FockState<S>& psi) {
  return annihilator_basis(psi).nullity;
}

// A nonzero state is a pure spinor iff its annihilator reaches the maximal
// isotropic dimension N.
template <class S>
bool is_pure_spinor(const FockState<S>& psi) {
  return nullity(psi) == psi.modes;
}

// Seeded random pure spinor: a nonzero multiple of a pair-creation
// exponential applied to the Slater monomial on the first k modes.
inline FockState<GaussianRational> random_pure_spinor(int modes, int k,
                                                      std::uint64_t seed) {
  if (modes < 1 || modes > kMaxModes)
    throw std::invalid_argument("mode count out of range");
  if (k < 0 || k > modes)
    throw std::invalid_argument("Slater size must lie in [0, N]");
  Rng rng(seed);
  LadderWord word;
  for (int mode = 1; mode <= k; ++mode) word.push_back(create(mode));
  FockState<GaussianRational> slater =
      apply_word(FockState<GaussianRational>::vacuum(modes), word);
  const GaussianRational lambda = rng.gaussian_rational(5, 3, false);
  return b_transform(rng.antisymmetric(modes), lambda * slater);
}

}  // namespace spinorlab
