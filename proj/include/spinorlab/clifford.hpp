#pragma once

// Clifford-algebra action on Fock states: gamma operators, chirality, the
// quadratic generators of the orthogonal Lie algebra, and the finite
// transformations obtained by exponentiating them.
//
// Conventions (N = number of modes):
//   e-hat basis,  index I in 1..2N:   e_I = annihilate(I) for I <= N,
//                                     e_I = create(I-N)   for I  > N.
//   gamma basis,  index I in 1..2N:   gamma_I     = create(I) + annihilate(I),
//                                     gamma_{I+N} = create(I) - annihilate(I).
//   A linear operator x-hat is described by a 2N-component vector x with
//   x-hat = sum_I x[I-1] e_I.

#include <optional>
#include <stdexcept>

#include "spinorlab/fock.hpp"
#include "spinorlab/linalg.hpp"

namespace spinorlab {

// ---------------------------------------------------------------------------
// Basis operators.
// ---------------------------------------------------------------------------

// e_I psi in the (annihilators, creators) arrangement.
template <class S>
FockState<S> basis_op_apply(const FockState<S>& psi, int index) {
  const int n = psi.modes;
  if (index < 1 || index > 2 * n) throw std::out_of_range("basis operator index");
  if (index <= n) return apply_ladder(psi, annihilate(index));
  return apply_ladder(psi, create(index - n));
}

// x-hat psi for a 2N-component coefficient vector x.
template <class S>
FockState<S> linear_apply(const Vec<S>& x, const FockState<S>& psi) {
  const int n = psi.modes;
  if (int(x.size()) != 2 * n) throw std::invalid_argument("component vector has wrong length");
  FockState<S> out(n);
  for (int index = 1; index <= 2 * n; ++index) {
    const S& c = x(index - 1);
    if (ScalarOps<S>::is_zero(c)) continue;
    out += c * basis_op_apply(psi, index);
  }
  return out;
}

// gamma_I psi.
template <class S>
FockState<S> gamma_apply(const FockState<S>& psi, int index) {
  const int n = psi.modes;
  if (index < 1 || index > 2 * n) throw std::out_of_range("gamma index");
  const int mode = index <= n ? index : index - n;
  FockState<S> out = apply_ladder(psi, create(mode));
  if (index <= n)
    out += apply_ladder(psi, annihilate(mode));
  else
    out -= apply_ladder(psi, annihilate(mode));
  return out;
}

// Anticommutator metric of the gamma basis: diag(+1 x N, -1 x N).
template <class S>
Mat<S> eta_metric(int modes) {
  Mat<S> eta = Mat<S>::Zero(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    eta(i, i) = S(1);
    eta(modes + i, modes + i) = S(0) - S(1);
  }
  return eta;
}

// Anticommutator metric of the e-hat basis: off-diagonal identity blocks.
template <class S>
Mat<S> metric_g(int modes) {
  Mat<S> g = Mat<S>::Zero(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    g(i, modes + i) = S(1);
    g(modes + i, i) = S(1);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Chirality.
// ---------------------------------------------------------------------------

// (-1)^(particle number) term by term; this is the action of the volume
// element of the Clifford algebra.
template <class S>
FockState<S> parity_flip(const FockState<S>& psi) {
  FockState<S> out(psi.modes);
  for (const auto& [mask, coeff] : psi.terms)
    out.add_term(mask, occupancy(mask) % 2 == 0 ? coeff : S(0) - coeff);
  return out;
}

// The volume element as a literal product of all 2N gamma operators,
// normalised so that its square is the identity:
//   (-1)^(N(N-1)/2) gamma_1 ... gamma_N gamma_{N+1} ... gamma_{2N}.
template <class S>
FockState<S> chirality_operator_apply(const FockState<S>& psi) {
  const int n = psi.modes;
  FockState<S> out = psi;
  for (int index = 2 * n; index >= 1; --index) out = gamma_apply(out, index);
  if ((n * (n - 1) / 2) % 2 != 0) out = -out;
  return out;
}

// +1 if every term has even particle number, -1 if every term is odd,
// nullopt for mixed or zero states.
template <class S>
std::optional<int> chirality(const FockState<S>& psi) {
  if (psi.terms.empty()) return std::nullopt;
  int value = 0;
  for (const auto& [mask, coeff] : psi.terms) {
    const int parity = occupancy(mask) % 2 == 0 ? 1 : -1;
    if (value == 0) value = parity;
    if (value != parity) return std::nullopt;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Quadratic generators.
//
// A generator is parametrised by an N x N matrix A and antisymmetric N x N
// matrices B and C, acting on states as
//   s-hat = sum_ij A_ij create_i annihilate_j  -  (1/2) tr A
//         + (1/2) sum_ij B_ij create_i create_j
//         + (1/2) sum_ij C_ij annihilate_i annihilate_j.
// Its commutator action on linear operators, [s-hat, x-hat] = (Vx)-hat, is
// the block matrix V = [[-A^T, C], [B, A]] in the e-hat component order.
// ---------------------------------------------------------------------------

template <class S>
struct Generator {
  Mat<S> A, B, C;

  int modes() const { return int(A.rows()); }
};

template <class S>
Generator<S> make_generator(Mat<S> a, Mat<S> b, Mat<S> c) {
  const int n = int(a.rows());
  if (a.cols() != n || b.rows() != n || b.cols() != n || c.rows() != n || c.cols() != n)
    throw std::invalid_argument("generator blocks must be square and same size");
  return Generator<S>{std::move(a), std::move(b), std::move(c)};
}

template <class S>
FockState<S> apply_generator(const Generator<S>& gen, const FockState<S>& psi) {
  const int n = psi.modes;
  if (gen.modes() != n) throw std::invalid_argument("generator size does not match state");
  S half_trace(0);
  for (int i = 0; i < n; ++i) half_trace += gen.A(i, i);
  half_trace = half_trace / S(2);
  FockState<S> out = (S(0) - half_trace) * psi;
  const S half = S(1) / S(2);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const S& a = gen.A(i - 1, j - 1);
      if (!ScalarOps<S>::is_zero(a))
        out += a * apply_word(psi, {create(i), annihilate(j)});
      const S& b = gen.B(i - 1, j - 1);
      if (!ScalarOps<S>::is_zero(b))
        out += (half * b) * apply_word(psi, {create(i), create(j)});
      const S& c = gen.C(i - 1, j - 1);
      if (!ScalarOps<S>::is_zero(c))
        out += (half * c) * apply_word(psi, {annihilate(i), annihilate(j)});
    }
  return out;
}

// Commutator action on linear operators: [s-hat, x-hat] = (Vx)-hat.
template <class S>
Mat<S> vector_action_matrix(const Generator<S>& gen) {
  const int n = gen.modes();
  Mat<S> v = Mat<S>::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      v(i, j) = S(0) - gen.A(j, i);
      v(i, n + j) = gen.C(i, j);
      v(n + i, j) = gen.B(i, j);
      v(n + i, n + j) = gen.A(i, j);
    }
  return v;
}

// Antisymmetric coefficient matrix of the generator in the e-hat basis:
// s-hat = (1/2) sum_IJ lambda_IJ e_I e_J with lambda = V g.
template <class S>
Mat<S> lambda_of(const Generator<S>& gen) {
  return vector_action_matrix(gen) * metric_g<S>(gen.modes());
}

// (1/2) sum_IJ lambda_IJ e_I e_J applied to a state.
template <class S>
FockState<S> quadratic_apply(const Mat<S>& lambda, const FockState<S>& psi) {
  const int n = psi.modes;
  if (lambda.rows() != 2 * n || lambda.cols() != 2 * n)
    throw std::invalid_argument("coefficient matrix has wrong size");
  FockState<S> out(n);
  const S half = S(1) / S(2);
  for (int I = 1; I <= 2 * n; ++I)
    for (int J = 1; J <= 2 * n; ++J) {
      const S& c = lambda(I - 1, J - 1);
      if (ScalarOps<S>::is_zero(c)) continue;
      out += (half * c) * basis_op_apply(basis_op_apply(psi, J), I);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Finite transformations.
// ---------------------------------------------------------------------------

// exp(op) psi for an operator whose repeated application eventually kills
// every state (the series must terminate).
template <class S, class F>
FockState<S> exp_apply(F&& op, const FockState<S>& psi, int max_terms = 200) {
  FockState<S> acc = psi;
  FockState<S> term = psi;
  for (int k = 1; k <= max_terms; ++k) {
    term = op(term);
    if (term.terms.empty()) return acc;
    term *= S(1) / S(k);
    acc += term;
  }
  throw std::runtime_error("operator exponential series did not terminate");
}

// exp of the pair-creation operator (1/2) sum_ij B_ij create_i create_j.
template <class S>
FockState<S> b_transform(const Mat<S>& b, const FockState<S>& psi) {
  const int n = psi.modes;
  if (b.rows() != n || b.cols() != n) throw std::invalid_argument("matrix size mismatch");
  Generator<S> gen{Mat<S>::Zero(n, n), b, Mat<S>::Zero(n, n)};
  return exp_apply([&](const FockState<S>& s) { return apply_generator(gen, s); }, psi,
                   n / 2 + 2);
}

// exp of the pair-annihilation operator (1/2) sum_ij C_ij annihilate_i annihilate_j.
template <class S>
FockState<S> c_transform(const Mat<S>& c, const FockState<S>& psi) {
  const int n = psi.modes;
  if (c.rows() != n || c.cols() != n) throw std::invalid_argument("matrix size mismatch");
  Generator<S> gen{Mat<S>::Zero(n, n), Mat<S>::Zero(n, n), c};
  return exp_apply([&](const FockState<S>& s) { return apply_generator(gen, s); }, psi,
                   n / 2 + 2);
}

// Determinant-one single-particle transformation m acting on each particle
// sector: the coefficient at an occupied set T becomes
//   sum_S det(m[T rows, S cols]) * coefficient at S
// over source sets S of the same size.  The exact determinant-one condition
// is enforced for exact scalars, where the half-density prefactor is 1.
template <class S>
FockState<S> gl_sector_transform(const Mat<S>& m, const FockState<S>& psi) {
  const int n = psi.modes;
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("matrix size mismatch");
  if constexpr (ScalarOps<S>::exact) {
    if (!(exact_det<S>(m) == S(1)))
      throw std::domain_error("sector transform requires determinant one");
  }
  auto sectors = particle_sectors(psi);
  FockState<S> out(n);
  for (const auto& [k, part] : sectors) {
    if (k == 0) {
      out += part;
      continue;
    }
    for (Mask target = 0; target < (Mask(1) << n); ++target) {
      if (occupancy(target) != k) continue;
      std::vector<int> rows;
      for (int mode = 1; mode <= n; ++mode)
        if (target & mode_bit(mode)) rows.push_back(mode - 1);
      S total(0);
      for (const auto& [source, coeff] : part.terms) {
        std::vector<int> cols;
        for (int mode = 1; mode <= n; ++mode)
          if (source & mode_bit(mode)) cols.push_back(mode - 1);
        Mat<S> sub(k, k);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) sub(r, c) = m(rows[r], cols[c]);
        total += exact_det<S>(sub) * coeff;
      }
      if (!ScalarOps<S>::is_zero(total)) out.add_term(target, total);
    }
  }
  return out;
}

}  // namespace spinorlab
