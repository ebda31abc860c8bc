#pragma once

// Bilinear-form covariants of a Fock state: the vector K_I, the moment-map
// matrix K^I_J, the four-index pair tensor R^{IJ}_{KL} together with its
// quartic companion, the 28x28 pair-labelled view used for the eight-mode
// four-fermion sector, and the two-particle reduced density matrices.
//
// Index conventions: a single index I runs over 1..2N with e_I = n_I for
// I <= N and e_I = p^{I-N} above; raising is multiplication by the
// off-diagonal metric g, so e^i = p^i and e^{i+N} = n_i for a mode index i.
// Upper pair slots in R^{IJ}_{KL} are stored raised, i.e. the entry at
// (i, j | k, l) with all four in 1..N is (psi, p^i p^j n_k n_l psi).

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinorlab/clifford.hpp"
#include "spinorlab/embed.hpp"
#include "spinorlab/fock.hpp"
#include "spinorlab/linalg.hpp"
#include "spinorlab/pairing.hpp"

namespace spinorlab {

// K_I = (psi, e_I psi), I = 1..2N.
template <class S>
std::vector<S> k_vector(const FockState<S>& psi) {
  const int n = psi.modes;
  std::vector<S> k;
  k.reserve(2 * n);
  for (int index = 1; index <= 2 * n; ++index)
    k.push_back(mukai_pairing(psi, basis_op_apply(psi, index)));
  return k;
}

// M_{IJ} = (psi, e_I e_J psi).
template <class S>
Mat<S> pair_moment_matrix(const FockState<S>& psi) {
  const int n = psi.modes;
  Mat<S> m(2 * n, 2 * n);
  for (int j = 1; j <= 2 * n; ++j) {
    FockState<S> ej = basis_op_apply(psi, j);
    for (int i = 1; i <= 2 * n; ++i)
      m(i - 1, j - 1) = mukai_pairing(psi, basis_op_apply(ej, i));
  }
  return m;
}

// K^I_J = (psi, e^I e_J psi) = (g M)^I_J.
template <class S>
Mat<S> k_matrix(const FockState<S>& psi) {
  return metric_g<S>(psi.modes) * pair_moment_matrix(psi);
}

// Tensor with two raised and two lowered pair slots, stored as a flat
// (2N)^2 x (2N)^2 matrix over ordered index pairs.
template <class S>
struct PairMatrix {
  int dim = 0;  // number of single-index values
  Mat<S> entries;

  PairMatrix() = default;
  explicit PairMatrix(int d) : dim(d), entries(Mat<S>::Zero(d * d, d * d)) {}

  int slot(int i, int j) const { return (i - 1) * dim + (j - 1); }

  S& at(int i, int j, int k, int l) { return entries(slot(i, j), slot(k, l)); }
  const S& at(int i, int j, int k, int l) const { return entries(slot(i, j), slot(k, l)); }
};

// All unordered pairs (a < b) of 1..dim in lexicographic order.
inline std::vector<std::pair<int, int>> pair_basis(int dim) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(dim * (dim - 1) / 2);
  for (int a = 1; a <= dim; ++a)
    for (int b = a + 1; b <= dim; ++b) pairs.emplace_back(a, b);
  return pairs;
}

// Matrix of a four-index tensor restricted to unordered pairs: row (I < J),
// column (K < L), entry T^{IJ}_{KL}.  Trace powers of this view give the
// pair-contraction invariants.
template <class S>
Mat<S> restricted_pair_view(const PairMatrix<S>& t) {
  const auto pairs = pair_basis(t.dim);
  const int d = int(pairs.size());
  Mat<S> m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      m(r, c) = t.at(pairs[r].first, pairs[r].second, pairs[c].first, pairs[c].second);
  return m;
}

namespace detail {

// [e_A, e_B] psi for every unordered single-index pair A < B of 1..2N,
// indexed by position in pair_basis(2N).
template <class S>
std::vector<FockState<S>> commutator_states(const FockState<S>& psi) {
  const int n = psi.modes;
  std::vector<FockState<S>> out;
  out.reserve(n * (2 * n - 1));
  for (int a = 1; a <= 2 * n; ++a) {
    FockState<S> ea = basis_op_apply(psi, a);
    for (int b = a + 1; b <= 2 * n; ++b)
      out.push_back(basis_op_apply(basis_op_apply(psi, b), a) - basis_op_apply(ea, b));
  }
  return out;
}

inline int pair_position(int dim, int a, int b) {  // requires a < b
  return (a - 1) * dim - (a * (a + 1)) / 2 + (b - 1);
}

inline int raise_index(int dim, int index) { return index <= dim / 2 ? index + dim / 2 : index - dim / 2; }

}  // namespace detail

// R^{IJ}_{KL} = 1/4 (psi, [e^I, e^J][e_K, e_L] psi), antisymmetric in both
// pair slots.  Defined when the bilinear form is symmetric (N = 0 mod 4).
template <class S>
PairMatrix<S> r_tensor(const FockState<S>& psi) {
  const int n = psi.modes;
  if (n % 4 != 0) throw std::domain_error("pair tensor needs a symmetric bilinear form (modes = 0 mod 4)");
  PairMatrix<S> t(2 * n);
  const auto comm = detail::commutator_states(psi);
  const auto quarter = S(1) / S(4);
  for (int i = 1; i <= 2 * n; ++i)
    for (int j = i + 1; j <= 2 * n; ++j) {
      // [e^I, e^J] = +/- [e_A, e_B] with (A, B) the sorted raised pair.
      int a = detail::raise_index(2 * n, i);
      int b = detail::raise_index(2 * n, j);
      bool swapped = a > b;
      if (swapped) std::swap(a, b);
      const FockState<S>& upper = comm[detail::pair_position(2 * n, a, b)];
      for (int k = 1; k <= 2 * n; ++k)
        for (int l = k + 1; l <= 2 * n; ++l) {
          const FockState<S>& lower = comm[detail::pair_position(2 * n, k, l)];
          S value = S(0) - quarter * mukai_pairing(upper, lower);
          if (swapped) value = S(0) - value;
          t.at(i, j, k, l) = value;
          t.at(j, i, k, l) = S(0) - value;
          t.at(i, j, l, k) = S(0) - value;
          t.at(j, i, l, k) = value;
        }
    }
  return t;
}

// Literal quartic expectation K4^{IJ}_{KL} = (psi, e^I e^J e_K e_L psi),
// computed term by term with no symmetry assumptions.
template <class S>
PairMatrix<S> k_pair_tensor(const FockState<S>& psi) {
  const int n = psi.modes;
  PairMatrix<S> t(2 * n);
  for (int i = 1; i <= 2 * n; ++i) {
    FockState<S> left = basis_op_apply(psi, detail::raise_index(2 * n, i));
    for (int j = 1; j <= 2 * n; ++j) {
      // (psi, e^I e^J phi) = (e^J e^I psi, phi) by the transpose rule.
      FockState<S> bra = basis_op_apply(left, detail::raise_index(2 * n, j));
      for (int l = 1; l <= 2 * n; ++l) {
        FockState<S> el = basis_op_apply(psi, l);
        for (int k = 1; k <= 2 * n; ++k)
          t.at(i, j, k, l) = mukai_pairing(bra, basis_op_apply(el, k));
      }
    }
  }
  return t;
}

// Row labels of the 28x28 pair-labelled matrix at eight modes: for each of
// the six mode pairs (a, b) of distinct qubit sites the four rows
// (a b), (a b+4), (a+4 b), (a+4 b+4), then the four same-site pairs.
inline std::vector<std::pair<int, int>> katanova_pair_labels() {
  static const std::array<std::pair<int, int>, 6> site_pairs = {
      {{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}, {2, 3}}};
  std::vector<std::pair<int, int>> labels;
  labels.reserve(28);
  for (auto [a, b] : site_pairs) {
    labels.emplace_back(a, b);
    labels.emplace_back(a, b + 4);
    labels.emplace_back(a + 4, b);
    labels.emplace_back(a + 4, b + 4);
  }
  for (int a = 1; a <= 4; ++a) labels.emplace_back(a, a + 4);
  return labels;
}

// The 28x28 matrix with entry (row ij, column kl) = 1/2 R^{ij}_{lk}
// (lower pair swapped), rows and columns ordered by katanova_pair_labels.
// For single-occupancy four-qubit states it is block diagonal with six 4x4
// blocks and one zero block.
template <class S>
Mat<S> katanova_28(const FockState<S>& psi) {
  if (psi.modes != 8) throw std::domain_error("the 28x28 pair matrix needs eight modes");
  for (const auto& [mask, coeff] : psi.terms)
    if (occupancy(mask) != 4) throw std::domain_error("the 28x28 pair matrix needs a four-particle state");
  const PairMatrix<S> t = r_tensor(psi);
  const auto labels = katanova_pair_labels();
  const auto half = S(1) / S(2);
  Mat<S> m(28, 28);
  for (int r = 0; r < 28; ++r)
    for (int c = 0; c < 28; ++c)
      m(r, c) = half * t.at(labels[r].first, labels[r].second, labels[c].second, labels[c].first);
  return m;
}

// rho^{ij}_{kl} = 1/2 <psi| p^{ij} n_{kl} psi> with the Hermitian product;
// mode indices only, stored as a PairMatrix of dimension N.
template <class S>
PairMatrix<S> rho_tensor(const FockState<S>& psi) {
  const int n = psi.modes;
  PairMatrix<S> t(n);
  const auto half = S(1) / S(2);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      // <psi| p^i p^j phi> = <n_j n_i psi | phi>.
      FockState<S> bra = apply_word(psi, {annihilate(j), annihilate(i)});
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          if (l == k) continue;
          t.at(i, j, k, l) = half * hermitian_inner(bra, apply_word(psi, {annihilate(k), annihilate(l)}));
        }
    }
  return t;
}

// Two-site reduced density matrix for qubit sites (a, b) of a four-qubit
// state embedded in eight modes: rows and columns labelled
// (a b), (a b+4), (a+4 b), (a+4 b+4), entry <psi| p^{r1 r2} n_{c2 c1} psi>,
// i.e. twice the density tensor entry at (r1 r2 | c2 c1).  Written as a Gram
// matrix of annihilated states so Hermiticity is manifest; for a normalized
// single-occupancy state it is the trace-one density matrix of the site pair.
template <class S>
Mat<S> reduced_density(const FockState<S>& psi, int site_a, int site_b) {
  if (psi.modes != 8) throw std::domain_error("two-site densities are defined for eight modes");
  if (site_a < 1 || site_b < 1 || site_a > 4 || site_b > 4 || site_a == site_b)
    throw std::domain_error("two-site densities need two distinct qubit sites in 1..4");
  const std::array<std::pair<int, int>, 4> rows = {{{site_a, site_b},
                                                    {site_a, site_b + 4},
                                                    {site_a + 4, site_b},
                                                    {site_a + 4, site_b + 4}}};
  std::array<FockState<S>, 4> cut;
  for (int r = 0; r < 4; ++r)
    cut[r] = apply_word(psi, {annihilate(rows[r].second), annihilate(rows[r].first)});
  Mat<S> m(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = hermitian_inner(cut[r], cut[c]);
  return m;
}

// Amplitude matrices of a four-qubit state under the three inequivalent
// pairings of the sites: L groups (12|34), M groups (31|24), N groups
// (14|23); rows and columns are the two-bit values of the grouped sites.
template <class S>
std::array<Mat<S>, 3> lmn_matrices(const QubitState<S>& q) {
  if (q.qubits != 4) throw std::domain_error("amplitude pair matrices need four qubits");
  std::array<Mat<S>, 3> out = {Mat<S>(4, 4), Mat<S>(4, 4), Mat<S>(4, 4)};
  for (int index = 0; index < 16; ++index) {
    const int m1 = QubitState<S>::bit(index, 1, 4);
    const int m2 = QubitState<S>::bit(index, 2, 4);
    const int m3 = QubitState<S>::bit(index, 3, 4);
    const int m4 = QubitState<S>::bit(index, 4, 4);
    const S& a = q.amp[index];
    out[0](2 * m1 + m2, 2 * m3 + m4) = a;
    out[1](2 * m3 + m1, 2 * m2 + m4) = a;
    out[2](2 * m1 + m4, 2 * m2 + m3) = a;
  }
  return out;
}

// Antidiagonal sign matrix used to pair two-bit row labels, the tensor
// square of the 2x2 antisymmetric unit.
template <class S>
Mat<S> epsilon_kron() {
  Mat<S> e = Mat<S>::Zero(4, 4);
  e(0, 3) = S(1);
  e(1, 2) = S(0) - S(1);
  e(2, 1) = S(0) - S(1);
  e(3, 0) = S(1);
  return e;
}

}  // namespace spinorlab
