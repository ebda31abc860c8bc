#pragma once

// Embedding n-qubit states into a fermionic Fock space on 2n modes.
//
// Qubit k is realised on the mode pair {k, k+n}: basis value 0 occupies
// mode k, value 1 occupies mode k+n, and a basis ket |m_1 ... m_n> maps to
// the ordered product of the n chosen creation operators on the vacuum.
// The 2^n "occupancy patterns" (products of the first n gamma operators)
// shift this embedding onto the other particle-number sectors, partitioning
// the whole Fock basis.

#include <sstream>
#include <stdexcept>
#include <vector>

#include "spinorlab/clifford.hpp"
#include "spinorlab/fock.hpp"
#include "spinorlab/linalg.hpp"

namespace spinorlab {

// Dense n-qubit amplitude vector; index bit for qubit 1 is the most
// significant, so |m_1 ... m_n> sits at index m_1 2^(n-1) + ... + m_n.
template <class S>
struct QubitState {
  int qubits = 0;
  std::vector<S> amp;

  QubitState() = default;
  explicit QubitState(int n) : qubits(n), amp(std::size_t(1) << n, S(0)) {}

  int dimension() const { return int(amp.size()); }

  // Basis value of qubit k (1-based) inside a dense index.
  static int bit(int index, int k, int n) { return (index >> (n - k)) & 1; }

  friend bool operator==(const QubitState& a, const QubitState& b) {
    return a.qubits == b.qubits && a.amp == b.amp;
  }
  friend bool operator!=(const QubitState& a, const QubitState& b) { return !(a == b); }
};

// |m_1 ... m_n>  ->  product over k of create(k or k+n) applied to vacuum.
template <class S>
FockState<S> embed_single(const QubitState<S>& q) {
  const int n = q.qubits;
  FockState<S> out(2 * n);
  for (int index = 0; index < q.dimension(); ++index) {
    const S& a = q.amp[index];
    if (ScalarOps<S>::is_zero(a)) continue;
    LadderWord word;
    for (int k = 1; k <= n; ++k)
      word.push_back(create(QubitState<S>::bit(index, k, n) ? k + n : k));
    out += a * apply_word(FockState<S>::vacuum(2 * n), word);
  }
  return out;
}

// Pattern embedding: apply gamma_k for every set pattern bit, gamma_n acting
// first, after the plain embedding.
template <class S>
FockState<S> embed_pattern(const QubitState<S>& q, const std::vector<int>& pattern) {
  const int n = q.qubits;
  if (int(pattern.size()) != n) throw std::invalid_argument("pattern length must match qubits");
  FockState<S> out = embed_single(q);
  for (int k = n; k >= 1; --k)
    if (pattern[k - 1]) out = gamma_apply(out, k);
  return out;
}

// Inverse of embed_pattern (empty pattern = plain embedding).  Throws if the
// state is not in the image, naming the offending monomials.
template <class S>
QubitState<S> extract_qubit(const FockState<S>& psi, const std::vector<int>& pattern = {}) {
  if (psi.modes % 2 != 0) throw std::invalid_argument("need an even number of modes");
  const int n = psi.modes / 2;
  if (!pattern.empty() && int(pattern.size()) != n)
    throw std::invalid_argument("pattern length must match qubits");
  FockState<S> work = psi;
  if (!pattern.empty())
    for (int k = 1; k <= n; ++k)
      if (pattern[k - 1]) work = gamma_apply(work, k);
  QubitState<S> out(n);
  std::ostringstream bad;
  for (const auto& [mask, coeff] : work.terms) {
    int index = 0;
    bool ok = true;
    int inversions = 0, seen_ones = 0;
    for (int k = 1; k <= n; ++k) {
      const bool low = (mask & mode_bit(k)) != 0;
      const bool high = (mask & mode_bit(k + n)) != 0;
      if (low == high) {
        ok = false;
        break;
      }
      index = (index << 1) | (high ? 1 : 0);
      // Sign of sorting the creation word (one operator per qubit).
      if (high)
        ++seen_ones;
      else
        inversions += seen_ones;
    }
    if (!ok) {
      bad << " " << mask;
      continue;
    }
    out.amp[index] = (inversions % 2 != 0) ? S(0) - coeff : coeff;
  }
  if (bad.tellp() > 0)
    throw std::invalid_argument("state is not a single-occupancy qubit embedding; monomial masks:" +
                                bad.str());
  return out;
}

// Local (one 2x2 per qubit) transformation on amplitudes.
template <class S>
QubitState<S> qubit_slocc_apply(const QubitState<S>& q, const std::vector<Mat<S>>& locals) {
  const int n = q.qubits;
  if (int(locals.size()) != n) throw std::invalid_argument("need one matrix per qubit");
  QubitState<S> out = q;
  for (int k = 1; k <= n; ++k) {
    const Mat<S>& m = locals[k - 1];
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("local matrices must be 2x2");
    QubitState<S> next(n);
    const int stride = 1 << (n - k);
    for (int index = 0; index < q.dimension(); ++index) {
      const int value = QubitState<S>::bit(index, k, n);
      const int partner = value ? index - stride : index + stride;
      next.amp[index] = m(value, 0) * out.amp[value ? partner : index] +
                        m(value, 1) * out.amp[value ? index : partner];
    }
    out = next;
  }
  return out;
}

// The 2n x 2n mode-space matrix of a local qubit transformation: the 2x2
// block of qubit k occupies rows and columns {k, k+n}.
template <class S>
Mat<S> joint_mode_matrix(const std::vector<Mat<S>>& locals) {
  const int n = int(locals.size());
  Mat<S> m = Mat<S>::Zero(2 * n, 2 * n);
  for (int k = 1; k <= n; ++k) {
    const Mat<S>& l = locals[k - 1];
    if (l.rows() != 2 || l.cols() != 2) throw std::invalid_argument("local matrices must be 2x2");
    m(k - 1, k - 1) = l(0, 0);
    m(k - 1, n + k - 1) = l(0, 1);
    m(n + k - 1, k - 1) = l(1, 0);
    m(n + k - 1, n + k - 1) = l(1, 1);
  }
  return m;
}

// Move the qubit at position k to position perm[k-1] (a bijection).
template <class S>
QubitState<S> qubit_permute(const QubitState<S>& q, const std::vector<int>& perm) {
  const int n = q.qubits;
  if (int(perm.size()) != n) throw std::invalid_argument("permutation length must match qubits");
  std::vector<bool> hit(n, false);
  for (int v : perm) {
    if (v < 1 || v > n || hit[v - 1]) throw std::invalid_argument("not a permutation");
    hit[v - 1] = true;
  }
  QubitState<S> out(n);
  for (int index = 0; index < q.dimension(); ++index) {
    int target = 0;
    for (int k = 1; k <= n; ++k)
      if (QubitState<S>::bit(index, k, n)) target |= 1 << (n - perm[k - 1]);
    out.amp[target] = q.amp[index];
  }
  return out;
}

inline int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 != 0 ? -1 : 1;
}

// The corresponding joint mode permutation (determinant always one).  The
// mode-space action carries the fermionic reordering cost: embedding a
// permuted qubit state agrees with it only up to the sign of the
// permutation, because the per-site creation operators anticommute.
template <class S>
Mat<S> joint_mode_permutation(const std::vector<int>& perm) {
  const int n = int(perm.size());
  Mat<S> m = Mat<S>::Zero(2 * n, 2 * n);
  for (int k = 1; k <= n; ++k) {
    m(perm[k - 1] - 1, k - 1) = S(1);
    m(n + perm[k - 1] - 1, n + k - 1) = S(1);
  }
  return m;
}

// Qubit-level conjugation: one antisymmetric epsilon per qubit and complex
// conjugation of amplitudes.
template <class S>
QubitState<S> wootters_flip(const QubitState<S>& q) {
  const int n = q.qubits;
  QubitState<S> out(n);
  const int all = q.dimension() - 1;
  for (int index = 0; index < q.dimension(); ++index) {
    S v = ScalarOps<S>::conj(q.amp[all - index]);
    int weight = 0;
    for (int k = 1; k <= n; ++k) weight += QubitState<S>::bit(index, k, n);
    out.amp[index] = (weight % 2 != 0) ? S(0) - v : v;
  }
  return out;
}

// Chirality-swapping map on six modes: the product of the first three gamma
// operators, gamma_3 acting first.  Applying it twice negates the state.
template <class S>
FockState<S> mirror_map(const FockState<S>& psi) {
  if (psi.modes != 6) throw std::invalid_argument("mirror map needs exactly six modes");
  return gamma_apply(gamma_apply(gamma_apply(psi, 3), 2), 1);
}

template <class S>
FockState<S> mirror_map_inverse(const FockState<S>& psi) {
  if (psi.modes != 6) throw std::invalid_argument("mirror map needs exactly six modes");
  return gamma_apply(gamma_apply(gamma_apply(psi, 1), 2), 3);
}

}  // namespace spinorlab
