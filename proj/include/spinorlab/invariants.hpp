#pragma once

// Polynomial invariants of four-qubit states and of their fermionic
// counterparts at eight modes:
//   - the classical quartet H, {L, M, N}, {D, E, F} with the permutation
//     combinations Sigma, Gamma, Pi and the characteristic-polynomial
//     coefficients s_1..s_4 of a site-pair matrix;
//   - the six-block trace family g_{2p} and its 28x28 companion f'_{2p};
//   - the mode-sector pair-contraction family I_{2p} for four-particle
//     states and the full pair-contraction family for Weyl states.
// All values are exact; trace powers use repeated matrix products.

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "spinorlab/covariants.hpp"
#include "spinorlab/embed.hpp"
#include "spinorlab/linalg.hpp"
#include "spinorlab/pairing.hpp"

namespace spinorlab {

namespace detail {

// Antidiagonal inner product U.V = U0 V3 - U1 V2 - U2 V1 + U3 V0.
template <class S>
S epsilon_dot(const std::array<S, 4>& u, const std::array<S, 4>& v) {
  return u[0] * v[3] - u[1] * v[2] - u[2] * v[1] + u[3] * v[0];
}

template <class S>
S det3(const std::array<std::array<S, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace detail

// The four algebraically independent invariants H, L, M, D of a four-qubit
// state together with their standard companions: N and E, F complete the
// determinant and sextic triples, Sigma/Gamma/Pi are their permutation
// averages, and s1..s4 are the characteristic-polynomial coefficients of
// the first site-pair matrix.
template <class S>
struct FourQubitInvariants {
  S h, l, m, n;
  S d, e, f;
  S sigma, gamma, pi;
  S s1, s2, s3, s4;
};

template <class S>
FourQubitInvariants<S> fourqubit_invariants(const QubitState<S>& q) {
  if (q.qubits != 4) throw std::domain_error("the invariant set needs a four-qubit state");
  std::array<std::array<S, 4>, 4> row;  // amplitude rows U, V, W, Z
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) row[r][c] = q.amp[4 * r + c];
  const auto& u = row[0];
  const auto& v = row[1];
  const auto& w = row[2];
  const auto& z = row[3];
  auto dot = [](const std::array<S, 4>& a, const std::array<S, 4>& b) {
    return detail::epsilon_dot(a, b);
  };

  FourQubitInvariants<S> out;
  out.h = dot(u, z) - dot(v, w);
  const auto lmn = lmn_matrices(q);
  out.l = exact_det(lmn[0]);
  out.m = exact_det(lmn[1]);
  out.n = exact_det(lmn[2]);

  // Cubic coefficient from the two Gram determinants of the amplitude rows;
  // the sextic D then solves s3 = 4D + 2HL, and E, F follow from the
  // cyclic relations D = E - HL, F = D - HM.
  const S s3 =
      S(2) * detail::det3<S>({{{dot(u, u), dot(u, v), dot(u, z)},
                               {dot(u, w), dot(v, w), dot(w, z)},
                               {dot(u, z), dot(v, z), dot(z, z)}}}) -
      S(2) * detail::det3<S>({{{dot(u, v), dot(v, v), dot(v, w)},
                               {dot(u, w), dot(v, w), dot(w, w)},
                               {dot(u, z), dot(v, z), dot(w, z)}}});
  out.s3 = s3;
  out.d = (s3 - S(2) * out.h * out.l) / S(4);
  out.e = out.d + out.h * out.l;
  out.f = out.d - out.h * out.m;

  out.sigma = out.l * out.l + out.m * out.m + out.n * out.n;
  out.gamma = out.d + out.e + out.f;
  out.pi = (out.l - out.m) * (out.m - out.n) * (out.n - out.l);

  out.s1 = S(2) * out.h;
  out.s2 = out.h * out.h + S(4) * out.m + S(2) * out.l;
  out.s4 = out.l * out.l;
  return out;
}

// The six 4x4 site-pair matrices, ordered (12), (34), (13), (24), (14),
// (23).  Each is the sandwich epsilon X epsilon X^T (or the transposed
// variant for the second pair of a grouping) built from the amplitude pair
// matrices; the (13) entry uses the bit-swapped row relabelling so that the
// rows follow the same sorted two-bit convention as the other five.
template <class S>
std::array<Mat<S>, 6> site_pair_blocks(const QubitState<S>& q) {
  const auto lmn = lmn_matrices(q);
  const Mat<S> eps = epsilon_kron<S>();
  Mat<S> swap = Mat<S>::Zero(4, 4);
  swap(0, 0) = S(1);
  swap(1, 2) = S(1);
  swap(2, 1) = S(1);
  swap(3, 3) = S(1);
  const Mat<S> relabelled = swap * lmn[1];
  auto sandwich = [&eps](const Mat<S>& x) { return Mat<S>(eps * x * eps * x.transpose()); };
  auto sandwich_t = [&eps](const Mat<S>& x) {
    return Mat<S>(eps * x.transpose() * eps * x);
  };
  return {sandwich(lmn[0]),      sandwich_t(lmn[0]), sandwich(relabelled),
          sandwich_t(lmn[1]),    sandwich(lmn[2]),   sandwich_t(lmn[2])};
}

// Characteristic-polynomial coefficients (s1, s2, s3, s4) of the site-pair
// matrix built from amplitude pair matrix `which` (0, 1, 2 for the three
// groupings), via trace powers and Newton's identities.
template <class S>
std::array<S, 4> char_poly_s(const QubitState<S>& q, int which) {
  if (q.qubits != 4) throw std::domain_error("the invariant set needs a four-qubit state");
  if (which < 0 || which > 2) throw std::domain_error("pair-matrix choice must be 0, 1 or 2");
  const auto lmn = lmn_matrices(q);
  const Mat<S> eps = epsilon_kron<S>();
  const Mat<S> r = eps * lmn[which] * eps * lmn[which].transpose();
  auto traces = trace_powers(r, {1, 2, 3, 4});
  const auto e = newton_e_from_p(std::vector<S>{traces[1], traces[2], traces[3], traces[4]});
  return {e[0], e[1], e[2], e[3]};
}

// g_{2p} = 1/2 sum over the six site pairs of Tr(block^p).
template <class S>
std::map<int, S> g_invariants(const QubitState<S>& q, const std::set<int>& orders) {
  if (q.qubits != 4) throw std::domain_error("the invariant set needs a four-qubit state");
  std::map<int, S> out;
  for (int p : orders) out.emplace(p, S(0));
  for (const Mat<S>& block : site_pair_blocks(q)) {
    auto traces = trace_powers(block, orders);
    for (int p : orders) out[p] += traces[p];
  }
  const S half = S(1) / S(2);
  for (int p : orders) out[p] = half * out[p];
  return out;
}

// f'_{2p} = Tr of the p-th power of the 28x28 pair-labelled matrix of the
// embedded state; equal to 2^(1-p) g_{2p}.
template <class S>
std::map<int, S> f_prime_invariants(const QubitState<S>& q, const std::set<int>& orders) {
  if (q.qubits != 4) throw std::domain_error("the invariant set needs a four-qubit state");
  return trace_powers(katanova_28(embed_single(q)), orders);
}

// 28x28 matrix over ascending mode pairs with entry R^{ij}_{kl}: the
// creation-sector restriction of the pair tensor of a four-particle state.
template <class S>
Mat<S> mode_pair_matrix(const FockState<S>& psi) {
  if (psi.modes != 8) throw std::domain_error("the mode-pair matrix needs eight modes");
  for (const auto& [mask, coeff] : psi.terms)
    if (occupancy(mask) != 4)
      throw std::domain_error("the mode-pair matrix needs a four-particle state");
  const auto t = r_tensor(psi);
  const auto pairs = pair_basis(8);
  Mat<S> m(28, 28);
  for (int r = 0; r < 28; ++r)
    for (int c = 0; c < 28; ++c)
      m(r, c) = t.at(pairs[r].first, pairs[r].second, pairs[c].first, pairs[c].second);
  return m;
}

// I_{2p}: pair contractions of the mode-sector tensor of a four-particle
// state, as traces of powers of the mode-pair matrix.
template <class S>
std::map<int, S> sl8_trace_invariants(const FockState<S>& psi, const std::set<int>& orders) {
  if constexpr (std::is_same_v<S, GaussianRational>)
    return trace_powers_fast(mode_pair_matrix(psi), orders);
  else
    return trace_powers(mode_pair_matrix(psi), orders);
}

// Full pair contractions of the pair tensor over all 120 ascending index
// pairs, for states of definite parity at eight modes.
template <class S>
std::map<int, S> spin16_invariants(const FockState<S>& psi, const std::set<int>& orders) {
  if (psi.modes != 8) throw std::domain_error("the pair contractions need eight modes");
  if (!psi.terms.empty() && !chirality(psi))
    throw std::domain_error("the pair contractions need a definite-parity state");
  const Mat<S> view = restricted_pair_view(r_tensor(psi));
  if constexpr (std::is_same_v<S, GaussianRational>)
    return trace_powers_fast(view, orders);
  else
    return trace_powers(view, orders);
}

}  // namespace spinorlab
