#pragma once

// The fundamental bilinear pairing on Fock states, the induced antilinear
// conjugation (spin flip), and the Majorana reality condition.
//
// For occupied sets S, T the pairing of basis monomials is nonzero only when
// S and T partition all modes, with sign
//   (-1)^(|S|(|S|-1)/2) * epsilon(S, T),
// where epsilon counts the permutation taking the concatenation (S, T) to
// the ascending order of all modes.

#include <stdexcept>

#include "spinorlab/fock.hpp"

namespace spinorlab {

// Number of pairs (s, t), s in S, t in T, with s > t; the parity of the
// shuffle permutation merging the two ascending lists.
inline int crossing_count(Mask s_mask, Mask t_mask) {
  int count = 0;
  Mask rest = s_mask;
  while (rest) {
    const Mask low = rest & (~rest + 1);  // lowest set bit
    count += occupancy(t_mask & (low - 1));
    rest &= rest - 1;
  }
  return count;
}

template <class S>
S mukai_pairing(const FockState<S>& a, const FockState<S>& b) {
  if (a.modes != b.modes) throw std::invalid_argument("pairing of different mode counts");
  const Mask full = full_mask(a.modes);
  S total(0);
  for (const auto& [s_mask, s_coeff] : a.terms) {
    const Mask t_mask = full & ~s_mask;
    const S t_coeff = b.coeff(t_mask);
    if (ScalarOps<S>::is_zero(t_coeff)) continue;
    const int k = occupancy(s_mask);
    const bool negative = ((k * (k - 1) / 2 + crossing_count(s_mask, t_mask)) % 2) != 0;
    if (negative)
      total -= s_coeff * t_coeff;
    else
      total += s_coeff * t_coeff;
  }
  return total;
}

// The quadratic invariant (psi, psi).
template <class S>
S quadratic_form(const FockState<S>& psi) {
  return mukai_pairing(psi, psi);
}

// Sign of the monomial at occupied set S under the conjugation.
inline int flip_sign(Mask s_mask, int modes) {
  const int k = occupancy(s_mask);
  const Mask comp = full_mask(modes) & ~s_mask;
  return ((k * (k - 1) / 2 + crossing_count(s_mask, comp)) % 2) != 0 ? -1 : 1;
}

// Antilinear conjugation: the coefficient at the complement of S becomes the
// complex conjugate of sign(S) times the coefficient at S.  It satisfies
// <flip(psi) | phi> = (psi, phi) with the sesquilinear inner product.
template <class S>
FockState<S> spin_flip(const FockState<S>& psi) {
  FockState<S> out(psi.modes);
  const Mask full = full_mask(psi.modes);
  for (const auto& [s_mask, c] : psi.terms) {
    S v = ScalarOps<S>::conj(c);
    if (flip_sign(s_mask, psi.modes) < 0) v = S(0) - v;
    out.add_term(full & ~s_mask, v);
  }
  return out;
}

// Fixed points of the conjugation.  The zero state is trivially fixed.
template <class S>
bool is_majorana(const FockState<S>& psi) {
  return spin_flip(psi) == psi;
}

}  // namespace spinorlab
