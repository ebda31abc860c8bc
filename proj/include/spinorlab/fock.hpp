#pragma once

// Fermionic Fock space over N <= 16 modes.
//
// A state is a sparse linear combination of occupation-mask basis kets.  The
// basis ket for mask m is the ascending creation monomial applied to the
// vacuum: modes i1 < i2 < ... < ik occupied means p^{i1} p^{i2} ... p^{ik}
// |0>.  Bit (i-1) of the mask corresponds to mode i.
//
// Ladder conventions: creating or annihilating mode i on a basis ket picks up
// the sign (-1)^(number of occupied modes below i).  A LadderWord lists
// operators left to right as written on paper, so the rightmost entry acts
// first.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinorlab/scalar.hpp"

namespace spinorlab {

using Mask = std::uint32_t;

constexpr int kMaxModes = 16;

inline Mask mode_bit(int mode) { return Mask{1} << (mode - 1); }
inline Mask full_mask(int modes) { return (Mask{1} << modes) - 1; }
inline int occupancy(Mask m) { return std::popcount(m); }

// Parity of the number of occupied modes strictly below `mode`.
inline int sign_below(Mask m, int mode) {
  return (std::popcount(m & (mode_bit(mode) - 1)) & 1) ? -1 : 1;
}

enum class LadderKind { Create, Annihilate };

struct Ladder {
  LadderKind kind;
  int mode;  // 1-based

  friend bool operator==(const Ladder& a, const Ladder& b) {
    return a.kind == b.kind && a.mode == b.mode;
  }
};

inline Ladder create(int mode) { return {LadderKind::Create, mode}; }
inline Ladder annihilate(int mode) { return {LadderKind::Annihilate, mode}; }

using LadderWord = std::vector<Ladder>;

// Word transpose: reverse the factor order, leaving each letter unchanged.
inline LadderWord transpose_word(const LadderWord& w) {
  return LadderWord(w.rbegin(), w.rend());
}

template <class S>
struct FockState {
  int modes = 0;
  std::map<Mask, S> terms;  // mask -> coefficient; zero coefficients elided

  FockState() = default;
  explicit FockState(int n) : modes(n) {
    if (n < 0 || n > kMaxModes) throw std::invalid_argument("mode count out of range");
  }

  static FockState vacuum(int n) {
    FockState s(n);
    s.terms[0] = S(1);
    return s;
  }
  static FockState top(int n) {
    FockState s(n);
    s.terms[full_mask(n)] = S(1);
    return s;
  }
  // Ascending creation monomial for `m`, coefficient 1.
  static FockState monomial(int n, Mask m) {
    FockState s(n);
    if (m >= (Mask{1} << n)) throw std::invalid_argument("mask exceeds mode count");
    s.terms[m] = S(1);
    return s;
  }

  bool is_zero() const { return terms.empty(); }

  S coeff(Mask m) const {
    auto it = terms.find(m);
    return it == terms.end() ? S(0) : it->second;
  }

  void add_term(Mask m, const S& c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!ScalarOps<S>::is_zero(c)) terms.emplace(m, c);
    } else {
      it->second += c;
      if (ScalarOps<S>::is_zero(it->second)) terms.erase(it);
    }
  }

  FockState& operator+=(const FockState& o) {
    require_same_modes(o);
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  FockState& operator-=(const FockState& o) {
    require_same_modes(o);
    for (const auto& [m, c] : o.terms) add_term(m, S(0) - c);
    return *this;
  }
  FockState& operator*=(const S& z) {
    if (ScalarOps<S>::is_zero(z)) {
      terms.clear();
      return *this;
    }
    for (auto& [m, c] : terms) c *= z;
    return *this;
  }

  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(const S& z, FockState a) { return a *= z; }
  friend FockState operator*(FockState a, const S& z) { return a *= z; }
  friend FockState operator-(const FockState& a) {
    FockState r(a.modes);
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, S(0) - c);
    return r;
  }

  friend bool operator==(const FockState& a, const FockState& b) {
    return a.modes == b.modes && a.terms == b.terms;
  }
  friend bool operator!=(const FockState& a, const FockState& b) { return !(a == b); }

 private:
  void require_same_modes(const FockState& o) const {
    if (modes != o.modes) throw std::invalid_argument("mode count mismatch");
  }
};

template <class S>
FockState<S> apply_ladder(const FockState<S>& in, const Ladder& op) {
  if (op.mode < 1 || op.mode > in.modes) throw std::invalid_argument("ladder mode out of range");
  FockState<S> out(in.modes);
  const Mask bit = mode_bit(op.mode);
  for (const auto& [m, c] : in.terms) {
    const bool occupied = (m & bit) != 0;
    if (op.kind == LadderKind::Create ? occupied : !occupied) continue;
    const Mask result = op.kind == LadderKind::Create ? (m | bit) : (m & ~bit);
    S v = c;
    if (sign_below(m, op.mode) < 0) v = S(0) - v;
    out.add_term(result, v);
  }
  return out;
}

template <class S>
FockState<S> apply_word(const FockState<S>& in, const LadderWord& word) {
  FockState<S> cur = in;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = apply_ladder(cur, *it);
  return cur;
}

// Decomposition of a state by particle number.
template <class S>
std::map<int, FockState<S>> particle_sectors(const FockState<S>& in) {
  std::map<int, FockState<S>> out;
  for (const auto& [m, c] : in.terms) {
    auto [it, fresh] = out.try_emplace(occupancy(m), FockState<S>(in.modes));
    it->second.terms.emplace(m, c);
  }
  return out;
}

// Standard Hermitian inner product <a|b> in the occupation basis.
template <class S>
S hermitian_inner(const FockState<S>& a, const FockState<S>& b) {
  if (a.modes != b.modes) throw std::invalid_argument("mode count mismatch");
  S total(0);
  const auto scan = [&](const FockState<S>& small, const FockState<S>& big, bool conj_small) {
    for (const auto& [m, c] : small.terms) {
      auto it = big.terms.find(m);
      if (it == big.terms.end()) continue;
      total += conj_small ? ScalarOps<S>::conj(c) * it->second
                          : ScalarOps<S>::conj(it->second) * c;
    }
  };
  if (a.terms.size() <= b.terms.size())
    scan(a, b, true);
  else
    scan(b, a, false);
  return total;
}

template <class S>
std::string to_display(const FockState<S>& s) {
  if (s.terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + to_display(c) + ")|";
    bool first = true;
    for (int i = 1; i <= s.modes; ++i)
      if (m & mode_bit(i)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
      }
    out += ">";
  }
  return out;
}

}  // namespace spinorlab
