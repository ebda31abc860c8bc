#pragma once

// Root-system polynomial evaluators (the 24-element F4-type set over four
// variables and the 240-root E8 set over eight), the semisimple family of
// four-qubit states with its eight-parameter Fock-space extension, the x<->y
// coordinate maps linking the two parametrizations, Wallach-type power-sum
// forms, and an exact interpolation-based Jacobian rank for polynomial maps.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "spinorlab/covariants.hpp"
#include "spinorlab/embed.hpp"
#include "spinorlab/fock.hpp"
#include "spinorlab/invariants.hpp"
#include "spinorlab/linalg.hpp"

namespace spinorlab {

namespace detail {

// Exponentiation by squaring; exponent >= 0.
template <class S>
S scalar_pow(S base, int exponent) {
  S out(1);
  while (exponent > 0) {
    if (exponent & 1) out = out * base;
    base = base * base;
    exponent >>= 1;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Root sets as lists of linear forms.
// ---------------------------------------------------------------------------

template <class S>
struct RootSet {
  int variables = 0;
  std::vector<std::vector<S>> forms;  // each form holds `variables` coefficients
};

// 24 forms over four variables: +-2 x_i together with +-x_1 +-x_2 +-x_3 +-x_4
// for all sixteen sign patterns.
template <class S>
RootSet<S> f4_root_forms() {
  RootSet<S> out;
  out.variables = 4;
  for (int i = 0; i < 4; ++i)
    for (int sign : {1, -1}) {
      std::vector<S> form(4, S(0));
      form[i] = S(2 * sign);
      out.forms.push_back(std::move(form));
    }
  for (int pattern = 0; pattern < 16; ++pattern) {
    std::vector<S> form(4);
    for (int i = 0; i < 4; ++i) form[i] = (pattern >> i) & 1 ? S(0) - S(1) : S(1);
    out.forms.push_back(std::move(form));
  }
  return out;
}

// 240 forms over eight variables: +-x_i +- x_j for i < j (112 forms) together
// with (+-x_1 +- ... +- x_8)/2 with an even number of minus signs (128 forms).
template <class S>
RootSet<S> e8_root_forms() {
  RootSet<S> out;
  out.variables = 8;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          std::vector<S> form(8, S(0));
          form[i] = S(si);
          form[j] = S(sj);
          out.forms.push_back(std::move(form));
        }
  const S half = S(1) / S(2);
  for (int pattern = 0; pattern < 256; ++pattern) {
    if (occupancy(Mask(pattern)) % 2 != 0) continue;
    std::vector<S> form(8);
    for (int i = 0; i < 8; ++i) form[i] = (pattern >> i) & 1 ? S(0) - half : half;
    out.forms.push_back(std::move(form));
  }
  return out;
}

// Sum over the set of the 2p-th power of each form evaluated at x.
template <class S>
S root_power_sum(const RootSet<S>& roots, const std::vector<S>& x, int p) {
  if (p < 1) throw std::invalid_argument("root power sums need p >= 1");
  if (int(x.size()) != roots.variables)
    throw std::invalid_argument("point dimension does not match the root set");
  S total(0);
  for (const auto& form : roots.forms) {
    S value(0);
    for (int i = 0; i < roots.variables; ++i) value += form[i] * x[i];
    total += detail::scalar_pow(value, 2 * p);
  }
  return total;
}

template <class S>
S f4_power_sum(const std::array<S, 4>& x, int p) {
  static const RootSet<S> roots = f4_root_forms<S>();
  return root_power_sum(roots, std::vector<S>(x.begin(), x.end()), p);
}

template <class S>
S e8_power_sum(const std::array<S, 8>& x, int p) {
  static const RootSet<S> roots = e8_root_forms<S>();
  return root_power_sum(roots, std::vector<S>(x.begin(), x.end()), p);
}

// ---------------------------------------------------------------------------
// The semisimple family of four-qubit states.
// ---------------------------------------------------------------------------

// Four-variable coordinate link x = (y1+y4, y3-y2, y3+y2, y1-y4).
template <class S>
std::array<S, 4> semisimple_x_of_y(const std::array<S, 4>& y) {
  return {y[0] + y[3], y[2] - y[1], y[2] + y[1], y[0] - y[3]};
}

template <class S>
std::array<S, 4> semisimple_y_of_x(const std::array<S, 4>& x) {
  const S half = S(1) / S(2);
  return {half * (x[0] + x[3]), half * (x[2] - x[1]), half * (x[1] + x[2]),
          half * (x[0] - x[3])};
}

// y1(|0000> + |1111>) + y2(|0011> + |1100>) + y3(|0101> + |1010>) +
// y4(|0110> + |1001>).
template <class S>
QubitState<S> semisimple_state_from_y(const std::array<S, 4>& y) {
  QubitState<S> q(4);
  q.amp[0] = y[0];
  q.amp[15] = y[0];
  q.amp[3] = y[1];
  q.amp[12] = y[1];
  q.amp[5] = y[2];
  q.amp[10] = y[2];
  q.amp[6] = y[3];
  q.amp[9] = y[3];
  return q;
}

template <class S>
QubitState<S> semisimple_qubit_state(const std::array<S, 4>& x) {
  return semisimple_state_from_y(semisimple_y_of_x(x));
}

// Power-sum form of the six-block trace family on the semisimple slice:
// sum over alpha < beta of (y_a + y_b)^2p + (y_a - y_b)^2p.
template <class S>
S wallach_g(const std::array<S, 4>& y, int p) {
  if (p < 1) throw std::invalid_argument("wallach_g needs p >= 1");
  S total(0);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      total += detail::scalar_pow(y[a] + y[b], 2 * p) +
               detail::scalar_pow(y[a] - y[b], 2 * p);
  return total;
}

// The Gour-Wallach generating quartet expressed through the permutation-
// symmetric invariants: F_2 = 2H, F_6 = 4(3H^3 - 4 Gamma),
// F_8 = (4/3)(33H^4 - 104 H Gamma + 40 Sigma),
// F_12 = (4/3)(513H^6 - 3012H^3 Gamma + 2180H^2 Sigma + 488 Gamma^2 + 480 Pi).
template <class S>
std::array<S, 4> f_closed(const QubitState<S>& q) {
  const FourQubitInvariants<S> inv = fourqubit_invariants(q);
  const S& h = inv.h;
  const S third4 = S(4) / S(3);
  const S h2 = h * h;
  const S h3 = h2 * h;
  std::array<S, 4> out;
  out[0] = S(2) * h;
  out[1] = S(4) * (S(3) * h3 - S(4) * inv.gamma);
  out[2] = third4 * (S(33) * h2 * h2 - S(104) * h * inv.gamma + S(40) * inv.sigma);
  out[3] = third4 * (S(513) * h3 * h3 - S(3012) * h3 * inv.gamma +
                     S(2180) * h2 * inv.sigma + S(488) * inv.gamma * inv.gamma +
                     S(480) * inv.pi);
  return out;
}

// ---------------------------------------------------------------------------
// The eight-parameter Fock-space extension at eight modes.
// ---------------------------------------------------------------------------

namespace detail {

// Signs of the linear map y = (1/2) W x; W is orthogonal up to scale,
// W W^T = 8 I, so the inverse is x = (1/4) W^T y.
inline constexpr int kYofXSigns[8][8] = {
    {+1, +1, +1, +1, -1, -1, -1, -1},
    {+1, +1, -1, -1, -1, -1, +1, +1},
    {+1, -1, +1, -1, -1, +1, -1, +1},
    {+1, -1, -1, +1, -1, +1, +1, -1},
    {+1, -1, -1, +1, +1, -1, -1, +1},
    {+1, -1, +1, -1, +1, -1, +1, -1},
    {+1, +1, -1, -1, +1, +1, -1, -1},
    {+1, +1, +1, +1, +1, +1, +1, +1},
};

}  // namespace detail

template <class S>
std::array<S, 8> y_of_x(const std::array<S, 8>& x) {
  const S half = S(1) / S(2);
  std::array<S, 8> y;
  for (int r = 0; r < 8; ++r) {
    S acc(0);
    for (int c = 0; c < 8; ++c)
      acc += detail::kYofXSigns[r][c] > 0 ? x[c] : S(0) - x[c];
    y[r] = half * acc;
  }
  return y;
}

template <class S>
std::array<S, 8> x_of_y(const std::array<S, 8>& y) {
  const S quarter = S(1) / S(4);
  std::array<S, 8> x;
  for (int c = 0; c < 8; ++c) {
    S acc(0);
    for (int r = 0; r < 8; ++r)
      acc += detail::kYofXSigns[r][c] > 0 ? y[r] : S(0) - y[r];
    x[c] = quarter * acc;
  }
  return x;
}

// Basis of the Cartan subspace inside the positive-chirality sector at eight
// modes.  Qubit site a owns modes a (bit value 0) and a+4 (bit value 1); the
// first four states are the embedded images of the semisimple monomial pairs,
// the next three are their double-occupancy partners, and the last pairs the
// vacuum with the fully occupied state.
template <class S>
std::array<FockState<S>, 8> cartan_basis_states() {
  // Creation words per state, two words of four modes each.
  static constexpr int kWords[7][2][4] = {
      {{1, 2, 3, 4}, {5, 6, 7, 8}},  // single occupancy: 0000 / 1111
      {{1, 2, 7, 8}, {5, 6, 3, 4}},  // 0011 / 1100
      {{1, 6, 3, 8}, {5, 2, 7, 4}},  // 0101 / 1010
      {{1, 6, 7, 4}, {5, 2, 3, 8}},  // 0110 / 1001
      {{1, 5, 4, 8}, {2, 6, 3, 7}},  // double occupancy on sites 1,4 / 2,3
      {{1, 5, 3, 7}, {2, 6, 4, 8}},  // double occupancy on sites 1,3 / 2,4
      {{1, 5, 2, 6}, {3, 7, 4, 8}},  // double occupancy on sites 1,2 / 3,4
  };
  std::array<FockState<S>, 8> out;
  const FockState<S> vac = FockState<S>::vacuum(8);
  for (int k = 0; k < 7; ++k) {
    FockState<S> state(8);
    for (int w = 0; w < 2; ++w) {
      LadderWord word;
      for (int mode : kWords[k][w]) word.push_back(create(mode));
      state += apply_word(vac, word);
    }
    out[k] = state;
  }
  FockState<S> last = vac;
  {
    LadderWord top;
    for (int mode = 1; mode <= 8; ++mode) top.push_back(create(mode));
    last += apply_word(vac, top);
  }
  out[7] = last;
  return out;
}

// Linear combination sum_a y_a E_a of the Cartan basis states.
template <class S>
FockState<S> semisimple_fock_state(const std::array<S, 8>& y) {
  const auto basis = cartan_basis_states<S>();
  FockState<S> out(8);
  for (int a = 0; a < 8; ++a) out += y[a] * basis[a];
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form pair matrix on the eight-parameter family.
// ---------------------------------------------------------------------------

namespace detail {

// Signed amplitude lookup of a four-index antisymmetric tensor given by its
// ascending-index values.
template <class S>
class AmplitudeTensor {
 public:
  explicit AmplitudeTensor(const FockState<S>& psi) : psi_(&psi) {}

  S operator()(int i, int j, int k, int l) const {
    std::array<int, 4> idx = {i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (idx[a] == idx[b]) return S(0);
        if (idx[a] > idx[b]) {
          std::swap(idx[a], idx[b]);
          sign = -sign;
        }
      }
    Mask m = 0;
    for (int v : idx) m |= mode_bit(v);
    auto it = psi_->terms.find(m);
    if (it == psi_->terms.end()) return S(0);
    return sign < 0 ? S(0) - it->second : it->second;
  }

 private:
  const FockState<S>* psi_;
};

}  // namespace detail

// The 120x120 pair matrix of semisimple_fock_state(y) assembled from the
// closed-form matrix elements valid for a self-dual amplitude tensor with
// equal vacuum and top amplitudes.  Must agree entrywise with the pair-tensor
// route restricted to ascending index pairs.
template <class S>
Mat<S> semisimple_pair_matrix(const std::array<S, 8>& y) {
  const FockState<S> psi = semisimple_fock_state(y);
  const detail::AmplitudeTensor<S> z(psi);
  const S y8sq = y[7] * y[7];
  S norm(0);
  for (const S& v : y) norm += v * v;

  // Mode-sector entries R^{ij}_{kl}.
  auto mode_entry = [&](int i, int j, int k, int l) {
    S value = S(0);
    if (i == l && j == k) value += y8sq;
    if (i == k && j == l) value -= y8sq;
    for (int a = 1; a <= 8; ++a)
      for (int b = a + 1; b <= 8; ++b) value += z(i, j, a, b) * z(a, b, l, k);
    return value;
  };
  // Mixed entries R^{i,j+8}_{k+8,l}.
  auto mixed_entry = [&](int i, int j, int k, int l) {
    S value = S(0) - mode_entry(i, k, j, l);
    if (i == l && k == j) value += norm;
    if (i == j && k == l) value -= norm / S(2);
    return value;
  };

  const auto pairs = pair_basis(16);
  const int dim = int(pairs.size());
  Mat<S> m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int up1 = pairs[r].first, up2 = pairs[r].second;
    const bool uh1 = up1 > 8, uh2 = up2 > 8;
    for (int c = 0; c < dim; ++c) {
      const int lo1 = pairs[c].first, lo2 = pairs[c].second;
      const bool lh1 = lo1 > 8, lh2 = lo2 > 8;
      S value(0);
      if (!uh1 && !uh2 && !lh1 && !lh2) {
        value = mode_entry(up1, up2, lo1, lo2);
      } else if (uh1 && uh2 && lh1 && lh2) {
        value = mode_entry(lo1 - 8, lo2 - 8, up1 - 8, up2 - 8);
      } else if (!uh1 && !uh2 && lh1 && lh2) {
        value = S(2) * y[7] * z(up1, up2, lo1 - 8, lo2 - 8);
      } else if (uh1 && uh2 && !lh1 && !lh2) {
        value = S(2) * y[7] * z(up1 - 8, up2 - 8, lo1, lo2);
      } else if (!uh1 && uh2 && !lh1 && lh2) {
        // R^{i,j+8}_{k,l+8} = -R^{i,j+8}_{l+8,k}.
        value = S(0) - mixed_entry(up1, up2 - 8, lo2 - 8, lo1);
      }
      m(r, c) = value;
    }
  }
  return m;
}

// Trace powers of the closed-form pair matrix; the integer kernels engage for
// integral parameter points.
template <class S>
std::map<int, S> semisimple_trace_invariants(const std::array<S, 8>& y,
                                             const std::set<int>& orders) {
  const Mat<S> m = semisimple_pair_matrix(y);
  if constexpr (std::is_same_v<S, GaussianRational>)
    return trace_powers_fast(m, orders);
  else
    return trace_powers(m, orders);
}

// Exact Jacobian of the trace map y -> tr(M(y)^p) for the requested orders;
// rows follow the given order sequence, columns are the eight parameters.
// Every entry of the pair matrix is homogeneous quadratic in y, so the partial
// derivative along e_v is the exact central difference
//   D_v = (M(y + e_v) - M(y - e_v)) / 2,
// and by cyclicity of the trace  d/dy_v tr(M^p) = p tr(M^{p-1} D_v).  One
// matrix power chain serves every row, which is far cheaper than sampling the
// map itself once per interpolation node.
template <class S>
Mat<S> semisimple_trace_jacobian(const std::array<S, 8>& y,
                                 const std::vector<int>& orders) {
  int max_order = 0;
  std::map<int, std::vector<int>> rows_by_order;
  for (int r = 0; r < int(orders.size()); ++r) {
    if (orders[r] < 1) throw std::invalid_argument("trace order must be >= 1");
    max_order = std::max(max_order, orders[r]);
    rows_by_order[orders[r]].push_back(r);
  }

  const S half = S(1) / S(2);
  const Mat<S> m = semisimple_pair_matrix(y);
  std::array<Mat<S>, 8> deriv;
  for (int v = 0; v < 8; ++v) {
    std::array<S, 8> plus = y, minus = y;
    plus[v] = plus[v] + S(1);
    minus[v] = minus[v] - S(1);
    deriv[v] =
        (semisimple_pair_matrix(plus) - semisimple_pair_matrix(minus)) * half;
  }

  Mat<S> jac(int(orders.size()), 8);
  auto fill_rows = [&](int order, const std::array<S, 8>& traces) {
    for (int r : rows_by_order[order])
      for (int v = 0; v < 8; ++v) jac(r, v) = S(order) * traces[v];
  };

  if constexpr (std::is_same_v<S, GaussianRational>) {
    bool integral = true;
    auto scan = [&](const Mat<S>& mat) {
      for (int r = 0; r < mat.rows() && integral; ++r)
        for (int c = 0; c < mat.cols(); ++c)
          if (sgn(mat(r, c).im) != 0 || mat(r, c).re.get_den() != 1) {
            integral = false;
            break;
          }
    };
    scan(m);
    for (const auto& d : deriv) scan(d);
    if (integral) {
      const IntMat mi = to_int_mat(m);
      std::array<IntMat, 8> di;
      for (int v = 0; v < 8; ++v) di[v] = to_int_mat(deriv[v]);
      IntMat power;  // holds M^{order-1} while walking the chain
      for (int order = 1; order <= max_order; ++order) {
        if (order == 2)
          power = mi;
        else if (order > 2)
          power = int_mul(power, mi);
        if (!rows_by_order.count(order)) continue;
        std::array<S, 8> traces;
        for (int v = 0; v < 8; ++v) {
          const BigInt t =
              order == 1 ? int_trace(di[v]) : int_trace_product(power, di[v]);
          traces[v] = S(Rational(t));
        }
        fill_rows(order, traces);
      }
      return jac;
    }
  }

  auto trace_product = [](const Mat<S>& a, const Mat<S>& b) {
    S t(0);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
  };
  Mat<S> power;
  for (int order = 1; order <= max_order; ++order) {
    if (order == 2)
      power = m;
    else if (order > 2)
      power = power * m;
    if (!rows_by_order.count(order)) continue;
    std::array<S, 8> traces;
    for (int v = 0; v < 8; ++v) {
      S t(0);
      if (order == 1)
        for (int i = 0; i < deriv[v].rows(); ++i) t += deriv[v](i, i);
      else
        t = trace_product(power, deriv[v]);
      traces[v] = t;
    }
    fill_rows(order, traces);
  }
  return jac;
}

// ---------------------------------------------------------------------------
// Exact Jacobian of a polynomial map by univariate interpolation.
// ---------------------------------------------------------------------------

// Jacobian (rows = components, columns = variables) of a polynomial map at a
// point.  Component c has known total degree degrees[c]; its restriction to a
// coordinate line is a univariate polynomial of that degree, so sampling at
// t = 0..d and solving the Vandermonde system recovers the linear coefficient
// — the exact partial derivative — with no symbolic algebra.
template <class S>
Mat<S> exact_jacobian(
    const std::function<std::vector<S>(const std::vector<S>&)>& map,
    const std::vector<int>& degrees, const std::vector<S>& point) {
  const int vars = int(point.size());
  const int comps = int(degrees.size());
  int max_degree = 0;
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    max_degree = std::max(max_degree, d);
  }

  std::map<int, Mat<S>> vandermonde_inverse;
  for (int d : degrees) {
    if (d == 0 || vandermonde_inverse.count(d)) continue;
    Mat<S> v(d + 1, d + 1);
    for (int r = 0; r <= d; ++r) {
      S power(1);
      for (int m = 0; m <= d; ++m) {
        v(r, m) = power;
        power = power * S(r);
      }
    }
    vandermonde_inverse.emplace(d, exact_inverse(v));
  }

  Mat<S> jac(comps, vars);
  for (int var = 0; var < vars; ++var) {
    std::vector<std::vector<S>> samples;
    samples.reserve(max_degree + 1);
    for (int t = 0; t <= max_degree; ++t) {
      std::vector<S> shifted = point;
      shifted[var] = shifted[var] + S(t);
      samples.push_back(map(shifted));
      if (int(samples.back().size()) != comps)
        throw std::invalid_argument("map output size does not match degrees");
    }
    for (int c = 0; c < comps; ++c) {
      const int d = degrees[c];
      if (d == 0) {
        jac(c, var) = S(0);
        continue;
      }
      const Mat<S>& inv = vandermonde_inverse.at(d);
      S coeff(0);
      for (int r = 0; r <= d; ++r) coeff += inv(1, r) * samples[r][c];
      jac(c, var) = coeff;
    }
  }
  return jac;
}

template <class S>
int jacobian_rank(const std::function<std::vector<S>(const std::vector<S>&)>& map,
                  const std::vector<int>& degrees, const std::vector<S>& point) {
  Mat<S> jac = exact_jacobian(map, degrees, point);
  return exact_rank(jac);
}

}  // namespace spinorlab
