#pragma once

// Exact dense linear algebra on Eigen matrices over an exact field, plus an
// integer fast path for big trace-of-power computations.
//
// Eigen's own decompositions make float-style threshold decisions, so rank,
// kernel, determinant and solving over exact scalars are implemented here as
// a plain Gaussian elimination (exact division, pivot = first nonzero).

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "spinorlab/scalar.hpp"

namespace spinorlab {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatQ = Mat<GaussianRational>;
using VecQ = Vec<GaussianRational>;

// Entrywise-conjugated transpose.  Eigen's adjoint() treats the exact scalar
// as real (NumTraits::IsComplex = 0), so conjugation is spelled out here.
template <class S>
Mat<S> conjugate_transpose(const Mat<S>& m) {
  Mat<S> out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(c, r) = ScalarOps<S>::conj(m(r, c));
  return out;
}

namespace detail {

// Row-reduce in place; returns pivot column list.
template <class S>
std::vector<int> row_reduce(Mat<S>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!ScalarOps<S>::is_zero(m(r, col))) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarOps<S>::is_zero(m(r, col))) continue;
      const S f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <class S>
int exact_rank(Mat<S> m) {
  return int(detail::row_reduce(m).size());
}

// Columns of the result form a basis of the null space of m.
template <class S>
Mat<S> exact_kernel(Mat<S> m) {
  const int n = int(m.cols());
  const std::vector<int> pivots = detail::row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat<S> basis(n, n - int(pivots.size()));
  int out = 0;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<S> v = Vec<S>::Zero(n);
    v(free) = S(1);
    for (int r = 0; r < int(pivots.size()); ++r) v(pivots[r]) = S(0) - m(r, free);
    basis.col(out++) = v;
  }
  return basis;
}

template <class S>
S exact_det(Mat<S> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = int(m.rows());
  S det(1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (!ScalarOps<S>::is_zero(m(r, col))) {
        p = r;
        break;
      }
    if (p < 0) return S(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = S(0) - det;
    }
    det *= m(col, col);
    const S inv = S(1) / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (ScalarOps<S>::is_zero(m(r, col))) continue;
      const S f = m(r, col) * inv;
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

template <class S>
Mat<S> exact_inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const int n = int(m.rows());
  if (n == 0) return m;
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<S>::Identity(n, n);
  const auto pivots = detail::row_reduce(aug);
  if (int(pivots.size()) != n || pivots.back() >= n)
    throw std::domain_error("matrix is singular");
  return aug.rightCols(n);
}

// ---------------------------------------------------------------------------
// Trace powers.
//
// All trace families in the library need Tr M^p for p drawn from
// {1,...,7,9,10,12,15}.  Five multiplications suffice: M2, M3, M4 = M2*M2,
// M5 = M3*M2, M10 = M5*M5, with every requested trace assembled either
// directly or as tr(A*B) = sum_ij A_ij B_ji without forming the product.
// ---------------------------------------------------------------------------

template <class S>
S trace_product(const Mat<S>& a, const Mat<S>& b) {
  S total(0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) total += a(i, j) * b(j, i);
  return total;
}

template <class S>
std::map<int, S> trace_powers(const Mat<S>& m, const std::set<int>& wanted) {
  for (int p : wanted)
    if (p < 1 || (p > 7 && p != 9 && p != 10 && p != 12 && p != 15))
      throw std::invalid_argument("unsupported trace power " + std::to_string(p));
  std::map<int, S> out;
  auto want_est = [&](int p) { return wanted.count(p) != 0; };
  const bool heavy = want_est(4) || want_est(5) || want_est(6) || want_est(7) ||
                     want_est(9) || want_est(10) || want_est(12) || want_est(15);
  if (want_est(1)) out[1] = m.trace();
  if (!heavy && !want_est(2) && !want_est(3)) return out;
  Mat<S> m2 = m * m;
  if (want_est(2)) out[2] = m2.trace();
  if (!heavy && !want_est(3)) return out;
  Mat<S> m3 = m2 * m;
  if (want_est(3)) out[3] = m3.trace();
  if (want_est(4)) out[4] = trace_product(m2, m2);
  if (want_est(5)) out[5] = trace_product(m2, m3);
  if (want_est(6)) out[6] = trace_product(m3, m3);
  const bool deep = want_est(7) || want_est(9) || want_est(10) || want_est(12) || want_est(15);
  if (!deep) return out;
  Mat<S> m4 = m2 * m2;
  if (want_est(7)) out[7] = trace_product(m3, m4);
  const bool deeper = want_est(9) || want_est(10) || want_est(12) || want_est(15);
  if (!deeper) return out;
  Mat<S> m5 = m3 * m2;
  if (want_est(9)) out[9] = trace_product(m4, m5);
  if (want_est(10)) out[10] = trace_product(m5, m5);
  if (want_est(12) || want_est(15)) {
    Mat<S> m10 = m5 * m5;
    if (want_est(12)) out[12] = trace_product(m10, m2);
    if (want_est(15)) out[15] = trace_product(m10, m5);
  }
  return out;
}

// Elementary symmetric functions e1..e4 from power sums p1..p4 (Newton),
// giving the degree-4 characteristic polynomial
// t^4 - s1 t^3 + s2 t^2 - s3 t + s4 with s_k = e_k.
template <class S>
std::vector<S> newton_e_from_p(const std::vector<S>& p) {
  if (p.size() < 4) throw std::invalid_argument("need p1..p4");
  const S &p1 = p[0], &p2 = p[1], &p3 = p[2], &p4 = p[3];
  std::vector<S> e(4);
  e[0] = p1;
  e[1] = (p1 * p1 - p2) / S(2);
  e[2] = (p1 * p1 * p1 - S(3) * p1 * p2 + S(2) * p3) / S(6);
  e[3] = (p1 * p1 * p1 * p1 - S(6) * p1 * p1 * p2 + S(3) * p2 * p2 + S(8) * p1 * p3 -
          S(6) * p4) /
         S(24);
  return e;
}

// ---------------------------------------------------------------------------
// Integer matrices (GMP mpz) with a cache-friendly hand matmul.  Used as the
// fast path for the big pair-matrix trace computations whose entries are
// integral.
// ---------------------------------------------------------------------------

struct IntMat {
  int n = 0;
  std::vector<BigInt> a;  // row-major

  IntMat() = default;
  explicit IntMat(int size) : n(size), a(std::size_t(size) * size) {}

  BigInt& at(int r, int c) { return a[std::size_t(r) * n + c]; }
  const BigInt& at(int r, int c) const { return a[std::size_t(r) * n + c]; }
};

inline IntMat int_mul(const IntMat& x, const IntMat& y) {
  IntMat z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const BigInt& f = x.at(i, k);
      if (sgn(f) == 0) continue;
      const std::size_t yrow = std::size_t(k) * y.n;
      const std::size_t zrow = std::size_t(i) * y.n;
      for (int j = 0; j < x.n; ++j)
        mpz_addmul(z.a[zrow + j].get_mpz_t(), f.get_mpz_t(), y.a[yrow + j].get_mpz_t());
    }
  return z;
}

inline BigInt int_trace(const IntMat& x) {
  BigInt t = 0;
  for (int i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

inline BigInt int_trace_product(const IntMat& x, const IntMat& y) {
  BigInt t = 0;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      mpz_addmul(t.get_mpz_t(), x.at(i, j).get_mpz_t(), y.at(j, i).get_mpz_t());
  return t;
}

inline std::map<int, BigInt> int_trace_powers(const IntMat& m, const std::set<int>& wanted) {
  for (int p : wanted)
    if (p < 1 || (p > 7 && p != 9 && p != 10 && p != 12 && p != 15))
      throw std::invalid_argument("unsupported trace power " + std::to_string(p));
  std::map<int, BigInt> out;
  auto want = [&](int p) { return wanted.count(p) != 0; };
  if (want(1)) out[1] = int_trace(m);
  IntMat m2 = int_mul(m, m);
  if (want(2)) out[2] = int_trace(m2);
  IntMat m3 = int_mul(m2, m);
  if (want(3)) out[3] = int_trace(m3);
  if (want(4)) out[4] = int_trace_product(m2, m2);
  if (want(5)) out[5] = int_trace_product(m2, m3);
  if (want(6)) out[6] = int_trace_product(m3, m3);
  const bool deep = want(7) || want(9) || want(10) || want(12) || want(15);
  if (!deep) return out;
  IntMat m4 = int_mul(m2, m2);
  if (want(7)) out[7] = int_trace_product(m3, m4);
  const bool deeper = want(9) || want(10) || want(12) || want(15);
  if (!deeper) return out;
  IntMat m5 = int_mul(m3, m2);
  if (want(9)) out[9] = int_trace_product(m4, m5);
  if (want(10)) out[10] = int_trace_product(m5, m5);
  if (want(12) || want(15)) {
    IntMat m10 = int_mul(m5, m5);
    if (want(12)) out[12] = int_trace_product(m10, m2);
    if (want(15)) out[15] = int_trace_product(m10, m5);
  }
  return out;
}

// Convert a matrix whose entries are real integers; throws otherwise.
inline IntMat to_int_mat(const MatQ& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("to_int_mat: non-square");
  IntMat out(int(m.rows()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const GaussianRational& v = m(r, c);
      if (sgn(v.im) != 0 || v.re.get_den() != 1)
        throw std::domain_error("to_int_mat: entry is not a real integer");
      out.at(r, c) = v.re.get_num();
    }
  return out;
}

// Trace powers of a rational matrix, routed through the integer kernels when
// every entry happens to be a real integer.
inline std::map<int, GaussianRational> trace_powers_fast(const MatQ& m,
                                                         const std::set<int>& wanted) {
  bool integral = true;
  for (int r = 0; r < m.rows() && integral; ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const GaussianRational& v = m(r, c);
      if (sgn(v.im) != 0 || v.re.get_den() != 1) {
        integral = false;
        break;
      }
    }
  if (!integral) return trace_powers(m, wanted);
  auto ints = int_trace_powers(to_int_mat(m), wanted);
  std::map<int, GaussianRational> out;
  for (const auto& [p, v] : ints) out.emplace(p, GaussianRational(Rational(v)));
  return out;
}

}  // namespace spinorlab
