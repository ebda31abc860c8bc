#include <doctest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "spinorlab/linalg.hpp"
#include "spinorlab/random.hpp"

using namespace spinorlab;

namespace {

MatQ naive_power(const MatQ& m, int p) {
  MatQ acc = MatQ::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) acc = acc * m;
  return acc;
}

GaussianRational det_oracle(const MatQ& m) {
  std::vector<std::vector<GaussianRational>> rows(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) rows[r].push_back(m(r, c));
  return oracle::cofactor_det(rows);
}

}  // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.int_in(1, 5);
    MatQ m = rng.matrix(n, n);
    CHECK(exact_det(m) == det_oracle(m));
  }
  CHECK(exact_det<GaussianRational>(MatQ::Identity(4, 4)) == GaussianRational(1));
}

TEST_CASE("rank and kernel are exact") {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = rng.int_in(1, 6), cols = rng.int_in(1, 6), inner = rng.int_in(0, 3);
    MatQ m;
    if (inner == 0) {
      m = MatQ::Zero(rows, cols);
    } else {
      m = rng.matrix(rows, inner) * rng.matrix(inner, cols);
    }
    int r = exact_rank(m);
    CHECK(r <= std::min({rows, cols, inner == 0 ? 0 : inner}));
    MatQ k = exact_kernel(m);
    CHECK(int(k.cols()) == cols - r);
    if (k.cols() > 0) {
      MatQ prod = m * k;
      for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j) CHECK(prod(i, j).is_zero());
      CHECK(exact_rank(k) == int(k.cols()));
    }
  }
}

TEST_CASE("full-rank square matrices invert exactly") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.int_in(1, 5);
    MatQ m = rng.matrix(n, n);
    if (exact_det(m).is_zero()) continue;
    MatQ inv = exact_inverse(m);
    CHECK(MatQ(m * inv) == MatQ(MatQ::Identity(n, n)));
    CHECK(MatQ(inv * m) == MatQ(MatQ::Identity(n, n)));
  }
  CHECK_THROWS_AS(exact_inverse<GaussianRational>(MatQ::Zero(2, 2)), std::domain_error);
}

TEST_CASE("trace powers match naive matrix powers for every supported order") {
  Rng rng(34);
  const std::set<int> orders = {1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 15};
  for (int trial = 0; trial < 6; ++trial) {
    int n = rng.int_in(2, 4);
    MatQ m = rng.matrix(n, n);
    auto got = trace_powers(m, orders);
    for (int p : orders) CHECK(got.at(p) == naive_power(m, p).trace());
  }
  CHECK_THROWS(trace_powers(MatQ(MatQ::Identity(2, 2)), std::set<int>{8}));
  CHECK_THROWS(trace_powers(MatQ(MatQ::Identity(2, 2)), std::set<int>{11}));
}

TEST_CASE("integer fast path reproduces the generic trace powers") {
  Rng rng(35);
  const std::set<int> orders = {1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 15};
  for (int trial = 0; trial < 4; ++trial) {
    int n = rng.int_in(2, 5);
    MatQ m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = GaussianRational(rng.int_in(-7, 7));
    auto generic = trace_powers(m, orders);
    auto fast = int_trace_powers(to_int_mat(m), orders);
    for (int p : orders) {
      CHECK(generic.at(p).im == 0);
      CHECK(generic.at(p).re == Rational(fast.at(p)));
    }
  }
  MatQ bad(1, 1);
  bad(0, 0) = GaussianRational(Rational(1, 2));
  CHECK_THROWS_AS(to_int_mat(bad), std::domain_error);
}

TEST_CASE("Newton relations recover the characteristic polynomial (Cayley-Hamilton)") {
  Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    MatQ m = rng.matrix(4, 4);
    std::vector<GaussianRational> p;
    for (int k = 1; k <= 4; ++k) p.push_back(naive_power(m, k).trace());
    auto e = newton_e_from_p(p);
    CHECK(e[3] == exact_det(m));
    MatQ reconstructed = naive_power(m, 4) - e[0] * naive_power(m, 3) +
                         e[1] * naive_power(m, 2) - e[2] * m +
                         e[3] * MatQ(MatQ::Identity(4, 4));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(reconstructed(r, c).is_zero());
  }
}
