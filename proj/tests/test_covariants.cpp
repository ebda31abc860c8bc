#include <doctest.h>

#include <array>
#include <set>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "spinorlab/covariants.hpp"
#include "spinorlab/embed.hpp"
#include "spinorlab/pairing.hpp"
#include "spinorlab/random.hpp"

using namespace spinorlab;

using State = FockState<GaussianRational>;
using Qubits = QubitState<GaussianRational>;
using Q = GaussianRational;

namespace {

bool same_matrix(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (!(a(r, c) == b(r, c))) return false;
  return true;
}

MatQ conj_entrywise(const MatQ& m) {
  MatQ out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = conjugate(m(r, c));
  return out;
}

// Permutation swapping the two bits of a two-bit row label (01 <-> 10).
MatQ bit_swap() {
  MatQ p = MatQ::Zero(4, 4);
  p(0, 0) = Q(1);
  p(1, 2) = Q(1);
  p(2, 1) = Q(1);
  p(3, 3) = Q(1);
  return p;
}

Q qpow(const Q& base, int e) {
  Q out(1);
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

Q mat_trace(const MatQ& m) {
  Q t(0);
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Fully antisymmetric four-index amplitude of a four-particle state:
// at ascending indices it is the coefficient of the corresponding monomial.
Q z_component(const State& psi, std::array<int, 4> idx) {
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (idx[a] == idx[b]) return Q(0);
      if (idx[a] > idx[b]) {
        std::swap(idx[a], idx[b]);
        sign = -sign;
      }
    }
  Mask m = 0;
  for (int v : idx) m |= mode_bit(v);
  auto it = psi.terms.find(m);
  if (it == psi.terms.end()) return Q(0);
  return sign < 0 ? -it->second : it->second;
}

// Sign of a sequence of 1..8 read as a permutation (zero handled by caller).
int eight_sign(const std::array<int, 8>& seq) {
  int inversions = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      if (seq[a] > seq[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

State random_four_particle(Rng& rng, int nterms) {
  State s(8);
  while (int(s.terms.size()) < nterms) {
    Mask m = rng.mask(8);
    if (occupancy(m) != 4 || s.terms.count(m)) continue;
    s.terms.emplace(m, rng.gaussian_rational(5, 3, false));
  }
  return s;
}

Qubits random_qubits(Rng& rng, bool real_only = false) {
  Qubits q(4);
  q.amp = rng.qubit_amplitudes(4, real_only);
  return q;
}

// Exact state transform together with its forward and inverse vector-action
// matrices; restricted to flows whose matrix exponential terminates.
struct Flow {
  State transformed;
  MatQ fwd;
  MatQ inv;
};

Flow pair_creation_flow(Rng& rng, const State& psi) {
  const int n = psi.modes;
  MatQ b = rng.antisymmetric(n);
  auto gen = make_generator<Q>(MatQ::Zero(n, n), b, MatQ::Zero(n, n));
  MatQ v = vector_action_matrix(gen);
  MatQ id = MatQ::Identity(2 * n, 2 * n);
  return {b_transform(b, psi), MatQ(id + v), MatQ(id - v)};
}

Flow pair_annihilation_flow(Rng& rng, const State& psi) {
  const int n = psi.modes;
  MatQ c = rng.antisymmetric(n);
  auto gen = make_generator<Q>(MatQ::Zero(n, n), MatQ::Zero(n, n), c);
  MatQ v = vector_action_matrix(gen);
  MatQ id = MatQ::Identity(2 * n, 2 * n);
  return {c_transform(c, psi), MatQ(id + v), MatQ(id - v)};
}

Flow triangular_flow(Rng& rng, const State& psi) {
  const int n = psi.modes;
  MatQ a = rng.matrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= r; ++c) a(r, c) = Q(0);
  auto gen = make_generator<Q>(a, MatQ::Zero(n, n), MatQ::Zero(n, n));
  MatQ v = vector_action_matrix(gen);
  State moved = exp_apply([&](const State& s) { return apply_generator(gen, s); }, psi);
  return {std::move(moved), oracle::nilpotent_matrix_exp(v), oracle::nilpotent_matrix_exp(MatQ(-v))};
}

void check_vector_covariance(const State& psi, const Flow& flow) {
  const int d = int(flow.fwd.rows());
  const auto k = k_vector(psi);
  const auto kt = k_vector(flow.transformed);
  MatQ g = metric_g<Q>(psi.modes);
  bool lower_ok = true, upper_ok = true;
  for (int i = 0; i < d; ++i) {
    Q expect(0);
    for (int j = 0; j < d; ++j) expect += k[j] * flow.inv(j, i);
    if (!(kt[i] == expect)) lower_ok = false;
  }
  std::vector<Q> up(d, Q(0)), up_t(d, Q(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      up[i] += g(i, j) * k[j];
      up_t[i] += g(i, j) * kt[j];
    }
  for (int i = 0; i < d; ++i) {
    Q expect(0);
    for (int j = 0; j < d; ++j) expect += flow.fwd(i, j) * up[j];
    if (!(up_t[i] == expect)) upper_ok = false;
  }
  CHECK(lower_ok);
  CHECK(upper_ok);
}

}  // namespace

TEST_CASE("vector covariant matches a dense operator oracle") {
  Rng rng(90);
  for (int n : {2, 3, 4}) {
    State psi = rng.state(n, 5);
    const auto k = k_vector(psi);
    for (int index = 1; index <= 2 * n; ++index) {
      Ladder op = index <= n ? annihilate(index) : create(index - n);
      State moved =
          oracle::sparse_from(oracle::dense_apply(oracle::dense_from(psi), n, op), n);
      CHECK(k[index - 1] == oracle::word_pairing(psi, moved));
    }
  }
}

TEST_CASE("vector covariant vanishes unless the mode count is 0 or 1 mod 4") {
  Rng rng(91);
  for (int n : {2, 3, 6, 7}) {
    for (int trial = 0; trial < 4; ++trial) {
      State psi = rng.state(n, rng.int_in(2, 6));
      for (const Q& value : k_vector(psi)) CHECK(value.is_zero());
    }
  }
}

TEST_CASE("vector covariant vanishes on fixed-parity states at even mode counts") {
  Rng rng(92);
  for (int n : {4, 8}) {
    for (int parity : {0, 1}) {
      State psi = rng.weyl_state(n, parity, 4);
      for (const Q& value : k_vector(psi)) CHECK(value.is_zero());
    }
  }
  // Mixed-parity states do carry a nonzero vector at these mode counts.
  State mixed = rng.state(4, 8);
  bool any = false;
  for (const Q& value : k_vector(mixed))
    if (!value.is_zero()) any = true;
  CHECK(any);
}

TEST_CASE("vector covariant transforms by the inverse vector action") {
  Rng rng(93);
  for (int trial = 0; trial < 4; ++trial) {
    State psi = rng.state(4, 8);
    check_vector_covariance(psi, pair_creation_flow(rng, psi));
    check_vector_covariance(psi, pair_annihilation_flow(rng, psi));
    check_vector_covariance(psi, triangular_flow(rng, psi));
  }
  for (int trial = 0; trial < 2; ++trial) {
    State psi = rng.state(5, 8);
    check_vector_covariance(psi, pair_creation_flow(rng, psi));
  }
}

TEST_CASE("moment matrix anticommutator identity at every mode count") {
  Rng rng(94);
  for (int n = 2; n <= 6; ++n) {
    State psi = rng.state(n, 5);
    MatQ m = pair_moment_matrix(psi);
    MatQ g = metric_g<Q>(n);
    Q norm = quadratic_form(psi);
    bool ok = true;
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j)
        if (!(m(i, j) + m(j, i) == g(i, j) * norm)) ok = false;
    CHECK(ok);
  }
}

TEST_CASE("moment matrix is scalar at mode counts 0 and 1 mod 4") {
  Rng rng(95);
  for (int n : {4, 5, 8}) {
    for (int trial = 0; trial < 3; ++trial) {
      State psi = rng.state(n, n == 8 ? 6 : 8);
      Q half_norm = quadratic_form(psi) / Q(2);
      CHECK(same_matrix(k_matrix(psi), MatQ(half_norm * MatQ::Identity(2 * n, 2 * n))));
    }
  }
  // Trace powers of the scalar matrix: Tr K^r = 2^(1-r) * N * (psi,psi)^r.
  State psi = rng.state(4, 8);
  MatQ k = k_matrix(psi);
  auto traces = trace_powers(k, {1, 2, 3});
  Q norm = quadratic_form(psi);
  for (int r : {1, 2, 3})
    CHECK(traces[r] == Q(4) * qpow(norm / Q(2), r - 1) * qpow(norm, 1));
}

TEST_CASE("moment matrix is traceless at mode counts 2 and 3 mod 4") {
  Rng rng(96);
  for (int n : {2, 3, 6, 7}) {
    State psi = rng.state(n, 5);
    MatQ m = pair_moment_matrix(psi);
    // The quadratic form vanishes identically, so the matrix is antisymmetric.
    CHECK(quadratic_form(psi).is_zero());
    bool antisym = true;
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j)
        if (!(m(i, j) == -m(j, i))) antisym = false;
    CHECK(antisym);
    CHECK(mat_trace(k_matrix(psi)).is_zero());
  }
}

TEST_CASE("moment matrix pairs with generators through the trace") {
  Rng rng(97);
  for (int trial = 0; trial < 4; ++trial) {
    State psi = rng.state(6, 6);
    MatQ k = k_matrix(psi);
    for (int g = 0; g < 3; ++g) {
      auto gen = make_generator<Q>(rng.matrix(6, 6), rng.antisymmetric(6), rng.antisymmetric(6));
      MatQ v = vector_action_matrix(gen);
      CHECK(trace_product(v, k) / Q(2) == -mukai_pairing(psi, apply_generator(gen, psi)));
    }
  }
}

TEST_CASE("moment matrix conjugates under exponentiated flows") {
  Rng rng(98);
  for (int trial = 0; trial < 3; ++trial) {
    State psi = rng.state(4, 8);
    for (const Flow& flow : {pair_creation_flow(rng, psi), pair_annihilation_flow(rng, psi),
                             triangular_flow(rng, psi)})
      CHECK(same_matrix(k_matrix(flow.transformed), MatQ(flow.fwd * k_matrix(psi) * flow.inv)));
  }
  for (int trial = 0; trial < 2; ++trial) {
    State psi = rng.state(6, 6);
    Flow flow = pair_creation_flow(rng, psi);
    CHECK(same_matrix(k_matrix(flow.transformed), MatQ(flow.fwd * k_matrix(psi) * flow.inv)));
  }
}

TEST_CASE("pair tensor needs a symmetric bilinear form") {
  CHECK_THROWS_AS(r_tensor(State::vacuum(6)), std::domain_error);
  CHECK_THROWS_AS(r_tensor(State::vacuum(2)), std::domain_error);
}

TEST_CASE("pair tensor is antisymmetric in both index pairs") {
  Rng rng(99);
  State psi = rng.state(4, 6);
  auto t = r_tensor(psi);
  bool ok = true;
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j)
      for (int k = 1; k <= 8; ++k)
        for (int l = 1; l <= 8; ++l) {
          if (!(t.at(i, j, k, l) == -t.at(j, i, k, l))) ok = false;
          if (!(t.at(i, j, k, l) == -t.at(i, j, l, k))) ok = false;
        }
  CHECK(ok);
}

TEST_CASE("quartic expectations split into the pair tensor and a metric part") {
  Rng rng(100);

  auto full_check = [](const State& psi) {
    const int d = 2 * psi.modes;
    auto quartic = k_pair_tensor(psi);
    auto pair = r_tensor(psi);
    MatQ g = metric_g<Q>(psi.modes);
    Q quarter_norm = quadratic_form(psi) / Q(4);
    bool ok = true;
    for (int i = 1; i <= d && ok; ++i)
      for (int j = 1; j <= d && ok; ++j)
        for (int k = 1; k <= d && ok; ++k)
          for (int l = 1; l <= d; ++l) {
            Q expect = pair.at(i, j, k, l) + g(i - 1, j - 1) * g(k - 1, l - 1) * quarter_norm;
            if (!(quartic.at(i, j, k, l) == expect)) {
              ok = false;
              break;
            }
          }
    CHECK(ok);
  };

  for (int trial = 0; trial < 8; ++trial) full_check(rng.state(4, rng.int_in(3, 10)));
  full_check(rng.state(8, 6));
  full_check(embed_single(random_qubits(rng)));

  // Larger sample at eight modes: random index tuples, both sides evaluated
  // literally and independently of the tensor builders.
  auto raised = [](int d, int idx) { return idx <= d / 2 ? idx + d / 2 : idx - d / 2; };
  for (int trial = 0; trial < 100; ++trial) {
    State psi = rng.state(8, rng.int_in(2, 6));
    MatQ g = metric_g<Q>(8);
    Q quarter_norm = quadratic_form(psi) / Q(4);
    bool ok = true;
    for (int sample = 0; sample < 120; ++sample) {
      const int i = rng.int_in(1, 16), j = rng.int_in(1, 16);
      const int k = rng.int_in(1, 16), l = rng.int_in(1, 16);
      const int ri = raised(16, i), rj = raised(16, j);
      // Literal quartic expectation via the transposed upper word.
      State bra = basis_op_apply(basis_op_apply(psi, ri), rj);
      Q quartic = mukai_pairing(bra, basis_op_apply(basis_op_apply(psi, l), k));
      // Literal commutator route for the pair tensor entry.
      State upper_t = basis_op_apply(basis_op_apply(psi, ri), rj) -
                      basis_op_apply(basis_op_apply(psi, rj), ri);
      State lower = basis_op_apply(basis_op_apply(psi, l), k) -
                    basis_op_apply(basis_op_apply(psi, k), l);
      Q pair_entry = mukai_pairing(upper_t, lower) / Q(4);
      Q expect = pair_entry + g(i - 1, j - 1) * g(k - 1, l - 1) * quarter_norm;
      if (!(quartic == expect)) ok = false;
    }
    CHECK(ok);
  }
}

TEST_CASE("unrestricted pair contractions are a power of two times the restricted ones") {
  Rng rng(101);
  State small = rng.state(4, 7);
  auto t4 = r_tensor(small);
  MatQ flat4 = t4.entries;
  MatQ view4 = restricted_pair_view(t4);
  auto flat_traces = trace_powers(flat4, {1, 2, 3});
  auto view_traces = trace_powers(view4, {1, 2, 3});
  for (int p : {1, 2, 3}) CHECK(flat_traces[p] == qpow(Q(2), p) * view_traces[p]);

  State big = rng.state(8, 5);
  auto t8 = r_tensor(big);
  CHECK(mat_trace(t8.entries) == Q(2) * mat_trace(restricted_pair_view(t8)));
  CHECK(trace_product(t8.entries, t8.entries) ==
        Q(4) * trace_product(restricted_pair_view(t8), restricted_pair_view(t8)));
}

TEST_CASE("pair tensor mode-sector symmetries at eight modes") {
  Rng rng(102);
  for (int trial = 0; trial < 3; ++trial) {
    State psi = trial == 0 ? random_four_particle(rng, 8) : rng.state(8, 6);
    auto t = r_tensor(psi);
    Q norm = quadratic_form(psi);
    bool pure_ok = true, mixed_sym_ok = true, mixed_val_ok = true, quartic_ok = true;
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j)
        for (int k = 1; k <= 8; ++k)
          for (int l = 1; l <= 8; ++l) {
            // Raising all four indices mirrors the entry across the sectors.
            if (!(t.at(i, j, k, l) == t.at(k + 8, l + 8, i + 8, j + 8))) pure_ok = false;
            if (!(t.at(i, j + 8, k + 8, l) == t.at(k, l + 8, i + 8, j))) mixed_sym_ok = false;
            // Mixed entries reduce to pure-mode entries and the norm.
            Q expect = -t.at(i, k, j, l);
            if (j == k && i == l) expect += norm / Q(2);
            if (i == j && k == l) expect -= norm / Q(4);
            if (!(t.at(i, j + 8, k + 8, l) == expect)) mixed_val_ok = false;
            // Same reduction for the literal quartic expectation.
            State bra = basis_op_apply(basis_op_apply(psi, i + 8), j);
            Q quartic = mukai_pairing(bra, basis_op_apply(basis_op_apply(psi, l), k + 8));
            Q kexpect = -t.at(i, k, j, l);
            if (j == k && i == l) kexpect += norm / Q(2);
            if (!(quartic == kexpect)) quartic_ok = false;
          }
    CHECK(pure_ok);
    CHECK(mixed_sym_ok);
    CHECK(mixed_val_ok);
    CHECK(quartic_ok);
  }
}

TEST_CASE("four-particle pair tensor from the amplitude tensor and its complement") {
  Rng rng(103);
  for (int trial = 0; trial < 6; ++trial) {
    State psi = random_four_particle(rng, rng.int_in(3, 10));
    auto t = r_tensor(psi);

    // Norm as the epsilon-contraction of the amplitude with its complement.
    Q norm_sum(0);
    for (int mask = 0; mask < 256; ++mask) {
      if (occupancy(Mask(mask)) != 4) continue;
      std::array<int, 8> seq{};
      std::array<int, 4> low{}, high{};
      int a = 0, b = 0;
      for (int mode = 1; mode <= 8; ++mode)
        if (mask & mode_bit(mode)) low[a++] = mode;
        else high[b++] = mode;
      for (int s = 0; s < 4; ++s) {
        seq[s] = low[s];
        seq[s + 4] = high[s];
      }
      norm_sum += Q(eight_sign(seq)) * z_component(psi, low) * z_component(psi, high);
    }
    CHECK(norm_sum == quadratic_form(psi));

    // Mode-sector entries as a dual pairing of two amplitude factors.
    bool entries_ok = true;
    for (int i = 1; i <= 8; ++i)
      for (int j = i + 1; j <= 8; ++j) {
        std::array<int, 6> rest{};
        int r = 0;
        for (int mode = 1; mode <= 8; ++mode)
          if (mode != i && mode != j) rest[r++] = mode;
        for (int k = 1; k <= 8; ++k)
          for (int l = k + 1; l <= 8; ++l) {
            Q total(0);
            for (int a = 0; a < 6; ++a)
              for (int b = a + 1; b < 6; ++b) {
                std::array<int, 8> seq{};
                seq[0] = i;
                seq[1] = j;
                seq[2] = rest[a];
                seq[3] = rest[b];
                int pos = 4;
                for (int c = 0; c < 6; ++c)
                  if (c != a && c != b) seq[pos++] = rest[c];
                std::array<int, 4> first = {l, k, rest[a], rest[b]};
                std::array<int, 4> second = {seq[4], seq[5], seq[6], seq[7]};
                total += Q(eight_sign(seq)) * z_component(psi, first) * z_component(psi, second);
              }
            if (!(t.at(i, j, k, l) == total)) entries_ok = false;
          }
      }
    CHECK(entries_ok);
  }
}

TEST_CASE("28x28 pair matrix input guards") {
  CHECK_THROWS_AS(katanova_28(State::vacuum(4)), std::domain_error);
  CHECK_THROWS_AS(katanova_28(State::vacuum(8)), std::domain_error);
  Rng rng(104);
  CHECK_THROWS_AS(katanova_28(rng.state(8, 4)), std::domain_error);
}

TEST_CASE("28x28 pair matrix of embedded states is block diagonal") {
  Rng rng(105);
  const MatQ eps = epsilon_kron<Q>();
  const MatQ p = bit_swap();
  const Q half = Q(1) / Q(2);
  for (int trial = 0; trial < 10; ++trial) {
    Qubits q = random_qubits(rng);
    State psi = embed_single(q);
    MatQ kat = katanova_28(psi);
    auto lmn = lmn_matrices(q);
    const MatQ& lm = lmn[0];
    const MatQ& mm = lmn[1];
    const MatQ& nm = lmn[2];
    MatQ pm = p * mm;

    std::array<MatQ, 6> blocks = {
        MatQ(half * eps * lm * eps * lm.transpose()),
        MatQ(half * eps * lm.transpose() * eps * lm),
        MatQ(half * eps * pm * eps * pm.transpose()),
        MatQ(half * eps * mm.transpose() * eps * mm),
        MatQ(half * eps * nm * eps * nm.transpose()),
        MatQ(half * eps * nm.transpose() * eps * nm)};

    bool diag_ok = true, zero_ok = true;
    for (int r = 0; r < 28; ++r)
      for (int c = 0; c < 28; ++c) {
        const int gr = r / 4, gc = c / 4;
        if (gr == gc && gr < 6) {
          if (!(kat(r, c) == blocks[gr](r % 4, c % 4))) diag_ok = false;
        } else if (!kat(r, c).is_zero()) {
          zero_ok = false;
        }
      }
    CHECK(diag_ok);
    CHECK(zero_ok);
    CHECK(mat_trace(kat) == Q(3) * quadratic_form(psi));
  }
}

TEST_CASE("density tensor against the amplitude contraction") {
  Rng rng(106);
  for (int trial = 0; trial < 4; ++trial) {
    State psi = trial == 0 ? embed_single(random_qubits(rng)) : random_four_particle(rng, 8);
    auto rho = rho_tensor(psi);
    bool ok = true;
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j) {
        if (j == i) continue;
        for (int k = 1; k <= 8; ++k)
          for (int l = 1; l <= 8; ++l) {
            if (l == k) continue;
            Q total(0);
            for (int m = 1; m <= 8; ++m)
              for (int n = m + 1; n <= 8; ++n)
                total += conjugate(z_component(psi, {i, j, m, n})) *
                         z_component(psi, {l, k, m, n});
            if (!(rho.at(i, j, k, l) == total / Q(2))) ok = false;
          }
      }
    CHECK(ok);
  }
}

TEST_CASE("density tensor contraction counts particle pairs") {
  Rng rng(107);
  for (int trial = 0; trial < 5; ++trial) {
    State psi = trial < 3 ? random_four_particle(rng, rng.int_in(4, 12))
                          : embed_single(random_qubits(rng));
    auto rho = rho_tensor(psi);
    Q swapped(0), plain(0);
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j) {
        if (j == i) continue;
        swapped += rho.at(i, j, j, i);
        plain += rho.at(i, j, i, j);
      }
    Q norm = hermitian_inner(psi, psi);
    CHECK(swapped == Q(6) * norm);
    CHECK(plain == -Q(6) * norm);
  }
}

TEST_CASE("two-site density input guards") {
  CHECK_THROWS_AS(reduced_density(State::vacuum(4), 1, 2), std::domain_error);
  CHECK_THROWS_AS(reduced_density(State::vacuum(8), 1, 1), std::domain_error);
  CHECK_THROWS_AS(reduced_density(State::vacuum(8), 0, 2), std::domain_error);
  CHECK_THROWS_AS(reduced_density(State::vacuum(8), 1, 5), std::domain_error);
}

TEST_CASE("two-site densities are Hermitian and sit inside the density tensor") {
  Rng rng(108);
  const std::array<std::pair<int, int>, 6> sites = {
      {{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}, {2, 3}}};
  for (int trial = 0; trial < 4; ++trial) {
    State psi = trial < 2 ? rng.state(8, 8) : embed_single(random_qubits(rng));
    auto rho = rho_tensor(psi);
    for (auto [a, b] : sites) {
      MatQ d = reduced_density(psi, a, b);
      CHECK(same_matrix(d, conjugate_transpose(d)));
      const std::array<std::pair<int, int>, 4> rows = {
          {{a, b}, {a, b + 4}, {a + 4, b}, {a + 4, b + 4}}};
      bool linked = true;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          if (!(d(r, c) ==
                Q(2) * rho.at(rows[r].first, rows[r].second, rows[c].second, rows[c].first)))
            linked = false;
      CHECK(linked);
    }
  }
}

TEST_CASE("two-site densities of embedded states match the amplitude products") {
  Rng rng(109);
  const MatQ p = bit_swap();
  for (int trial = 0; trial < 8; ++trial) {
    Qubits q = random_qubits(rng);
    State psi = embed_single(q);
    Q norm = hermitian_inner(psi, psi);
    auto lmn = lmn_matrices(q);
    const MatQ& lm = lmn[0];
    const MatQ& mm = lmn[1];
    const MatQ& nm = lmn[2];

    // The Gram extraction conjugates the amplitudes on the row side, so the
    // targets are the entrywise conjugates of the one-sided products.
    std::array<std::pair<std::pair<int, int>, MatQ>, 6> expected = {{
        {{1, 2}, conj_entrywise(MatQ(lm * conjugate_transpose(lm)))},
        {{3, 4}, MatQ(conjugate_transpose(lm) * lm)},
        {{1, 3}, MatQ(p * conj_entrywise(MatQ(mm * conjugate_transpose(mm))) * p)},
        {{2, 4}, MatQ(conjugate_transpose(mm) * mm)},
        {{1, 4}, conj_entrywise(MatQ(nm * conjugate_transpose(nm)))},
        {{2, 3}, MatQ(conjugate_transpose(nm) * nm)},
    }};
    for (const auto& [pair, target] : expected) {
      MatQ d = reduced_density(psi, pair.first, pair.second);
      CHECK(same_matrix(d, target));
      CHECK(mat_trace(d) == norm);
    }
  }
}

TEST_CASE("flip-symmetric four-particle states tie the pair tensor to the density tensor") {
  Rng rng(110);
  for (int trial = 0; trial < 4; ++trial) {
    State seed = random_four_particle(rng, 6);
    State psi = seed + spin_flip(seed);
    if (psi.terms.empty()) continue;
    REQUIRE(is_majorana(psi));
    auto pair = r_tensor(psi);
    auto rho = rho_tensor(psi);
    bool ok = true;
    bool any = false;
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j) {
        if (j == i) continue;
        for (int k = 1; k <= 8; ++k)
          for (int l = 1; l <= 8; ++l) {
            if (l == k) continue;
            if (!(pair.at(i, j, k, l) == Q(2) * rho.at(i, j, k, l))) ok = false;
            if (!pair.at(i, j, k, l).is_zero()) any = true;
          }
      }
    CHECK(ok);
    CHECK(any);

    // A relative phase breaks the tie even though the ray is unchanged.
    State twisted = GaussianRational::i_unit() * psi;
    auto pair_t = r_tensor(twisted);
    auto rho_t = rho_tensor(twisted);
    bool broken = false;
    for (int i = 1; i <= 8 && !broken; ++i)
      for (int j = 1; j <= 8 && !broken; ++j) {
        if (j == i) continue;
        for (int k = 1; k <= 8 && !broken; ++k)
          for (int l = 1; l <= 8 && !broken; ++l) {
            if (l == k) continue;
            if (!(pair_t.at(i, j, k, l) == Q(2) * rho_t.at(i, j, k, l))) broken = true;
          }
      }
    CHECK(broken);
  }
}

TEST_CASE("amplitude pair matrices follow the printed layouts") {
  Rng rng(111);
  const std::array<std::array<int, 4>, 4> m_layout = {
      {{0, 1, 4, 5}, {8, 9, 12, 13}, {2, 3, 6, 7}, {10, 11, 14, 15}}};
  const std::array<std::array<int, 4>, 4> n_layout = {
      {{0, 2, 4, 6}, {1, 3, 5, 7}, {8, 10, 12, 14}, {9, 11, 13, 15}}};
  for (int trial = 0; trial < 5; ++trial) {
    Qubits q = random_qubits(rng);
    auto lmn = lmn_matrices(q);
    bool ok = true;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        if (!(lmn[0](r, c) == q.amp[4 * r + c])) ok = false;
        if (!(lmn[1](r, c) == q.amp[m_layout[r][c]])) ok = false;
        if (!(lmn[2](r, c) == q.amp[n_layout[r][c]])) ok = false;
      }
    CHECK(ok);
  }
  Qubits ground(4);
  ground.amp[0] = Q(1);
  auto lmn = lmn_matrices(ground);
  for (int which = 0; which < 3; ++which)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        CHECK(lmn[which](r, c) == (r == 0 && c == 0 ? Q(1) : Q(0)));
  CHECK_THROWS_AS(lmn_matrices(Qubits(3)), std::domain_error);
}

TEST_CASE("determinants of the three pair matrices sum to zero") {
  Rng rng(112);
  for (int trial = 0; trial < 200; ++trial) {
    Qubits q = random_qubits(rng, trial % 2 == 0);
    auto lmn = lmn_matrices(q);
    Q total(0);
    for (const MatQ& m : lmn) total += exact_det(m);
    CHECK(total.is_zero());
  }
  // Cofactor-expansion cross-check on a few states.
  for (int trial = 0; trial < 3; ++trial) {
    Qubits q = random_qubits(rng);
    auto lmn = lmn_matrices(q);
    for (const MatQ& m : lmn) {
      std::vector<std::vector<Q>> rows(4, std::vector<Q>(4));
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rows[r][c] = m(r, c);
      CHECK(exact_det(m) == oracle::cofactor_det(rows));
    }
  }
}
