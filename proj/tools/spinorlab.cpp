// spinorlab: exact invariants of fermionic Fock states and qubit embeddings.
//
// Verbs:
//   invariants --state FILE --family NAME [--orders CSV] [--output json|csv]
//   verify     --suite NAME [--trials N] [--seed N] [--output json|csv]
//   classify   --state FILE [--output json|csv]
//   make       semisimple4q --x a,b,c,d
//   make       gstate --y a,...,h
//   make       embed --state FILE --pattern BITS
//
// Exit codes: 0 success (or suite fully passed), 1 a verification suite
// found a failing identity, 2 usage or input-parsing error, 3 the input
// state has the wrong shape for the request (wrong mode count, zero state,
// not a qubit embedding).
//
// Reports are pure functions of (command, input, seed): no timestamps, no
// environment leakage, so identical invocations emit identical bytes.

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "spinorlab/classify.hpp"
#include "spinorlab/clifford.hpp"
#include "spinorlab/embed.hpp"
#include "spinorlab/invariants.hpp"
#include "spinorlab/io.hpp"
#include "spinorlab/pairing.hpp"
#include "spinorlab/random.hpp"
#include "spinorlab/roots.hpp"

namespace {

using namespace spinorlab;
using Q = GaussianRational;
using StateQ = FockState<Q>;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitShape = 3;

Q qpow(const Q& base, int exponent) {
  Q out(1);
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

// Trace powers the exact backends support.
const std::set<int>& supported_orders() {
  static const std::set<int> orders = {1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 15};
  return orders;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t env_seed() {
  const char* raw = std::getenv("SPINORLAB_SEED");
  if (!raw) return 0;
  const std::string text(raw);
  if (text.empty() || text.size() > 20 ||
      text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("SPINORLAB_SEED must be a nonnegative integer");
  try {
    return std::stoull(text);
  } catch (...) {
    throw std::invalid_argument("SPINORLAB_SEED is out of range");
  }
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string token;
  std::stringstream stream(csv);
  while (std::getline(stream, token, ',')) out.push_back(token);
  return out;
}

std::set<int> parse_orders(const std::string& csv) {
  std::set<int> out;
  for (const std::string& token : split_csv(csv)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (...) {
      throw std::invalid_argument("bad trace order: '" + token + "'");
    }
    if (used != token.size())
      throw std::invalid_argument("bad trace order: '" + token + "'");
    if (supported_orders().count(value) == 0)
      throw std::invalid_argument("unsupported trace order " + std::to_string(value) +
                                  " (supported: 1..7, 9, 10, 12, 15)");
    out.insert(value);
  }
  if (out.empty()) throw std::invalid_argument("empty trace-order list");
  return out;
}

// Default trace powers per family when --orders is omitted.
std::set<int> resolve_orders(const std::string& family, const std::string& csv) {
  if (!csv.empty()) return parse_orders(csv);
  if (family == "spin16") return {1, 4, 6, 7, 9, 10, 12, 15};
  if (family == "fprime") return {1, 2, 3, 6};
  if (family == "fourqubit") return {};
  return {1, 2, 3, 4, 5, 6};  // sl8 and g
}

std::string orders_string(const std::set<int>& orders) {
  std::string out;
  for (int p : orders) {
    if (!out.empty()) out += ",";
    out += std::to_string(p);
  }
  return out;
}

template <std::size_t N>
std::array<Q, N> rational_array(const std::string& csv, const std::string& flag) {
  const auto tokens = split_csv(csv);
  if (tokens.size() != N)
    throw std::invalid_argument(flag + " needs " + std::to_string(N) +
                                " comma-separated rationals");
  std::array<Q, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = ScalarOps<Q>::from_parts(tokens[i], "0");
  return out;
}

void emit(const Report& report, const std::string& output) {
  std::cout << (output == "csv" ? report.to_csv() : report.to_json());
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

template <class S>
void fill_invariants(Report& report, const FockState<S>& psi, const std::string& family,
                     const std::set<int>& orders) {
  auto put = [&](const std::string& label, const S& value, const char* provenance) {
    report.values.emplace_back(
        label, ReportValue{ScalarOps<S>::re_string(value), ScalarOps<S>::im_string(value),
                           provenance});
  };
  auto put_traces = [&](const std::map<int, S>& family_values, const std::string& prefix) {
    for (const auto& [p, value] : family_values)
      put(prefix + "_" + std::to_string(2 * p), value, "trace-path");
  };

  if (family == "spin16") {
    put_traces(spin16_invariants(psi, orders), "spin16");
    return;
  }
  if (family == "sl8") {
    put_traces(sl8_trace_invariants(psi, orders), "sl8");
    return;
  }
  const QubitState<S> q = extract_qubit(psi);
  if (family == "g") {
    put_traces(g_invariants(q, orders), "g");
    return;
  }
  if (family == "fprime") {
    put_traces(f_prime_invariants(q, orders), "fprime");
    return;
  }
  const FourQubitInvariants<S> inv = fourqubit_invariants(q);
  put("H", inv.h, "closed-form");
  put("L", inv.l, "closed-form");
  put("M", inv.m, "closed-form");
  put("N", inv.n, "closed-form");
  put("D", inv.d, "closed-form");
  put("E", inv.e, "closed-form");
  put("F", inv.f, "closed-form");
  put("sigma", inv.sigma, "closed-form");
  put("gamma", inv.gamma, "closed-form");
  put("pi", inv.pi, "closed-form");
  put("s1", inv.s1, "closed-form");
  put("s2", inv.s2, "closed-form");
  put("s3", inv.s3, "closed-form");
  put("s4", inv.s4, "closed-form");
}

int run_invariants(const std::string& state_path, const std::string& family,
                   const std::string& orders_csv, const std::string& output) {
  std::string bytes;
  std::optional<ParsedState> parsed;
  std::set<int> orders;
  try {
    bytes = read_file(state_path);
    parsed = parse_state(bytes);
    orders = resolve_orders(family, orders_csv);
  } catch (const std::exception& error) {
    std::cerr << "spinorlab: " << error.what() << "\n";
    return kExitUsage;
  }

  Report report;
  report.command = "invariants";
  report.input_digest = fnv1a_hex(bytes);
  report.parameters.emplace_back("family", family);
  if (family != "fourqubit") report.parameters.emplace_back("orders", orders_string(orders));

  try {
    std::visit([&](const auto& psi) { fill_invariants(report, psi, family, orders); },
               *parsed);
  } catch (const std::exception& error) {
    std::cerr << "spinorlab: " << error.what() << "\n";
    return kExitShape;
  }
  emit(report, output);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(const std::string& state_path, const std::string& output) {
  std::string bytes;
  std::optional<ParsedState> parsed;
  try {
    bytes = read_file(state_path);
    parsed = parse_state(bytes);
  } catch (const std::exception& error) {
    std::cerr << "spinorlab: " << error.what() << "\n";
    return kExitUsage;
  }

  Report report;
  report.command = "classify";
  report.input_digest = fnv1a_hex(bytes);

  try {
    const auto* psi = std::get_if<StateQ>(&*parsed);
    if (psi == nullptr)
      throw std::domain_error("classification needs the gaussian-rational backend");
    if (psi->is_zero()) throw std::domain_error("cannot classify the zero state");

    const std::optional<int> chi = chirality(*psi);
    const AnnihilatorBasis<Q> basis = annihilator_basis(*psi);
    std::string sectors;
    for (const auto& [count, part] : particle_sectors(*psi)) {
      if (!sectors.empty()) sectors += ",";
      sectors += std::to_string(count);
    }
    report.facts.emplace_back("modes", std::to_string(psi->modes));
    report.facts.emplace_back("terms", std::to_string(psi->terms.size()));
    report.facts.emplace_back("chirality", chi ? (*chi > 0 ? "+1" : "-1") : "mixed");
    report.facts.emplace_back("sectors", sectors);
    report.facts.emplace_back("nullity", std::to_string(basis.nullity));
    report.facts.emplace_back("pure", basis.nullity == psi->modes ? "true" : "false");
    report.facts.emplace_back("majorana", is_majorana(*psi) ? "true" : "false");
  } catch (const std::exception& error) {
    std::cerr << "spinorlab: " << error.what() << "\n";
    return kExitShape;
  }
  emit(report, output);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// make
// ---------------------------------------------------------------------------

int run_make(const std::string& kind, const std::string& x_csv, const std::string& y_csv,
             const std::string& pattern, const std::string& state_path) {
  if (kind == "semisimple4q") {
    std::array<Q, 4> x;
    try {
      x = rational_array<4>(x_csv, "--x");
    } catch (const std::exception& error) {
      std::cerr << "spinorlab: " << error.what() << "\n";
      return kExitUsage;
    }
    std::cout << serialize_state(embed_single(semisimple_qubit_state(x)));
    return kExitOk;
  }

  if (kind == "gstate") {
    std::array<Q, 8> y;
    try {
      y = rational_array<8>(y_csv, "--y");
    } catch (const std::exception& error) {
      std::cerr << "spinorlab: " << error.what() << "\n";
      return kExitUsage;
    }
    std::cout << serialize_state(semisimple_fock_state(y));
    return kExitOk;
  }

  // embed: re-embed a single-embedded state with an occupation pattern.
  std::vector<int> bits;
  for (char c : pattern) {
    if (c != '0' && c != '1') {
      std::cerr << "spinorlab: --pattern must be a nonempty string of 0s and 1s\n";
      return kExitUsage;
    }
    bits.push_back(c - '0');
  }
  if (bits.empty() || state_path.empty()) {
    std::cerr << "spinorlab: make embed needs --state and --pattern\n";
    return kExitUsage;
  }
  std::optional<ParsedState> parsed;
  try {
    parsed = parse_state(read_file(state_path));
  } catch (const std::exception& error) {
    std::cerr << "spinorlab: " << error.what() << "\n";
    return kExitUsage;
  }
  return std::visit(
      [&](const auto& psi) -> int {
        try {
          const auto q = extract_qubit(psi);
          if (static_cast<int>(bits.size()) != q.qubits) {
            std::cerr << "spinorlab: pattern length " << bits.size() << " does not match the "
                      << q.qubits << "-qubit state\n";
            return kExitUsage;
          }
          std::cout << serialize_state(embed_pattern(q, bits));
          return kExitOk;
        } catch (const std::exception& error) {
          std::cerr << "spinorlab: " << error.what() << "\n";
          return kExitShape;
        }
      },
      *parsed);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

void run_item(Report& report, const std::string& name, int count,
              const std::function<bool(std::string&)>& check) {
  SuiteItem item;
  item.name = name;
  for (int t = 0; t < count; ++t) {
    std::string witness;
    if (check(witness)) {
      ++item.passed;
    } else {
      ++item.failed;
      if (item.witness.empty()) item.witness = witness;
    }
  }
  report.items.push_back(std::move(item));
}

// Canonical anticommutation relations, the Clifford algebra of the gamma
// basis, and the volume element.
void suite_car(Rng& rng, int trials, Report& report) {
  run_item(report, "ladder-anticommutators", trials, [&](std::string& witness) {
    const int n = rng.int_in(1, 8);
    const StateQ psi = rng.state(n, rng.int_in(1, 4));
    const int i = rng.int_in(1, n), j = rng.int_in(1, n);
    auto anti = [&](const Ladder& a, const Ladder& b) {
      return apply_word(psi, {a, b}) + apply_word(psi, {b, a});
    };
    bool ok = anti(create(i), annihilate(j)) == (i == j ? psi : StateQ(n));
    ok = ok && anti(create(i), create(j)).is_zero();
    ok = ok && anti(annihilate(i), annihilate(j)).is_zero();
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "clifford-relations", trials, [&](std::string& witness) {
    const int n = rng.int_in(1, 3);
    const StateQ psi = rng.state(n, rng.int_in(1, 4));
    const int i = rng.int_in(1, 2 * n), j = rng.int_in(1, 2 * n);
    const Mat<Q> eta = eta_metric<Q>(n);
    const StateQ anti =
        gamma_apply(gamma_apply(psi, j), i) + gamma_apply(gamma_apply(psi, i), j);
    bool ok = anti == (Q(2) * eta(i - 1, j - 1)) * psi;
    ok = ok && gamma_apply(gamma_apply(psi, i), i) == eta(i - 1, i - 1) * psi;
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "volume-element", trials, [&](std::string& witness) {
    const int n = rng.int_in(1, 5);
    const StateQ psi = rng.state(n, rng.int_in(1, 4));
    bool ok = chirality_operator_apply(chirality_operator_apply(psi)) == psi;
    ok = ok && chirality_operator_apply(psi) == parity_flip(psi);
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
}

// Bilinear pairing: symmetry sign, invariance under the transform group,
// word adjoints, and the conjugation bridge to the inner product.
void suite_pairing(Rng& rng, int trials, Report& report) {
  run_item(report, "exchange-symmetry", trials, [&](std::string& witness) {
    const int n = rng.int_in(2, 8);
    const StateQ a = rng.state(n, 4), b = rng.state(n, 4);
    const int sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
    const bool ok = mukai_pairing(a, b) == Q(sign) * mukai_pairing(b, a);
    if (!ok) witness = serialize_state(a);
    return ok;
  });
  run_item(report, "transform-invariance", trials, [&](std::string& witness) {
    const int n = 4 + 2 * rng.int_in(0, 2);
    const StateQ psi = rng.state(n, 4), phi = rng.state(n, 4);
    const Mat<Q> b = rng.antisymmetric(n), c = rng.antisymmetric(n);
    const Q base = mukai_pairing(psi, phi);
    bool ok = mukai_pairing(b_transform(b, psi), b_transform(b, phi)) == base;
    ok = ok && mukai_pairing(c_transform(c, psi), c_transform(c, phi)) == base;
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "word-adjoint", trials, [&](std::string& witness) {
    const int n = 5;
    LadderWord word;
    const int length = rng.int_in(1, 3);
    for (int k = 0; k < length; ++k) {
      const int mode = rng.int_in(1, n);
      word.push_back(rng.int_in(0, 1) == 0 ? create(mode) : annihilate(mode));
    }
    const StateQ psi = rng.state(n, 4), phi = rng.state(n, 4);
    const bool ok = mukai_pairing(psi, apply_word(phi, word)) ==
                    mukai_pairing(apply_word(psi, transpose_word(word)), phi);
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "flip-inner-product", trials, [&](std::string& witness) {
    const int n = rng.int_in(2, 6);
    const StateQ psi = rng.state(n, 4), phi = rng.state(n, 4);
    const bool ok = hermitian_inner(spin_flip(psi), phi) == mukai_pairing(psi, phi);
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
}

// Qubit embeddings and the six-mode mirror map.
void suite_embeddings(Rng& rng, int trials, Report& report) {
  run_item(report, "single-roundtrip", trials, [&](std::string& witness) {
    const int n = rng.int_in(2, 4);
    QubitState<Q> q(n);
    q.amp = rng.qubit_amplitudes(n);
    const StateQ psi = embed_single(q);
    const bool ok = extract_qubit(psi) == q;
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "pattern-roundtrip", trials, [&](std::string& witness) {
    const int n = rng.int_in(2, 4);
    QubitState<Q> q(n);
    q.amp = rng.qubit_amplitudes(n);
    std::vector<int> pattern(n);
    for (int& bit : pattern) bit = rng.int_in(0, 1);
    const StateQ psi = embed_pattern(q, pattern);
    const bool ok = extract_qubit(psi, pattern) == q;
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "mirror-involution", trials, [&](std::string& witness) {
    const StateQ psi = rng.weyl_state(6, rng.int_in(0, 1), rng.int_in(2, 8));
    bool ok = mirror_map(mirror_map(psi)) == -psi;
    ok = ok && mirror_map_inverse(mirror_map(psi)) == psi;
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "mirror-corner-entries", trials, [&](std::string& witness) {
    const StateQ psi = rng.weyl_state(6, 1, 8);
    const StateQ out = mirror_map(psi);
    const Mask low = mode_bit(1) | mode_bit(2) | mode_bit(3);
    const Mask high = mode_bit(4) | mode_bit(5) | mode_bit(6);
    bool ok = out.coeff(0) == Q(0) - psi.coeff(low);
    ok = ok && out.coeff(full_mask(6)) == psi.coeff(high);
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
}

// The four-qubit invariant dictionary: determinant sum rule, Newton
// coefficients, trace closed forms, the degree-ten dependence, the halving
// bridge to the 28x28 family, and the pairing bridge.
void suite_fourqubit(Rng& rng, int trials, Report& report) {
  auto random_q = [&rng]() {
    QubitState<Q> q(4);
    q.amp = rng.qubit_amplitudes(4);
    return q;
  };
  run_item(report, "determinant-sum-rule", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto inv = fourqubit_invariants(q);
    const bool ok = (inv.l + inv.m + inv.n).is_zero();
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "newton-coefficients", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto inv = fourqubit_invariants(q);
    const std::array<Q, 4> s = char_poly_s(q, 0);
    const bool ok =
        s[0] == inv.s1 && s[1] == inv.s2 && s[2] == inv.s3 && s[3] == inv.s4;
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "closed-form-traces", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto inv = fourqubit_invariants(q);
    const auto g = g_invariants(q, {1, 2, 3});
    bool ok = g.at(1) == Q(6) * inv.h;
    ok = ok && g.at(2) == Q(6) * inv.h * inv.h;
    ok = ok && g.at(3) == Q(6) * qpow(inv.h, 3) + Q(12) * inv.gamma;
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "decomposition-syzygy", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto g = g_invariants(q, {1, 3, 4, 5});
    const bool ok = Q(2592) * g.at(5) == Q(7) * qpow(g.at(1), 5) +
                                             Q(1944) * g.at(1) * g.at(4) -
                                             Q(504) * g.at(1) * g.at(1) * g.at(3);
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "halving-bridge", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto fp = f_prime_invariants(q, {1, 2});
    const auto g = g_invariants(q, {1, 2});
    const bool ok = fp.at(1) == g.at(1) && Q(2) * fp.at(2) == g.at(2);
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "embedded-trace-bridge", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto fp = f_prime_invariants(q, {1, 2});
    const auto traces = sl8_trace_invariants(embed_single(q), {1, 2});
    const bool ok =
        traces.at(1) == Q(-2) * fp.at(1) && traces.at(2) == Q(4) * fp.at(2);
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "pairing-bridge", trials, [&](std::string& witness) {
    const QubitState<Q> q = random_q();
    const auto inv = fourqubit_invariants(q);
    const bool ok = quadratic_form(embed_single(q)) == Q(2) * inv.h;
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
}

// 24-root power sums against the trace families on the semisimple slice.
void suite_roots(Rng& rng, int trials, Report& report) {
  auto random_x = [&rng]() {
    std::array<Q, 4> x;
    for (Q& v : x) v = rng.gaussian_rational(5, 3, true);
    return x;
  };
  run_item(report, "power-sum-bridge", trials, [&](std::string& witness) {
    const std::array<Q, 4> x = random_x();
    const QubitState<Q> q = semisimple_qubit_state(x);
    const auto g = g_invariants(q, {1, 3});
    const auto traces = sl8_trace_invariants(embed_single(q), {1, 3});
    bool ok = true;
    for (int p : {1, 3}) {
      const Q sum = f4_power_sum(x, p);
      ok = ok && sum == qpow(Q(2), 2 * p + 1) * g.at(p);
      ok = ok && sum == Q(p % 2 == 0 ? 1 : -1) * qpow(Q(2), 2 * p) * traces.at(p);
    }
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "pair-sum-agreement", trials, [&](std::string& witness) {
    std::array<Q, 4> y;
    for (Q& v : y) v = rng.gaussian_rational(5, 3, true);
    const QubitState<Q> q = semisimple_state_from_y(y);
    const auto g = g_invariants(q, {1, 3, 4, 6});
    bool ok = true;
    for (int p : {1, 3, 4, 6}) ok = ok && g.at(p) == wallach_g(y, p);
    if (!ok) witness = serialize_state(embed_single(q));
    return ok;
  });
  run_item(report, "quartet-closed-forms", trials, [&](std::string& witness) {
    const std::array<Q, 4> x = random_x();
    const std::array<Q, 4> f = f_closed(semisimple_qubit_state(x));
    const std::array<int, 4> orders = {1, 3, 4, 6};
    const Q sixth = Q(1) / Q(6);
    bool ok = true;
    for (int slot = 0; slot < 4; ++slot) {
      Q wall(0);
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          wall += qpow(x[a] + x[b], 2 * orders[slot]) +
                  qpow(x[a] - x[b], 2 * orders[slot]);
      ok = ok && f[slot] == sixth * wall;
    }
    if (!ok) witness = serialize_state(embed_single(semisimple_qubit_state(x)));
    return ok;
  });
}

// 240-root power sums against the pair-contraction traces on the
// eight-parameter family, plus the frame properties of its basis states.
void suite_e8(Rng& rng, int trials, Report& report) {
  auto random_y = [&rng](int bound) {
    std::array<Q, 8> y;
    bool nonzero = false;
    for (Q& v : y) {
      v = Q(rng.int_in(-bound, bound));
      nonzero = nonzero || !v.is_zero();
    }
    if (!nonzero) y[0] = Q(1);
    return y;
  };
  run_item(report, "trace-vs-power-sum", trials, [&](std::string& witness) {
    const std::array<Q, 8> y = random_y(3);
    const auto traces = semisimple_trace_invariants(y, {1, 4, 6, 7, 9, 10, 12, 15});
    const std::array<Q, 8> x = x_of_y(y);
    bool ok = true;
    for (const auto& [p, value] : traces) {
      const Q expected = Q(p % 2 == 0 ? 1 : -1) * qpow(Q(2), 2 * p - 1) *
                         e8_power_sum(x, 2 * p);
      ok = ok && value == expected;
    }
    if (!ok) witness = serialize_state(semisimple_fock_state(y));
    return ok;
  });
  run_item(report, "spinor-route-agreement", std::max(1, trials / 5),
           [&](std::string& witness) {
             const std::array<Q, 8> y = random_y(2);
             const StateQ psi = semisimple_fock_state(y);
             const std::set<int> orders = {1, 4};
             const bool ok =
                 spin16_invariants(psi, orders) == semisimple_trace_invariants(y, orders);
             if (!ok) witness = serialize_state(psi);
             return ok;
           });
  run_item(report, "basis-frame", 1, [&](std::string& witness) {
    const auto basis = cartan_basis_states<Q>();
    bool ok = true;
    for (int a = 0; a < 8 && ok; ++a) {
      for (int b = 0; b < 8; ++b)
        ok = ok && mukai_pairing(basis[a], basis[b]) == (a == b ? Q(2) : Q(0));
      const StateQ reflected =
          gamma_apply(gamma_apply(gamma_apply(gamma_apply(basis[a], 4), 3), 2), 1);
      ok = ok && reflected == basis[7 - a];
      if (!ok) witness = serialize_state(basis[a]);
    }
    return ok;
  });
  run_item(report, "real-family-majorana", trials, [&](std::string& witness) {
    const StateQ psi = semisimple_fock_state(random_y(4));
    const bool ok = is_majorana(psi);
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
}

// Annihilator nullity and purity classification.
void suite_classify(Rng& rng, int trials, Report& report) {
  run_item(report, "transform-nullity", trials, [&](std::string& witness) {
    const int n = rng.int_in(2, 8);
    const int k = rng.int_in(0, n);
    const StateQ psi =
        random_pure_spinor(n, k, static_cast<std::uint64_t>(rng.int_in(0, 1 << 30)));
    const bool ok = annihilator_basis(psi).nullity == n;
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "low-mode-purity", trials, [&](std::string& witness) {
    const int n = rng.int_in(1, 3);
    const StateQ psi = rng.weyl_state(n, rng.int_in(0, 1), rng.int_in(1, 4));
    const bool ok = is_pure_spinor(psi);
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
  run_item(report, "quadric-purity", trials, [&](std::string& witness) {
    StateQ psi(4);
    while (psi.is_zero()) {
      psi = StateQ(4);
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
          if (rng.int_in(0, 1) == 1)
            psi.add_term(mode_bit(i) | mode_bit(j), rng.gaussian_rational());
    }
    const bool ok = is_pure_spinor(psi) == quadratic_form(psi).is_zero();
    if (!ok) witness = serialize_state(psi);
    return ok;
  });
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed,
               const std::string& output) {
  Report report;
  report.command = "verify";
  report.input_digest = fnv1a_hex("suite=" + suite + ";trials=" + std::to_string(trials) +
                                  ";seed=" + std::to_string(seed));
  report.parameters.emplace_back("suite", suite);
  report.parameters.emplace_back("trials", std::to_string(trials));
  report.parameters.emplace_back("seed", std::to_string(seed));

  Rng rng(seed);
  if (suite == "car")
    suite_car(rng, trials, report);
  else if (suite == "pairing")
    suite_pairing(rng, trials, report);
  else if (suite == "embeddings")
    suite_embeddings(rng, trials, report);
  else if (suite == "fourqubit-identities")
    suite_fourqubit(rng, trials, report);
  else if (suite == "roots")
    suite_roots(rng, trials, report);
  else if (suite == "e8")
    suite_e8(rng, trials, report);
  else
    suite_classify(rng, trials, report);

  emit(report, output);
  return report.suite_failed() ? kExitSuiteFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);

  std::uint64_t seed = 0;
  try {
    seed = env_seed();
  } catch (const std::exception& error) {
    std::cerr << "spinorlab: " << error.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{
      "spinorlab: exact invariants of fermionic Fock states and qubit embeddings.\n"
      "State files are JSON: modes, scalar backend, and occupation terms with\n"
      "string coefficients.  Modes are labelled 1..n for one spinor sector and\n"
      "n+1..2n for the other, so mode i+n plays the role of the barred label of\n"
      "mode i in a 2n-mode embedding of n qubits."};
  app.require_subcommand(1);

  auto* inv = app.add_subcommand("invariants", "evaluate an invariant family on a state");
  std::string inv_state, inv_family, inv_orders, inv_output = "json";
  inv->add_option("--state", inv_state, "input state file")->required();
  inv->add_option("--family", inv_family,
                  "spin16 | sl8 | fourqubit | g | fprime (fourqubit, g and fprime expect "
                  "a single-embedded four-qubit state)")
      ->required()
      ->check(CLI::IsMember({"spin16", "sl8", "fourqubit", "g", "fprime"}));
  inv->add_option("--orders", inv_orders,
                  "comma-separated trace powers p; the reported value has degree 2p "
                  "(default per family; supported: 1..7, 9, 10, 12, 15)");
  inv->add_option("--output", inv_output, "report format (default json)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* ver = app.add_subcommand("verify", "run a seeded identity suite");
  std::string ver_suite, ver_output = "json";
  int ver_trials = 20;
  ver->add_option("--suite", ver_suite,
                  "car | pairing | embeddings | fourqubit-identities | roots | e8 | classify")
      ->required()
      ->check(CLI::IsMember(
          {"car", "pairing", "embeddings", "fourqubit-identities", "roots", "e8", "classify"}));
  ver->add_option("--trials", ver_trials, "random draws per identity (default 20)")
      ->check(CLI::PositiveNumber);
  ver->add_option("--seed", seed, "random seed (default: SPINORLAB_SEED or 0)");
  ver->add_option("--output", ver_output, "report format (default json)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* cls = app.add_subcommand("classify", "annihilator structure of a state");
  std::string cls_state, cls_output = "json";
  cls->add_option("--state", cls_state, "input state file (gaussian-rational backend)")
      ->required();
  cls->add_option("--output", cls_output, "report format (default json)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* mk = app.add_subcommand("make", "construct reference states (JSON on stdout)");
  std::string mk_kind, mk_x, mk_y, mk_pattern, mk_state;
  mk->add_option("kind", mk_kind, "semisimple4q | gstate | embed")
      ->required()
      ->check(CLI::IsMember({"semisimple4q", "gstate", "embed"}));
  mk->add_option("--x", mk_x, "four comma-separated rationals (semisimple4q)");
  mk->add_option("--y", mk_y, "eight comma-separated rationals (gstate)");
  mk->add_option("--pattern", mk_pattern, "occupation bits, one per qubit (embed)");
  mk->add_option("--state", mk_state, "input state file (embed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  if (inv->parsed()) return run_invariants(inv_state, inv_family, inv_orders, inv_output);
  if (ver->parsed()) return run_verify(ver_suite, ver_trials, seed, ver_output);
  if (cls->parsed()) return run_classify(cls_state, cls_output);
  return run_make(mk_kind, mk_x, mk_y, mk_pattern, mk_state);
}
