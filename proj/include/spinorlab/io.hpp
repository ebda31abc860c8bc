// JSON state files and result reports.
//
// State files carry a mode count, a scalar backend name, and a list of
// occupation monomials with string coefficients ("p/q" rationals for the
// exact backend, decimal text for the float backend).  Serialization is
// canonical: terms ascend by occupation mask, fractions are reduced, and no
// zero coefficients appear, so parse followed by serialize is the identity on
// canonical files and idempotent on the rest.
//
// Reports map value labels to exact re/im strings plus a provenance tag, or
// carry per-identity pass/fail counts for verification suites.  They contain
// no timestamps: a report is a pure function of command, input, and seed.
#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spinorlab/fock.hpp"
#include "spinorlab/scalar.hpp"

namespace spinorlab {

// 64-bit FNV-1a content digest, rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

template <class S>
const char* scalar_name();
template <>
inline const char* scalar_name<GaussianRational>() {
  return "gaussian-rational";
}
template <>
inline const char* scalar_name<ComplexFloat>() {
  return "complex-float";
}

// Canonical serialization of a state.
template <class S>
std::string serialize_state(const FockState<S>& psi) {
  nlohmann::ordered_json root;
  root["modes"] = psi.modes;
  root["scalar"] = scalar_name<S>();
  root["terms"] = nlohmann::ordered_json::array();
  for (const auto& [mask, coeff] : psi.terms) {
    if (ScalarOps<S>::is_zero(coeff)) continue;
    nlohmann::ordered_json term;
    term["occupied"] = nlohmann::ordered_json::array();
    for (int mode = 1; mode <= psi.modes; ++mode)
      if (mask & mode_bit(mode)) term["occupied"].push_back(mode);
    term["coeff"] = {{"re", ScalarOps<S>::re_string(coeff)},
                     {"im", ScalarOps<S>::im_string(coeff)}};
    root["terms"].push_back(std::move(term));
  }
  return root.dump(2) + "\n";
}

using ParsedState = std::variant<FockState<GaussianRational>, FockState<ComplexFloat>>;

namespace detail {

template <class S>
FockState<S> state_from_json(const nlohmann::json& root, int modes) {
  FockState<S> psi(modes);
  for (const auto& term : root.at("terms")) {
    const auto& occupied = term.at("occupied");
    Mask mask = 0;
    int previous = 0;
    for (const auto& entry : occupied) {
      if (!entry.is_number_integer())
        throw std::invalid_argument("occupied entries must be integers");
      const int mode = entry.get<int>();
      if (mode < 1 || mode > modes)
        throw std::invalid_argument("occupied mode " + std::to_string(mode) +
                                    " outside 1.." + std::to_string(modes));
      if (mode <= previous)
        throw std::invalid_argument("occupied list must be strictly ascending");
      previous = mode;
      mask |= mode_bit(mode);
    }
    if (psi.terms.count(mask))
      throw std::invalid_argument("duplicate occupation monomial in terms");
    const auto& coeff = term.at("coeff");
    const S value = ScalarOps<S>::from_parts(coeff.at("re").get<std::string>(),
                                             coeff.at("im").get<std::string>());
    if (!ScalarOps<S>::is_zero(value)) psi.terms.emplace(mask, value);
  }
  return psi;
}

}  // namespace detail

// Parse a state file; throws std::invalid_argument on schema violations and
// nlohmann::json::exception on malformed JSON.
inline ParsedState parse_state(const std::string& text) {
  const nlohmann::json root = nlohmann::json::parse(text);
  if (!root.is_object()) throw std::invalid_argument("state file must be a JSON object");
  const int modes = root.at("modes").get<int>();
  if (modes < 0 || modes > kMaxModes)
    throw std::invalid_argument("mode count out of range");
  const std::string scalar = root.at("scalar").get<std::string>();
  if (scalar == scalar_name<GaussianRational>())
    return detail::state_from_json<GaussianRational>(root, modes);
  if (scalar == scalar_name<ComplexFloat>())
    return detail::state_from_json<ComplexFloat>(root, modes);
  throw std::invalid_argument("unknown scalar backend: " + scalar);
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

struct ReportValue {
  std::string re, im;
  std::string provenance;  // closed-form | trace-path | oracle
};

struct SuiteItem {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::string witness;  // serialized state that broke the identity, if any
};

struct Report {
  std::string command;
  std::string input_digest;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, ReportValue>> values;
  std::vector<SuiteItem> items;
  std::vector<std::pair<std::string, std::string>> facts;  // classification etc.

  bool suite_failed() const {
    for (const auto& item : items)
      if (item.failed > 0) return true;
    return false;
  }

  std::string to_json() const {
    nlohmann::ordered_json root;
    root["report"] = "v1";
    root["command"] = command;
    root["input_digest"] = input_digest;
    if (!parameters.empty()) {
      nlohmann::ordered_json p;
      for (const auto& [k, v] : parameters) p[k] = v;
      root["parameters"] = std::move(p);
    }
    if (!facts.empty()) {
      nlohmann::ordered_json f;
      for (const auto& [k, v] : facts) f[k] = v;
      root["classification"] = std::move(f);
    }
    if (!values.empty()) {
      nlohmann::ordered_json v;
      for (const auto& [label, value] : values)
        v[label] = {{"re", value.re}, {"im", value.im}, {"provenance", value.provenance}};
      root["values"] = std::move(v);
    }
    if (!items.empty()) {
      int passed = 0, failed = 0;
      nlohmann::ordered_json list = nlohmann::ordered_json::array();
      for (const auto& item : items) {
        passed += item.passed;
        failed += item.failed;
        nlohmann::ordered_json entry;
        entry["name"] = item.name;
        entry["passed"] = item.passed;
        entry["failed"] = item.failed;
        if (!item.witness.empty())
          entry["witness"] = nlohmann::ordered_json::parse(item.witness);
        list.push_back(std::move(entry));
      }
      root["suite"] = {{"passed", passed}, {"failed", failed}, {"items", std::move(list)}};
    }
    return root.dump(2) + "\n";
  }

  std::string to_csv() const {
    std::string out;
    for (const auto& [k, v] : facts) out += k + "," + v + "\n";
    for (const auto& [label, value] : values)
      out += label + "," + value.re + "," + value.im + "\n";
    for (const auto& item : items)
      out += item.name + "," + std::to_string(item.passed) + "," +
             std::to_string(item.failed) + "\n";
    return out;
  }
};

}  // namespace spinorlab
