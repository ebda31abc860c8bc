#pragma once

// Scalar types for exact spinor computations.
//
// The workhorse scalar is GaussianRational: a complex number with exact
// rational real and imaginary parts, backed by GMP.  Every identity test in
// the library runs over this field with zero tolerance.  A std::complex
// <double> backend is provided for timing and sanity runs only.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace spinorlab {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parse "p", "-p", or "p/q" into a reduced rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

struct GaussianRational {
  Rational re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(int v) : re(v), im(0) {}
  GaussianRational(long v) : re(v), im(0) {}
  GaussianRational(const Rational& r) : re(r), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i_unit() { return GaussianRational(Rational(0), Rational(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational operator-() const { return GaussianRational(-re, -im); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (sgn(n) == 0) throw std::domain_error("division by zero GaussianRational");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conjugate(const GaussianRational& a) {
  return GaussianRational(a.re, -a.im);
}

inline std::string to_display(const GaussianRational& a) {
  if (sgn(a.im) == 0) return a.re.get_str();
  const Rational mag = sgn(a.im) < 0 ? Rational(-a.im) : a.im;
  return a.re.get_str() + (sgn(a.im) < 0 ? "-" : "+") + mag.get_str() + "i";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& a) {
  return os << to_display(a);
}

// Generic hooks so the library templates can treat both scalar backends
// uniformly (exact equality vs tolerance, conjugation, parsing).
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<GaussianRational> {
  static constexpr bool exact = true;
  using RealPart = Rational;
  static GaussianRational conj(const GaussianRational& a) { return conjugate(a); }
  static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
  static GaussianRational from_parts(const std::string& re, const std::string& im) {
    return GaussianRational(parse_rational(re), parse_rational(im));
  }
  static std::string re_string(const GaussianRational& a) { return a.re.get_str(); }
  static std::string im_string(const GaussianRational& a) { return a.im.get_str(); }
};

template <>
struct ScalarOps<std::complex<double>> {
  static constexpr bool exact = false;
  using RealPart = double;
  static std::complex<double> conj(const std::complex<double>& a) { return std::conj(a); }
  static bool is_zero(const std::complex<double>& a) { return a == std::complex<double>(0.0, 0.0); }
  static std::complex<double> from_parts(const std::string& re, const std::string& im) {
    return {std::stod(re), std::stod(im)};
  }
  static std::string re_string(const std::complex<double>& a) { return std::to_string(a.real()); }
  static std::string im_string(const std::complex<double>& a) { return std::to_string(a.imag()); }
};

using ComplexFloat = std::complex<double>;

}  // namespace spinorlab

namespace Eigen {

template <>
struct NumTraits<spinorlab::GaussianRational> {
  using Real = spinorlab::GaussianRational;
  using NonInteger = spinorlab::GaussianRational;
  using Literal = spinorlab::GaussianRational;
  using Nested = spinorlab::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
