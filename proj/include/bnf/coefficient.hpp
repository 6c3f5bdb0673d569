#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace bnf {

using Rational = mpq_class;

// Complex number with exact rational real and imaginary parts.
struct QComplex {
  Rational re;
  Rational im;

  QComplex() = default;
  QComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  QComplex(long r) : re(r), im(0) {}

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);
  QComplex& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }
  QComplex& operator/=(const Rational& s) {
    re /= s;
    im /= s;
    return *this;
  }

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(QComplex a) {
    a.re = -a.re;
    a.im = -a.im;
    return a;
  }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

using DComplex = std::complex<double>;

enum class Mode { rational, floating };

std::string_view to_string(Mode mode);

// Uniform interface over the coefficient rings used by the engine:
// QComplex (exact mode), DComplex (float mode) and double (majorants).
template <class C>
struct Scalar;

template <>
struct Scalar<QComplex> {
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::rational;
  static QComplex zero() { return QComplex{}; }
  static QComplex one() { return QComplex{1}; }
  static QComplex imag_unit() { return QComplex{Rational(0), Rational(1)}; }
  static QComplex from_int(long v) { return QComplex{v}; }
  static QComplex from_ratio(long p, long q) { return QComplex{Rational(p, q)}; }
  static bool is_zero(const QComplex& c) { return sgn(c.re) == 0 && sgn(c.im) == 0; }
  static double modulus(const QComplex& c);
  static DComplex to_complex(const QComplex& c) { return {c.re.get_d(), c.im.get_d()}; }
  static void scale_int(QComplex& c, long s) {
    c.re *= s;
    c.im *= s;
  }
  static void divide_int(QComplex& c, long s) {
    c.re /= s;
    c.im /= s;
  }
};

template <>
struct Scalar<DComplex> {
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::floating;
  static DComplex zero() { return {0.0, 0.0}; }
  static DComplex one() { return {1.0, 0.0}; }
  static DComplex imag_unit() { return {0.0, 1.0}; }
  static DComplex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static DComplex from_ratio(long p, long q) {
    return {static_cast<double>(p) / static_cast<double>(q), 0.0};
  }
  static bool is_zero(const DComplex& c) { return std::abs(c) <= zero_threshold(); }
  static double modulus(const DComplex& c) { return std::abs(c); }
  static DComplex to_complex(const DComplex& c) { return c; }
  static void scale_int(DComplex& c, long s) { c *= static_cast<double>(s); }
  static void divide_int(DComplex& c, long s) { c /= static_cast<double>(s); }

  // Coefficients with modulus at or below this value are dropped on canonicalization.
  static double zero_threshold();
  static void set_zero_threshold(double t);
};

template <>
struct Scalar<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_ratio(long p, long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static bool is_zero(double c) { return c == 0.0; }
  static double modulus(double c) { return c < 0 ? -c : c; }
  static DComplex to_complex(double c) { return {c, 0.0}; }
  static void scale_int(double& c, long s) { c *= static_cast<double>(s); }
  static void divide_int(double& c, long s) { c /= static_cast<double>(s); }
};

// Text forms used by the VFAM/1 format: reduced "p/q" rationals and
// shortest round-trip decimal doubles.
std::string format_rational(const Rational& q);
std::string format_double(double x);
Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);

}  // namespace bnf
