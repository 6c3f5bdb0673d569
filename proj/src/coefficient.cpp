#include "bnf/coefficient.hpp"

#include <atomic>
#include <charconv>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "bnf/errors.hpp"

namespace bnf {

namespace {
std::atomic<double> g_zero_threshold{1e-12};
}

std::string_view to_string(Mode mode) {
  return mode == Mode::rational ? "rational" : "float";
}

QComplex& QComplex::operator*=(const QComplex& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
  const Rational den = o.re * o.re + o.im * o.im;
  if (sgn(den) == 0) throw std::domain_error("division of complex rational by zero");
  Rational r = (re * o.re + im * o.im) / den;
  Rational i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

double Scalar<QComplex>::modulus(const QComplex& c) {
  if (sgn(c.im) == 0) return std::abs(c.re.get_d());
  if (sgn(c.re) == 0) return std::abs(c.im.get_d());
  const Rational sq = c.re * c.re + c.im * c.im;
  return std::sqrt(sq.get_d());
}

double Scalar<DComplex>::zero_threshold() { return g_zero_threshold.load(); }

void Scalar<DComplex>::set_zero_threshold(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("zero threshold must be nonnegative");
  g_zero_threshold.store(t);
}

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw InputError("empty rational");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/')) {
      throw InputError("malformed rational '" + std::string(text) + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
  if (sgn(q.get_den()) == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

double parse_double(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_rational(text).get_d();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("malformed number '" + std::string(text) + "'");
  }
  return x;
}

}  // namespace bnf
