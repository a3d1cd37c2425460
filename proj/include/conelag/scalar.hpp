#pragma once

// Exact and floating scalar types used throughout the library.
//
//   Rational        arbitrary-precision rational (GMP mpq_class)
//   QSqrt2          the quadratic field Q(sqrt 2), stored as a + b*sqrt2
//   Complex<F>      F + iF over any of the above fields
//
// ScalarTraits<K> is the small adapter every template in the library goes
// through, so that the same algorithm runs on Rational, QSqrt2,
// Complex<QSqrt2>, double and std::complex<double>.

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace conelag {

using Rational = mpq_class;

/// Canonicalized num/den (the raw mpq_class constructor does not reduce).
inline Rational frac(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) { return frac(num, den); }

/// Parses "p", "p/q", or a plain decimal such as "1e-9" / "0.25".
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const bool decimal = text.find_first_of(".eE") != std::string::npos;
  if (!decimal) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  // Decimal literal: mantissa digits over a power of ten, exact.
  std::string mantissa = text;
  long exponent = 0;
  const auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = text.substr(0, epos);
    try {
      exponent = std::stol(text.substr(epos + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational literal: " + text);
    }
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational literal: " + text);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational literal: " + text);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad rational literal: " + text);
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(num, pow10) : Rational(num * pow10);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_pow(const Rational& base, long exponent) {
  Rational result = 1;
  Rational b = exponent < 0 ? Rational(1 / base) : base;
  for (long e = exponent < 0 ? -exponent : exponent; e > 0; --e) result *= b;
  return result;
}

/// Element a + b*sqrt(2) of the quadratic field Q(sqrt 2).
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static QSqrt2 sqrt2() { return {Rational(0), Rational(1)}; }
  /// 1/sqrt(2) = sqrt(2)/2
  static QSqrt2 inv_sqrt2() { return {Rational(0), Rational(1, 2)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Exact sign of a + b*sqrt2.
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 2 b^2
    const Rational lhs = a_ * a_;
    const Rational rhs = 2 * b_ * b_;
    const int c = cmp(lhs, rhs);
    return c > 0 ? sa : (c < 0 ? sb : 0);
  }

  double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(2.0); }

  QSqrt2 conjugate() const { return {a_, -b_}; }
  /// Field norm a^2 - 2 b^2.
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }

  QSqrt2 operator-() const { return {-a_, -b_}; }
  QSqrt2& operator+=(const QSqrt2& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QSqrt2& operator-=(const QSqrt2& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QSqrt2& operator*=(const QSqrt2& o) {
    if (o.is_rational()) {
      a_ *= o.a_;
      b_ *= o.a_;
      return *this;
    }
    Rational na = a_ * o.a_ + 2 * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  QSqrt2& operator/=(const QSqrt2& o) {
    if (o.is_zero()) throw std::domain_error("QSqrt2 division by zero");
    if (o.is_rational()) {
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    const Rational n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }

  std::string str() const {
    if (is_rational()) return a_.get_str();
    if (sgn(a_) == 0) return b_.get_str() + "*sqrt2";
    return a_.get_str() + (sgn(b_) > 0 ? "+" : "") + b_.get_str() + "*sqrt2";
  }
  friend std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.str(); }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Gaussian-type extension F[i]; used for the complexified algebra.
template <class F>
struct Complex {
  F re{};
  F im{};

  Complex() = default;
  Complex(long x) : re(x), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(F r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(F r, F i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return {F(0), F(1)}; }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    F nr = re * o.re - im * o.im;
    F ni = re * o.im + im * o.re;
    re = std::move(nr);
    im = std::move(ni);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    const F n = o.re * o.re + o.im * o.im;
    *this *= Complex{o.re, -o.im};
    re /= n;
    im /= n;
    return *this;
  }
  friend Complex operator+(Complex x, const Complex& y) { return x += y; }
  friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
  friend Complex operator*(Complex x, const Complex& y) { return x *= y; }
  friend Complex operator/(Complex x, const Complex& y) { return x /= y; }
  friend bool operator==(const Complex& x, const Complex& y) { return x.re == y.re && x.im == y.im; }
  friend bool operator!=(const Complex& x, const Complex& y) { return !(x == y); }
};

using ExactComplex = Complex<QSqrt2>;

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from(const QSqrt2& x) {
    if (!x.is_rational()) throw std::domain_error("irrational value in a rational context: " + x.str());
    return x.rational_part();
  }
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static std::complex<double> to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<QSqrt2> {
  static constexpr bool exact = true;
  static QSqrt2 from(const QSqrt2& x) { return x; }
  static QSqrt2 from_rational(const Rational& q) { return QSqrt2(q); }
  static bool is_zero(const QSqrt2& x) { return x.is_zero(); }
  static double magnitude(const QSqrt2& x) { return std::abs(x.to_double()); }
  static std::complex<double> to_complex(const QSqrt2& x) { return {x.to_double(), 0.0}; }
  static std::string str(const QSqrt2& x) { return x.str(); }
};

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr bool exact = true;
  static ExactComplex from(const QSqrt2& x) { return ExactComplex(x); }
  static ExactComplex from_rational(const Rational& q) { return ExactComplex(QSqrt2(q)); }
  static bool is_zero(const ExactComplex& x) { return x.re.is_zero() && x.im.is_zero(); }
  static double magnitude(const ExactComplex& x) { return std::abs(to_complex(x)); }
  static std::complex<double> to_complex(const ExactComplex& x) { return {x.re.to_double(), x.im.to_double()}; }
  static std::string str(const ExactComplex& x) {
    if (x.im.is_zero()) return x.re.str();
    return "(" + x.re.str() + ")+i(" + x.im.str() + ")";
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from(const QSqrt2& x) { return x.to_double(); }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return std::abs(x); }
  static std::complex<double> to_complex(double x) { return {x, 0.0}; }
  static std::string str(double x) { return std::to_string(x); }
};

inline long double to_long_double(const Rational& q) {
  return std::strtold(q.get_num().get_str().c_str(), nullptr) / std::strtold(q.get_den().get_str().c_str(), nullptr);
}

template <>
struct ScalarTraits<long double> {
  static constexpr bool exact = false;
  static long double from(const QSqrt2& x) {
    return to_long_double(x.rational_part()) + to_long_double(x.sqrt2_part()) * std::sqrt(2.0L);
  }
  static long double from_rational(const Rational& q) { return to_long_double(q); }
  static bool is_zero(long double x) { return x == 0.0L; }
  static double magnitude(long double x) { return static_cast<double>(std::abs(x)); }
  static std::complex<double> to_complex(long double x) { return {static_cast<double>(x), 0.0}; }
  static std::string str(long double x) { return std::to_string(x); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static std::complex<double> from(const QSqrt2& x) { return {x.to_double(), 0.0}; }
  static std::complex<double> from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
  static double magnitude(const std::complex<double>& x) { return std::abs(x); }
  static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
  static std::string str(const std::complex<double>& x) {
    return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
  }
};

template <>
struct ScalarTraits<std::complex<long double>> {
  static constexpr bool exact = false;
  static std::complex<long double> from(const QSqrt2& x) { return {ScalarTraits<long double>::from(x), 0.0L}; }
  static std::complex<long double> from_rational(const Rational& q) { return {to_long_double(q), 0.0L}; }
  static bool is_zero(const std::complex<long double>& x) { return x == std::complex<long double>(0.0L, 0.0L); }
  static double magnitude(const std::complex<long double>& x) { return static_cast<double>(std::abs(x)); }
  static std::complex<double> to_complex(const std::complex<long double>& x) {
    return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
  }
  static std::string str(const std::complex<long double>& x) {
    return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
  }
};

template <class K>
inline bool is_zero(const K& x) {
  return ScalarTraits<K>::is_zero(x);
}

template <class K>
inline K scalar_from(const QSqrt2& x) {
  return ScalarTraits<K>::from(x);
}

template <class K>
inline K scalar_from(const Rational& q) {
  return ScalarTraits<K>::from_rational(q);
}

}  // namespace conelag
