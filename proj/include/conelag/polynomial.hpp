#pragma once

// Sparse multivariate polynomials with exact (or floating) coefficients.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelag/matrix.hpp"
#include "conelag/scalar.hpp"

namespace conelag {

inline constexpr std::size_t kMaxVariables = 16;

/// Exponent vector of a monomial in at most kMaxVariables variables.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exps{};

  int degree() const {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
  }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  static Monomial variable(std::size_t i) {
    Monomial m;
    m.exps[i] = 1;
    return m;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      const int e = a.exps[i] + b.exps[i];
      if (e > 255) throw std::overflow_error("monomial exponent overflow");
      m.exps[i] = static_cast<std::uint8_t>(e);
    }
    return m;
  }
};

template <class K>
class Polynomial {
 public:
  using Terms = std::map<Monomial, K>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {
    if (nvars > kMaxVariables) throw std::invalid_argument("too many polynomial variables");
  }

  static Polynomial constant(std::size_t nvars, const K& c) {
    Polynomial p(nvars);
    p.add_term(Monomial{}, c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    p.add_term(Monomial::variable(i), K(1));
    return p;
  }
  /// sum_i coeffs[i] * x_i
  static Polynomial linear(std::span<const K> coeffs) {
    Polynomial p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::variable(i), coeffs[i]);
    return p;
  }

  std::size_t num_variables() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  K coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(const Monomial& m, const K& c) {
    if (ScalarTraits<K>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<K>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    adopt_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    adopt_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const K& s) {
    if (ScalarTraits<K>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  Polynomial operator-() const {
    Polynomial p(*this);
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const K& s) { return a *= s; }
  friend Polynomial operator*(const K& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.nvars_, b.nvars_));
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(int k) const {
    Polynomial result = constant(nvars_, K(1));
    for (int i = 0; i < k; ++i) result *= *this;
    return result;
  }

  Polynomial partial(std::size_t i) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.exps[i] == 0) continue;
      Monomial dm = m;
      --dm.exps[i];
      out.add_term(dm, c * K(static_cast<long>(m.exps[i])));
    }
    return out;
  }

  /// Euler operator sum_i x_i d/dx_i, i.e. each term scaled by its degree.
  Polynomial euler() const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() > 0) out.terms_.emplace(m, c * K(static_cast<long>(m.degree())));
    return out;
  }

  /// Homogeneous component of the given degree.
  Polynomial homogeneous_part(int deg) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == deg) out.terms_.emplace(m, c);
    return out;
  }

  template <class V>
  V evaluate(std::span<const V> x) const {
    V s(0);
    for (const auto& [m, c] : terms_) {
      V t = to_value<V>(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int e = 0; e < m.exps[i]; ++e) t *= x[i];
      s += t;
    }
    return s;
  }

  /// Applies f to each coefficient (e.g. exact -> double, real -> complex).
  template <class L, class F>
  Polynomial<L> map_coefficients(F&& f) const {
    Polynomial<L> out(nvars_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Substitutes x_i = sum_j subs(i, j) y_j, returning a polynomial in y.
  Polynomial substitute_linear(const Matrix<K>& subs) const {
    const std::size_t new_vars = subs.cols();
    std::vector<Polynomial> images;
    images.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      Polynomial li(new_vars);
      for (std::size_t j = 0; j < new_vars; ++j) li.add_term(Monomial::variable(j), subs(i, j));
      images.push_back(std::move(li));
    }
    return substitute(images, new_vars);
  }

  /// Substitutes x_i = images[i] (polynomials in new_vars variables).
  Polynomial substitute(const std::vector<Polynomial>& images, std::size_t new_vars) const {
    std::vector<std::vector<Polynomial>> powers(nvars_);
    Polynomial out(new_vars);
    for (const auto& [m, c] : terms_) {
      Polynomial t = constant(new_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m.exps[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(new_vars, K(1)));
        while (pw.size() <= m.exps[i]) pw.push_back(pw.back() * images[i]);
        t *= pw[m.exps[i]];
      }
      out += t;
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + ScalarTraits<K>::str(c) + ")";
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.exps[i] > 0) s += "*x" + std::to_string(i) + (m.exps[i] > 1 ? "^" + std::to_string(m.exps[i]) : "");
    }
    return s;
  }

 private:
  template <class V>
  static V to_value(const K& c) {
    if constexpr (std::is_same_v<V, K>) {
      return c;
    } else if constexpr (std::is_same_v<V, double>) {
      return ScalarTraits<K>::to_complex(c).real();
    } else {
      return V(ScalarTraits<K>::to_complex(c));
    }
  }

  void adopt_arity(const Polynomial& o) { nvars_ = std::max(nvars_, o.nvars_); }

  std::size_t nvars_ = 0;
  Terms terms_;
};

}  // namespace conelag
