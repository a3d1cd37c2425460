#pragma once

// Exact symmetric functions in r eigenvalue variables.
//
// SymPoly stores coefficients in the monomial symmetric basis m_lambda.
// SphericalTable builds the spherical polynomials psi_m (Jack polynomials
// with parameter alpha = 2/d, normalized to 1 at (1,...,1)), the change of
// basis back from monomials, and the generalized binomial coefficients.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/matrix.hpp"
#include "conelag/partition.hpp"
#include "conelag/polynomial.hpp"
#include "conelag/scalar.hpp"

namespace conelag {

/// Number of distinct permutations of lambda, i.e. m_lambda(1, ..., 1).
inline Rational monomial_at_ones(const Partition& lambda) {
  std::map<int, int> mult;
  for (int p : lambda.parts) ++mult[p];
  mpz_class count;
  mpz_fac_ui(count.get_mpz_t(), lambda.parts.size());
  for (const auto& [part, k] : mult) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    count /= f;
  }
  return Rational(count);
}

class SymPoly {
 public:
  using Table = std::map<Partition, Rational>;

  SymPoly() = default;
  explicit SymPoly(int rank) : rank_(rank) {}

  static SymPoly constant(int rank, const Rational& c) {
    SymPoly p(rank);
    p.add(Partition::zero(rank), c);
    return p;
  }
  static SymPoly monomial(const Partition& lambda, const Rational& c = 1) {
    SymPoly p(lambda.rank());
    p.add(lambda, c);
    return p;
  }

  int rank() const { return rank_; }
  const Table& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const {
    int d = -1;
    for (const auto& [l, c] : coeffs_) d = std::max(d, l.weight());
    return d;
  }

  Rational coefficient(const Partition& lambda) const {
    auto it = coeffs_.find(lambda);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(const Partition& lambda, const Rational& c) {
    if (lambda.rank() != rank_) throw std::invalid_argument("partition rank does not match polynomial rank");
    if (sgn(c) == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(lambda, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) coeffs_.erase(it);
    }
  }

  SymPoly& operator+=(const SymPoly& o) {
    check(o);
    for (const auto& [l, c] : o.coeffs_) add(l, c);
    return *this;
  }
  SymPoly& operator-=(const SymPoly& o) {
    check(o);
    for (const auto& [l, c] : o.coeffs_) add(l, -c);
    return *this;
  }
  SymPoly& operator*=(const Rational& s) {
    if (sgn(s) == 0) coeffs_.clear();
    for (auto& [l, c] : coeffs_) c *= s;
    return *this;
  }
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(SymPoly a, const Rational& s) { return a *= s; }
  friend SymPoly operator*(const Rational& s, SymPoly a) { return a *= s; }
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.rank_ == b.rank_ && a.coeffs_ == b.coeffs_; }

  friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    a.check(b);
    return from_polynomial(a.to_polynomial() * b.to_polynomial(), a.rank_);
  }

  /// p(t * lambda): each homogeneous piece of degree k scaled by t^k.
  SymPoly dilate(const Rational& t) const {
    SymPoly out(rank_);
    for (const auto& [l, c] : coeffs_) out.add(l, c * rational_pow(t, l.weight()));
    return out;
  }

  SymPoly homogeneous_part(int k) const {
    SymPoly out(rank_);
    for (const auto& [l, c] : coeffs_)
      if (l.weight() == k) out.add(l, c);
    return out;
  }

  /// Explicit polynomial in the r eigenvalue variables.
  Polynomial<Rational> to_polynomial() const {
    Polynomial<Rational> out(static_cast<std::size_t>(rank_));
    for (const auto& [l, c] : coeffs_) {
      std::vector<int> e(l.parts.rbegin(), l.parts.rend());
      do {
        Monomial m;
        for (int i = 0; i < rank_; ++i) m.exps[i] = static_cast<std::uint8_t>(e[i]);
        out.add_term(m, c);
      } while (std::next_permutation(e.begin(), e.end()));
    }
    return out;
  }

  /// Inverse of to_polynomial; throws if p is not symmetric.
  static SymPoly from_polynomial(const Polynomial<Rational>& p, int rank) {
    SymPoly out(rank);
    for (const auto& [m, c] : p.terms()) {
      std::vector<int> e(rank);
      for (int i = 0; i < rank; ++i) e[i] = m.exps[i];
      std::sort(e.begin(), e.end(), std::greater<>());
      Monomial sorted;
      for (int i = 0; i < rank; ++i) sorted.exps[i] = static_cast<std::uint8_t>(e[i]);
      if (sorted == m) out.add(Partition(std::move(e)), c);
    }
    if (!(out.to_polynomial() == p)) throw std::invalid_argument("polynomial is not symmetric");
    return out;
  }

  template <class V>
  V evaluate(std::span<const V> lambda) const {
    if (lambda.size() != static_cast<std::size_t>(rank_)) throw std::invalid_argument("eigenvalue count does not match rank");
    V s(0);
    for (const auto& [l, c] : coeffs_) {
      std::vector<int> e(l.parts.rbegin(), l.parts.rend());
      V m(0);
      do {
        V t(1);
        for (int i = 0; i < rank_; ++i)
          for (int k = 0; k < e[i]; ++k) t *= lambda[i];
        m += t;
      } while (std::next_permutation(e.begin(), e.end()));
      s += scalar_from<V>(c) * m;
    }
    return s;
  }

  Rational at_ones() const {
    Rational s = 0;
    for (const auto& [l, c] : coeffs_) s += c * monomial_at_ones(l);
    return s;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [l, c] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*m" + l.str();
    }
    return s;
  }

 private:
  void check(const SymPoly& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("symmetric polynomials of different rank");
  }

  int rank_ = 0;
  Table coeffs_;
};

namespace detail {

// Number of ways to distribute the parts of mu into the ordered boxes of
// lambda so that box j receives exactly lambda_j. This is the coefficient
// of m_lambda in the power-sum product p_mu.
inline long count_distributions(const std::vector<int>& mu, std::size_t idx, std::vector<int>& room) {
  if (idx == mu.size()) {
    for (int r : room)
      if (r != 0) return 0;
    return 1;
  }
  long total = 0;
  for (std::size_t j = 0; j < room.size(); ++j) {
    if (room[j] < mu[idx]) continue;
    room[j] -= mu[idx];
    total += count_distributions(mu, idx + 1, room);
    room[j] += mu[idx];
  }
  return total;
}

inline std::vector<int> nonzero_parts(const Partition& p) {
  std::vector<int> out;
  for (int x : p.parts)
    if (x > 0) out.push_back(x);
  return out;
}

}  // namespace detail

/// Coefficient of m_lambda in p_mu (power sums), for partitions of equal weight.
inline Rational power_sum_monomial_coefficient(const Partition& mu, const Partition& lambda) {
  if (mu.weight() != lambda.weight()) return 0;
  auto room = detail::nonzero_parts(lambda);
  return Rational(detail::count_distributions(detail::nonzero_parts(mu), 0, room));
}

/// Expresses p in the power sums p_1..p_r: variable k-1 of the result is p_k.
inline Polynomial<Rational> to_power_sums(const SymPoly& p) {
  const int r = p.rank();
  Polynomial<Rational> out(static_cast<std::size_t>(r));
  for (int k = 0; k <= std::max(p.degree(), 0); ++k) {
    const SymPoly h = p.homogeneous_part(k);
    if (h.is_zero()) continue;
    const auto lambdas = partitions_of_weight(r, k);
    // Power-sum products p_mu with all parts <= r: conjugates of the lambdas.
    std::vector<std::vector<int>> mus;
    for (const auto& l : lambdas) {
      std::vector<int> conj;
      for (int j = 1; j <= (l.parts.empty() ? 0 : l.parts[0]); ++j)
        conj.push_back(static_cast<int>(std::count_if(l.parts.begin(), l.parts.end(), [j](int x) { return x >= j; })));
      mus.push_back(std::move(conj));
    }
    const std::size_t N = lambdas.size();
    Matrix<Rational> a(N, N);  // a(lambda, mu) = coeff of m_lambda in p_mu
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t row = 0; row < N; ++row) {
        auto room = detail::nonzero_parts(lambdas[row]);
        a(row, c) = Rational(detail::count_distributions(mus[c], 0, room));
      }
    Element<Rational> rhs(N);
    for (std::size_t row = 0; row < N; ++row) rhs[row] = h.coefficient(lambdas[row]);
    const Element<Rational> coef = solve<Rational>(a, rhs);
    for (std::size_t c = 0; c < N; ++c) {
      if (sgn(coef[c]) == 0) continue;
      Monomial m;
      for (int part : mus[c]) ++m.exps[part - 1];
      out.add_term(m, coef[c]);
    }
  }
  return out;
}

namespace detail {

inline Rational z_factor(const Partition& mu, const Rational& alpha) {
  std::map<int, int> mult;
  for (int p : mu.parts)
    if (p > 0) ++mult[p];
  Rational z = 1;
  for (const auto& [part, k] : mult) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    z *= rational_pow(Rational(part), k) * Rational(f) * rational_pow(alpha, k);
  }
  return z;
}

// Jack P-polynomials of weight k (all partitions of k with at most r parts),
// monic in m_kappa, via Gram-Schmidt in the alpha-deformed power-sum inner
// product along the lexicographic order.
inline std::map<Partition, SymPoly> jack_p_of_weight(int r, int k, const Rational& alpha) {
  std::map<Partition, SymPoly> out;
  if (k == 0) {
    out.emplace(Partition::zero(r), SymPoly::constant(r, 1));
    return out;
  }
  const auto full = partitions_of_weight(k, k);
  const std::size_t N = full.size();
  Matrix<Rational> a(N, N);  // a(mu, lambda) = coeff of m_lambda in p_mu
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a(i, j) = power_sum_monomial_coefficient(full[i], full[j]);
  const Matrix<Rational> ainv = inverse(a);
  Matrix<Rational> z(N, N);
  for (std::size_t i = 0; i < N; ++i) z(i, i) = z_factor(full[i], alpha);
  const Matrix<Rational> gram = ainv * z * ainv.transpose();

  for (std::size_t c = 0; c < N; ++c) {
    if (full[c].length() > r) continue;
    Element<Rational> u;
    if (c > 0) {
      Matrix<Rational> g(c, c), rhs(c, 1);
      for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) g(i, j) = gram(i, j);
        rhs(i, 0) = -gram(i, c);
      }
      const Matrix<Rational> sol = solve(g, rhs);
      for (std::size_t i = 0; i < c; ++i) u.push_back(sol(i, 0));
    }
    SymPoly p(r);
    std::vector<int> top = full[c].parts;
    top.resize(r);
    p.add(Partition(top), 1);
    for (std::size_t i = 0; i < c; ++i) {
      if (full[i].length() > r) continue;
      std::vector<int> parts = full[i].parts;
      parts.resize(r);
      p.add(Partition(parts), u[i]);
    }
    out.emplace(Partition(top), std::move(p));
  }
  return out;
}

}  // namespace detail

/// Spherical polynomials, their inverse change of basis and binomial
/// coefficients for one (r, d) up to degree D. Immutable once built.
class SphericalTable {
 public:
  SphericalTable(int rank, Rational degree, int max_degree)
      : rank_(rank), degree_(std::move(degree)), max_degree_(max_degree) {
    degree_.canonicalize();
    if (rank < 1) throw std::invalid_argument("rank must be positive");
    if (max_degree < 0) throw std::invalid_argument("degree bound must be nonnegative");
    if (rank > 1 && sgn(degree_) <= 0) throw std::invalid_argument("degree d must be positive for rank > 1");
    build();
  }
  SphericalTable(const AlgebraDescriptor& desc, int max_degree) : SphericalTable(desc.rank, desc.degree, max_degree) {}

  int rank() const { return rank_; }
  const Rational& degree() const { return degree_; }
  int max_degree() const { return max_degree_; }
  const std::vector<Partition>& partitions() const { return parts_; }

  const SymPoly& psi(const Partition& m) const {
    check_degree(m.weight());
    auto it = psi_.find(m);
    if (it == psi_.end()) throw std::invalid_argument("unknown partition " + m.str());
    return it->second;
  }

  /// Coefficients a_m with p = sum_m a_m psi_m.
  std::map<Partition, Rational> expand(const SymPoly& p) const {
    if (p.rank() != rank_) throw std::invalid_argument("rank mismatch in spherical expansion");
    check_degree(p.degree());
    std::map<Partition, Rational> out;
    for (int k = 0; k <= p.degree(); ++k) {
      const auto& ws = by_weight_[k];
      Element<Rational> b(ws.size());
      bool any = false;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        b[i] = p.coefficient(ws[i]);
        any = any || sgn(b[i]) != 0;
      }
      if (!any) continue;
      const Element<Rational> a = inverse_change_[k].apply(b);
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (sgn(a[i]) != 0) out.emplace(ws[i], a[i]);
    }
    return out;
  }

  /// sum_m a_m psi_m as a SymPoly.
  SymPoly combine(const std::map<Partition, Rational>& a) const {
    SymPoly out(rank_);
    for (const auto& [m, c] : a) out += psi(m) * c;
    return out;
  }

  /// Generalized binomial coefficient: coefficient of psi_n in psi_m(e + x).
  Rational binomial(const Partition& m, const Partition& n) const {
    check_degree(m.weight());
    const auto& row = binom_.at(m);
    auto it = row.find(n);
    return it == row.end() ? Rational(0) : it->second;
  }
  const std::map<Partition, std::map<Partition, Rational>>& binomials() const { return binom_; }

  /// Change-of-basis matrix of weight k: column kappa holds psi_kappa in monomials.
  const Matrix<Rational>& change_of_basis(int k) const {
    check_degree(k);
    return change_[k];
  }

 private:
  void check_degree(int k) const {
    if (k > max_degree_) throw std::out_of_range("degree bound exceeded");
  }

  void build() {
    parts_ = conelag::partitions(rank_, max_degree_);
    const Rational alpha = rank_ == 1 ? Rational(1) : Rational(2) / degree_;
    by_weight_.resize(max_degree_ + 1);
    change_.resize(max_degree_ + 1);
    inverse_change_.resize(max_degree_ + 1);
    for (int k = 0; k <= max_degree_; ++k) {
      by_weight_[k] = partitions_of_weight(rank_, k);
      auto jacks = detail::jack_p_of_weight(rank_, k, alpha);
      for (auto& [kappa, p] : jacks) {
        const Rational v = p.at_ones();
        psi_.emplace(kappa, p * (Rational(1) / v));
      }
      const auto& ws = by_weight_[k];
      Matrix<Rational> m(ws.size(), ws.size());
      for (std::size_t c = 0; c < ws.size(); ++c)
        for (std::size_t r = 0; r < ws.size(); ++r) m(r, c) = psi_.at(ws[c]).coefficient(ws[r]);
      change_[k] = m;
      try {
        inverse_change_[k] = inverse(m);
      } catch (const std::domain_error&) {
        throw std::logic_error("spherical change of basis is singular");
      }
    }
    for (const auto& m : parts_) {
      std::vector<Polynomial<Rational>> shift;
      for (int i = 0; i < rank_; ++i)
        shift.push_back(Polynomial<Rational>::constant(rank_, 1) + Polynomial<Rational>::variable(rank_, i));
      const auto shifted = psi_.at(m).to_polynomial().substitute(shift, rank_);
      binom_.emplace(m, expand(SymPoly::from_polynomial(shifted, rank_)));
    }
  }

  int rank_;
  Rational degree_;
  int max_degree_;
  std::vector<Partition> parts_;
  std::vector<std::vector<Partition>> by_weight_;
  std::map<Partition, SymPoly> psi_;
  std::vector<Matrix<Rational>> change_;
  std::vector<Matrix<Rational>> inverse_change_;
  std::map<Partition, std::map<Partition, Rational>> binom_;
};

/// Shared immutable tables keyed by (r, d, D); built once under a lock.
inline std::shared_ptr<const SphericalTable> spherical_table(const AlgebraDescriptor& desc, int max_degree) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::string, int>, std::shared_ptr<const SphericalTable>> cache;
  const auto key = std::make_tuple(desc.rank, desc.degree.get_str(), max_degree);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const SphericalTable>(desc, max_degree);
  cache.emplace(key, t);
  return t;
}

}  // namespace conelag
