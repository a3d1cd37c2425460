#pragma once

// Concrete simple Euclidean Jordan algebras.
//
// Three realizations are supported: real symmetric matrices (d = 1),
// complex Hermitian matrices (d = 2) and the spin factor R + R^{n-1}
// (rank 2, d = n - 2). Every algebra is stored through its structure
// constants in a fixed basis that is orthonormal for <x, y> = tr(x y).
// Off-diagonal basis units carry a 1/sqrt(2), so the constants live in
// Q(sqrt 2) and every exact computation stays exact.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelag/matrix.hpp"
#include "conelag/scalar.hpp"

namespace conelag {

enum class AlgebraKind { SymReal, HermComplex, SpinFactor };

inline std::string to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::SymReal:
      return "sym-real";
    case AlgebraKind::HermComplex:
      return "herm-complex";
    case AlgebraKind::SpinFactor:
      return "spin-factor";
  }
  return "?";
}

inline AlgebraKind parse_algebra_kind(const std::string& s) {
  if (s == "sym-real") return AlgebraKind::SymReal;
  if (s == "herm-complex") return AlgebraKind::HermComplex;
  if (s == "spin-factor" || s == "spin") return AlgebraKind::SpinFactor;
  throw std::invalid_argument("unsupported algebra kind: " + s);
}

/// Structural parameters of a simple Euclidean Jordan algebra.
struct AlgebraDescriptor {
  AlgebraKind kind = AlgebraKind::SymReal;
  int rank = 1;
  Rational degree = 0;  // d
  int dim = 1;          // n
  Rational genus = 2;   // p = 2n/r

  /// n / r
  Rational dim_over_rank() const { return frac(dim, rank); }
  std::string label() const {
    return to_string(kind) + "(r=" + std::to_string(rank) + ",n=" + std::to_string(dim) + ",d=" + degree.get_str() +
           ")";
  }
  bool operator==(const AlgebraDescriptor& o) const {
    return kind == o.kind && rank == o.rank && degree == o.degree && dim == o.dim;
  }
};

/// Builds a consistent descriptor. `dim` is required for the spin factor
/// and optional (validated) for matrix kinds.
inline AlgebraDescriptor make_algebra(AlgebraKind kind, int rank, std::optional<int> dim = std::nullopt) {
  AlgebraDescriptor a;
  a.kind = kind;
  if (kind == AlgebraKind::SpinFactor) {
    if (!dim) throw std::invalid_argument("spin factor requires its dimension n");
    if (*dim < 3) throw std::invalid_argument("spin factor requires n >= 3");
    if (rank != 2) throw std::invalid_argument("spin factor has rank 2");
    a.rank = 2;
    a.dim = *dim;
    a.degree = *dim - 2;
  } else {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    a.rank = rank;
    a.degree = rank == 1 ? 0 : (kind == AlgebraKind::SymReal ? 1 : 2);
    const Rational n = rank + a.degree * rank * (rank - 1) / 2;
    a.dim = static_cast<int>(n.get_num().get_si());
    if (dim && *dim != a.dim) throw std::invalid_argument("inconsistent dimension for " + to_string(kind));
  }
  a.genus = frac(2 * a.dim, a.rank);
  return a;
}

/// Newton's identities: elementary symmetric e_1..e_k from power sums p_1..p_k.
template <class K>
std::vector<K> elementary_from_power_sums(std::span<const K> p) {
  std::vector<K> e(p.size() + 1, K(0));
  e[0] = K(1);
  for (std::size_t k = 1; k <= p.size(); ++k) {
    K s(0);
    for (std::size_t i = 1; i <= k; ++i) {
      K t = e[k - i] * p[i - 1];
      if (i % 2 == 0) t = -t;
      s += t;
    }
    e[k] = s / K(static_cast<long>(k));
  }
  return e;
}

struct Spectrum {
  std::vector<double> eigenvalues;  // non-increasing
  double trace = 0.0;
  double det = 0.0;
};

class JordanAlgebra {
 public:
  explicit JordanAlgebra(AlgebraDescriptor desc) : desc_(std::move(desc)) {
    n_ = static_cast<std::size_t>(desc_.dim);
    table_.assign(n_ * n_, {});
    if (desc_.kind == AlgebraKind::SpinFactor)
      build_spin();
    else
      build_matrix_kind();
  }

  const AlgebraDescriptor& descriptor() const { return desc_; }
  std::size_t dim() const { return n_; }
  int rank() const { return desc_.rank; }

  /// Nonzero structure constants of e_i * e_j as (k, c_ij^k).
  const std::vector<std::pair<std::size_t, QSqrt2>>& product_terms(std::size_t i, std::size_t j) const {
    return table_[i * n_ + j];
  }

  template <class K>
  Element<K> basis_vector(std::size_t i) const {
    Element<K> v(n_, K(0));
    v[i] = K(1);
    return v;
  }

  template <class K>
  Element<K> identity() const {
    return convert<K>(identity_);
  }

  /// Jordan frame c_1, ..., c_r.
  const std::vector<Element<QSqrt2>>& frame() const { return frame_; }

  template <class K>
  Element<K> mul(std::span<const K> a, std::span<const K> b) const {
    check(a);
    check(b);
    Element<K> out(n_, K(0));
    for (std::size_t i = 0; i < n_; ++i) {
      if (ScalarTraits<K>::is_zero(a[i])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (ScalarTraits<K>::is_zero(b[j])) continue;
        const K ab = a[i] * b[j];
        for (const auto& [k, c] : table_[i * n_ + j]) out[k] += ab * scalar_from<K>(c);
      }
    }
    return out;
  }

  template <class K>
  Element<K> square(std::span<const K> a) const {
    return mul<K>(a, a);
  }

  template <class K>
  Element<K> power(std::span<const K> a, int k) const {
    Element<K> p = identity<K>();
    for (int i = 0; i < k; ++i) p = mul<K>(a, p);
    return p;
  }

  /// Left multiplication operator L(a) in the orthonormal basis.
  template <class K>
  Matrix<K> left(std::span<const K> a) const {
    check(a);
    Matrix<K> m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (ScalarTraits<K>::is_zero(a[i])) continue;
      for (std::size_t j = 0; j < n_; ++j)
        for (const auto& [k, c] : table_[i * n_ + j]) m(k, j) += a[i] * scalar_from<K>(c);
    }
    return m;
  }

  /// Quadratic representation P(a) = 2 L(a)^2 - L(a^2).
  template <class K>
  Matrix<K> quad(std::span<const K> a) const {
    const Matrix<K> la = left<K>(a);
    const Element<K> a2 = square<K>(a);
    return K(2) * (la * la) - left<K>(a2);
  }

  /// Polarized quadratic representation P(a, b) = L(a)L(b) + L(b)L(a) - L(ab).
  template <class K>
  Matrix<K> quad(std::span<const K> a, std::span<const K> b) const {
    const Matrix<K> la = left<K>(a);
    const Matrix<K> lb = left<K>(b);
    const Element<K> ab = mul<K>(a, b);
    return la * lb + lb * la - left<K>(ab);
  }

  template <class K>
  K inner(std::span<const K> a, std::span<const K> b) const {
    check(a);
    check(b);
    K s(0);
    for (std::size_t i = 0; i < n_; ++i) s += a[i] * b[i];
    return s;
  }

  /// tr(a) = <a, e>.
  template <class K>
  K trace(std::span<const K> a) const {
    check(a);
    K s(0);
    for (std::size_t i = 0; i < n_; ++i)
      if (!identity_[i].is_zero()) s += a[i] * scalar_from<K>(identity_[i]);
    return s;
  }

  /// Power sums tr(a^k) for k = 1..count.
  template <class K>
  std::vector<K> power_sums(std::span<const K> a, int count) const {
    std::vector<K> p;
    Element<K> pw(a.begin(), a.end());
    for (int k = 1; k <= count; ++k) {
      p.push_back(trace<K>(pw));
      if (k < count) pw = mul<K>(a, pw);
    }
    return p;
  }

  /// det(a) from the trace form via Newton's identities (no eigensolver).
  template <class K>
  K det(std::span<const K> a) const {
    const auto p = power_sums<K>(a, desc_.rank);
    return elementary_from_power_sums<K>(p)[desc_.rank];
  }

  /// Principal minor Delta_k(a) = det of the projection of a onto V^(k).
  template <class K>
  K minor(std::span<const K> a, int k) const {
    if (k < 1 || k > desc_.rank) throw std::invalid_argument("minor index out of range");
    if (k == desc_.rank) return det<K>(a);
    const Element<K> y = projection<K>(k).apply(a);
    const auto p = power_sums<K>(y, k);
    return elementary_from_power_sums<K>(p)[k];
  }

  /// Orthogonal projection onto V^(k), i.e. P(c_1 + ... + c_k).
  template <class K>
  Matrix<K> projection(int k) const {
    Element<K> ek(n_, K(0));
    for (int i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n_; ++j) ek[j] += scalar_from<K>(frame_[i][j]);
    return quad<K>(ek);
  }

  /// Generalized power function Delta_s = prod_k Delta_k^{s_k - s_{k+1}}.
  template <class K>
  K power_function(std::span<const K> a, std::span<const int> s) const {
    if (s.size() != static_cast<std::size_t>(desc_.rank)) throw std::invalid_argument("power function index length");
    K result(1);
    for (int k = 1; k <= desc_.rank; ++k) {
      const int e = s[k - 1] - (k < desc_.rank ? s[k] : 0);
      if (e == 0) continue;
      const K m = minor<K>(a, k);
      if (e < 0 && ScalarTraits<K>::is_zero(m)) throw std::domain_error("negative power of a vanishing minor");
      const K base = e > 0 ? m : K(1) / m;
      for (int i = 0; i < std::abs(e); ++i) result *= base;
    }
    return result;
  }

  /// x^{-1}, obtained from P(x) x^{-1} = x.
  template <class K>
  Element<K> inverse(std::span<const K> a) const {
    try {
      return solve<K>(quad<K>(a), a);
    } catch (const std::domain_error&) {
      throw std::domain_error("element is not invertible");
    }
  }

  /// Exact cone membership: L(x) positive definite (leading minors > 0).
  bool in_cone(std::span<const QSqrt2> a) const {
    Matrix<QSqrt2> m = left<QSqrt2>(a);
    for (std::size_t c = 0; c < n_; ++c) {
      if (m(c, c).sign() <= 0) return false;
      for (std::size_t i = c + 1; i < n_; ++i) {
        if (m(i, c).is_zero()) continue;
        const QSqrt2 f = m(i, c) / m(c, c);
        for (std::size_t j = c; j < n_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return true;
  }

  bool in_cone(std::span<const double> a) const {
    const auto sp = spectrum(a);
    return sp.eigenvalues.back() > 0.0;
  }

  /// Deterministic interior point: scale * (y^2 + e/2) for a seeded rational y.
  /// Eigenvalues are >= scale/2.
  Element<QSqrt2> random_cone_point(std::uint64_t seed, const Rational& scale = 1) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-8, 8);
    Element<QSqrt2> y(n_);
    for (auto& c : y) c = QSqrt2(frac(num(rng), 8));
    Element<QSqrt2> x = square<QSqrt2>(y);
    for (std::size_t i = 0; i < n_; ++i) {
      x[i] += identity_[i] * QSqrt2(frac(1, 2));
      x[i] *= QSqrt2(scale);
    }
    return x;
  }

  /// Element with the given eigenvalues along the canonical frame.
  template <class K>
  Element<K> from_eigenvalues(std::span<const K> lambda) const {
    if (lambda.size() != static_cast<std::size_t>(desc_.rank)) throw std::invalid_argument("eigenvalue count");
    Element<K> x(n_, K(0));
    for (int i = 0; i < desc_.rank; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!frame_[i][j].is_zero()) x[j] += lambda[i] * scalar_from<K>(frame_[i][j]);
    return x;
  }

  /// Matrix realization (matrix kinds only): sum_i a_i B_i.
  Eigen::MatrixXcd to_matrix(std::span<const double> a) const {
    if (desc_.kind == AlgebraKind::SpinFactor) throw std::invalid_argument("spin factor has no matrix realization");
    check(a);
    const int r = desc_.rank;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
    for (std::size_t i = 0; i < n_; ++i) m += a[i] * basis_matrices_numeric_[i];
    return m;
  }

  /// Coordinates of a Hermitian / symmetric matrix in the orthonormal basis.
  Element<double> from_matrix(const Eigen::MatrixXcd& m) const {
    if (desc_.kind == AlgebraKind::SpinFactor) throw std::invalid_argument("spin factor has no matrix realization");
    Element<double> a(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] = (m * basis_matrices_numeric_[i]).trace().real();
    return a;
  }

  /// Floating spectral decomposition (eigenvalues only).
  Spectrum spectrum(std::span<const double> a) const {
    check(a);
    Spectrum s;
    if (desc_.kind == AlgebraKind::SpinFactor) {
      const double x0 = a[0] / std::sqrt(2.0);
      double u2 = 0.0;
      for (std::size_t i = 1; i < n_; ++i) u2 += a[i] * a[i] / 2.0;
      const double u = std::sqrt(u2);
      s.eigenvalues = {x0 + u, x0 - u};
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_matrix(a), Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
      std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    }
    s.trace = 0.0;
    s.det = 1.0;
    for (double l : s.eigenvalues) {
      s.trace += l;
      s.det *= l;
    }
    return s;
  }

  /// Exact spin-factor eigenvalues s +- |u| when |u|^2 is a rational square.
  std::optional<std::array<QSqrt2, 2>> exact_spin_eigenvalues(std::span<const QSqrt2> a) const {
    if (desc_.kind != AlgebraKind::SpinFactor) return std::nullopt;
    const QSqrt2 s = a[0] * QSqrt2::inv_sqrt2();
    QSqrt2 u2(0);
    for (std::size_t i = 1; i < n_; ++i) u2 += a[i] * a[i] * QSqrt2(frac(1, 2));
    if (!u2.is_rational() || sgn(u2.rational_part()) < 0) return std::nullopt;
    const Rational& q = u2.rational_part();
    mpz_class num_root, den_root;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_sqrt(num_root.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), q.get_den_mpz_t());
    const QSqrt2 u(Rational(num_root, den_root));
    return std::array<QSqrt2, 2>{s + u, s - u};
  }

  /// Basis matrices of the matrix realization, exact.
  const std::vector<Matrix<ExactComplex>>& basis_matrices() const { return basis_matrices_; }

 private:
  template <class K>
  static Element<K> convert(const Element<QSqrt2>& v) {
    Element<K> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(scalar_from<K>(c));
    return out;
  }

  template <class K>
  void check(std::span<const K> a) const {
    if (a.size() != n_) throw std::invalid_argument("element does not belong to this algebra");
  }

  void build_matrix_kind() {
    const int r = desc_.rank;
    const QSqrt2 h = QSqrt2::inv_sqrt2();
    auto unit = [r](int k, int l, const ExactComplex& v) {
      Matrix<ExactComplex> m(r, r);
      m(k, l) = v;
      return m;
    };
    for (int k = 0; k < r; ++k) basis_matrices_.push_back(unit(k, k, ExactComplex(1)));
    for (int k = 0; k < r; ++k)
      for (int l = k + 1; l < r; ++l) {
        basis_matrices_.push_back(unit(k, l, ExactComplex(h)) + unit(l, k, ExactComplex(h)));
        if (desc_.kind == AlgebraKind::HermComplex) {
          const ExactComplex ih(QSqrt2(0), h);
          basis_matrices_.push_back(unit(k, l, ih) + unit(l, k, -ih));
        }
      }
    if (basis_matrices_.size() != n_) throw std::logic_error("basis size mismatch");
    // c_ij^k = Re tr((B_i B_j + B_j B_i)/2 B_k)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Matrix<ExactComplex> prod = basis_matrices_[i] * basis_matrices_[j] + basis_matrices_[j] * basis_matrices_[i];
        for (std::size_t k = 0; k < n_; ++k) {
          const ExactComplex t = trace_of_product(prod, basis_matrices_[k]);
          if (!t.im.is_zero()) throw std::logic_error("non-real structure constant");
          QSqrt2 c = t.re * QSqrt2(frac(1, 2));
          if (!c.is_zero()) table_[i * n_ + j].emplace_back(k, std::move(c));
        }
      }
    identity_.assign(n_, QSqrt2(0));
    for (int k = 0; k < r; ++k) identity_[k] = QSqrt2(1);
    for (int k = 0; k < r; ++k) {
      Element<QSqrt2> c(n_, QSqrt2(0));
      c[k] = QSqrt2(1);
      frame_.push_back(std::move(c));
    }
    for (const auto& b : basis_matrices_) {
      Eigen::MatrixXcd m(r, r);
      for (int a = 0; a < r; ++a)
        for (int c = 0; c < r; ++c) m(a, c) = ScalarTraits<ExactComplex>::to_complex(b(a, c));
      basis_matrices_numeric_.push_back(std::move(m));
    }
  }

  void build_spin() {
    // f_0 = (1/sqrt2, 0), f_k = (0, w_k/sqrt2);
    // f0 f0 = f0/sqrt2, f0 fk = fk/sqrt2, fk fl = delta_kl f0/sqrt2.
    const QSqrt2 h = QSqrt2::inv_sqrt2();
    table_[0].emplace_back(0, h);
    for (std::size_t k = 1; k < n_; ++k) {
      table_[0 * n_ + k].emplace_back(k, h);
      table_[k * n_ + 0].emplace_back(k, h);
      table_[k * n_ + k].emplace_back(0, h);
    }
    identity_.assign(n_, QSqrt2(0));
    identity_[0] = QSqrt2::sqrt2();
    Element<QSqrt2> c1(n_, QSqrt2(0)), c2(n_, QSqrt2(0));
    c1[0] = h;
    c1[1] = h;
    c2[0] = h;
    c2[1] = -h;
    frame_ = {c1, c2};
  }

  AlgebraDescriptor desc_;
  std::size_t n_ = 0;
  std::vector<std::vector<std::pair<std::size_t, QSqrt2>>> table_;
  Element<QSqrt2> identity_;
  std::vector<Element<QSqrt2>> frame_;
  std::vector<Matrix<ExactComplex>> basis_matrices_;
  std::vector<Eigen::MatrixXcd> basis_matrices_numeric_;
};

inline Element<double> to_double(std::span<const QSqrt2> v) {
  Element<double> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c.to_double());
  return out;
}

}  // namespace conelag
