#pragma once

// Exact differential operators on functions exp(s tr x) p(x), p a polynomial
// in the ambient orthonormal coordinates, and the Laguerre recursion checks.

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/laguerre.hpp"
#include "conelag/liealg.hpp"
#include "conelag/matrix.hpp"
#include "conelag/partition.hpp"
#include "conelag/polynomial.hpp"
#include "conelag/scalar.hpp"
#include "conelag/symfun.hpp"

namespace conelag {

using AmbientPoly = Polynomial<QSqrt2>;

struct ExpPolynomial {
  Rational s;
  AmbientPoly poly;

  bool is_zero() const { return poly.is_zero(); }

  ExpPolynomial& operator+=(const ExpPolynomial& o) {
    if (poly.is_zero()) s = o.s;
    if (!o.poly.is_zero() && !poly.is_zero() && o.s != s) throw std::domain_error("exponent mismatch");
    poly += o.poly;
    return *this;
  }
  ExpPolynomial& operator-=(const ExpPolynomial& o) {
    if (poly.is_zero()) s = o.s;
    if (!o.poly.is_zero() && !poly.is_zero() && o.s != s) throw std::domain_error("exponent mismatch");
    poly -= o.poly;
    return *this;
  }
  ExpPolynomial& operator*=(const QSqrt2& c) {
    poly *= c;
    return *this;
  }
  friend ExpPolynomial operator+(ExpPolynomial a, const ExpPolynomial& b) { return a += b; }
  friend ExpPolynomial operator-(ExpPolynomial a, const ExpPolynomial& b) { return a -= b; }
  friend ExpPolynomial operator*(ExpPolynomial a, const QSqrt2& c) { return a *= c; }
  friend ExpPolynomial operator*(const QSqrt2& c, ExpPolynomial a) { return a *= c; }
  friend bool operator==(const ExpPolynomial& a, const ExpPolynomial& b) {
    return a.poly == b.poly && (a.poly.is_zero() || a.s == b.s);
  }
};

enum class Sl2Element { X, Y, Z };

inline std::string to_string(Sl2Element w) {
  switch (w) {
    case Sl2Element::X:
      return "x";
    case Sl2Element::Y:
      return "y";
    case Sl2Element::Z:
      return "z";
  }
  return "?";
}

/// Operators of the lambda_nu action on one algebra.
class DiffEngine {
 public:
  explicit DiffEngine(const JordanAlgebra& alg) : alg_(alg), n_(alg.dim()) {
    if (n_ > kMaxVariables) throw std::invalid_argument("too many ambient coordinates");
    trace_coeffs_ = alg.identity<QSqrt2>();
    for (std::size_t i = 0; i < n_; ++i) coords_.push_back(AmbientPoly::variable(n_, i));
    trace_ = AmbientPoly::linear(std::span<const QSqrt2>(trace_coeffs_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const auto ei = alg.basis_vector<QSqrt2>(i);
        const auto ej = alg.basis_vector<QSqrt2>(j);
        polar_.push_back(alg.quad<QSqrt2>(ei, ej));
      }
    // tr(x^k) for k = 1..r as ambient polynomials.
    std::vector<AmbientPoly> pw = coords_;
    power_traces_.push_back(trace_of(pw));
    for (int k = 2; k <= alg.rank(); ++k) {
      pw = jordan_mul(coords_, pw);
      power_traces_.push_back(trace_of(pw));
    }
  }

  const JordanAlgebra& algebra() const { return alg_; }
  std::size_t dim() const { return n_; }
  const AmbientPoly& trace_poly() const { return trace_; }
  const std::vector<AmbientPoly>& coordinates() const { return coords_; }

  /// exp(s tr x) f(x) with f(lambda) expressed through p_k = tr(x^k).
  ExpPolynomial lift(const SymPoly& f, const Rational& s = 0) const {
    if (f.rank() != alg_.rank()) throw std::invalid_argument("rank mismatch in lift");
    const Polynomial<Rational> ps = to_power_sums(f);
    const AmbientPoly q = ps.map_coefficients<QSqrt2>([](const Rational& c) { return QSqrt2(c); });
    return {s, q.substitute(power_traces_, n_)};
  }

  ExpPolynomial lift(const LaguerreFunctionSym& f) const { return lift(f.poly, f.s); }

  ExpPolynomial partial(const ExpPolynomial& f, std::size_t i) const {
    AmbientPoly out = f.poly.partial(i);
    if (sgn(f.s) != 0 && !trace_coeffs_[i].is_zero()) out += f.poly * (QSqrt2(f.s) * trace_coeffs_[i]);
    return {f.s, std::move(out)};
  }

  /// D_x f = sum_i x_i d_i f.
  ExpPolynomial euler_D(const ExpPolynomial& f) const {
    AmbientPoly out = f.poly.euler();
    if (sgn(f.s) != 0) out += (trace_ * f.poly) * QSqrt2(f.s);
    return {f.s, std::move(out)};
  }

  /// D_{A x} f = sum_i (A x)_i d_i f.
  ExpPolynomial directional(const ExpPolynomial& f, const Matrix<QSqrt2>& a) const {
    ExpPolynomial out{f.s, AmbientPoly(n_)};
    for (std::size_t i = 0; i < n_; ++i) {
      AmbientPoly li(n_);
      for (std::size_t j = 0; j < n_; ++j)
        if (!a(i, j).is_zero()) li.add_term(Monomial::variable(j), a(i, j));
      if (li.is_zero()) continue;
      out.poly += li * partial(f, i).poly;
    }
    return out;
  }

  ExpPolynomial multiply(const ExpPolynomial& f, const AmbientPoly& p) const { return {f.s, f.poly * p}; }

  ExpPolynomial trace_multiply(const ExpPolynomial& f) const { return multiply(f, trace_); }

  /// B_{nu,w} f = sum_{ij} d_i d_j f <x, P(e_i,e_j) w> + nu sum_i d_i f <e_i, w>.
  ExpPolynomial bessel(const Rational& nu, std::span<const QSqrt2> w, const ExpPolynomial& f) const {
    ExpPolynomial out{f.s, AmbientPoly(n_)};
    std::vector<ExpPolynomial> first;
    for (std::size_t i = 0; i < n_; ++i) first.push_back(partial(f, i));
    for (std::size_t i = 0; i < n_; ++i) {
      if (!w[i].is_zero()) out.poly += first[i].poly * (QSqrt2(nu) * w[i]);
      for (std::size_t j = i; j < n_; ++j) {
        const Element<QSqrt2> pw = polar_[i * n_ + j].apply(w);
        AmbientPoly lin = AmbientPoly::linear(std::span<const QSqrt2>(pw));
        if (lin.is_zero()) continue;
        if (j != i) lin *= QSqrt2(2);
        out.poly += lin * partial(first[i], j).poly;
      }
    }
    return out;
  }

  /// B_{nu,w} computed with respect to another orthonormal basis f_a = sum_i q(i, a) e_i.
  ExpPolynomial bessel_in_basis(const Rational& nu, std::span<const QSqrt2> w, const ExpPolynomial& f,
                                const Matrix<QSqrt2>& q) const {
    std::vector<Element<QSqrt2>> frame(n_, Element<QSqrt2>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t i = 0; i < n_; ++i) frame[a][i] = q(i, a);
    auto along = [&](const ExpPolynomial& g, std::size_t a) {
      ExpPolynomial out{g.s, AmbientPoly(n_)};
      for (std::size_t i = 0; i < n_; ++i)
        if (!frame[a][i].is_zero()) out.poly += partial(g, i).poly * frame[a][i];
      return out;
    };
    ExpPolynomial out{f.s, AmbientPoly(n_)};
    for (std::size_t a = 0; a < n_; ++a) {
      const ExpPolynomial fa = along(f, a);
      out.poly += fa.poly * (QSqrt2(nu) * alg_.inner<QSqrt2>(frame[a], w));
      for (std::size_t b = 0; b < n_; ++b) {
        const Element<QSqrt2> pw = alg_.quad<QSqrt2>(frame[a], frame[b]).apply(w);
        const AmbientPoly lin = AmbientPoly::linear(std::span<const QSqrt2>(pw));
        if (lin.is_zero()) continue;
        out.poly += lin * along(fa, b).poly;
      }
    }
    return out;
  }

  /// lambda_nu(X(u, T, v)) f = <u, x> f + (nu/p) Tr(T) f + D_{T^t x} f - B_{nu,v} f.
  ExpPolynomial lambda_action(const Rational& nu, const LieVector<QSqrt2>& x, const ExpPolynomial& f) const {
    const Rational& p = alg_.descriptor().genus;
    ExpPolynomial out = multiply(f, AmbientPoly::linear(std::span<const QSqrt2>(x.u)));
    QSqrt2 tr(0);
    for (std::size_t i = 0; i < n_; ++i) tr += x.T(i, i);
    out.poly += f.poly * (QSqrt2(nu / p) * tr);
    out += directional(f, x.T.transpose());
    out -= bessel(nu, x.v, f);
    return out;
  }

  /// lambda(x) = 1/2 (tr + r nu + 2 D_x + B), lambda(y) = 1/2 (-tr + r nu + 2 D_x - B),
  /// lambda(z) = -tr + B, with B = B_{nu,e}.
  ExpPolynomial op_xyz(const Rational& nu, Sl2Element which, const ExpPolynomial& f) const {
    const QSqrt2 rnu(Rational(alg_.rank()) * nu);
    const ExpPolynomial t = trace_multiply(f);
    const ExpPolynomial b = bessel(nu, trace_coeffs_, f);
    const QSqrt2 half(frac(1, 2));
    switch (which) {
      case Sl2Element::X:
        return (t + f * rnu + euler_D(f) * QSqrt2(2) + b) * half;
      case Sl2Element::Y:
        return (f * rnu + euler_D(f) * QSqrt2(2) + b * QSqrt2(-1) - t) * half;
      case Sl2Element::Z:
        return b - t;
    }
    throw std::logic_error("unknown sl2 element");
  }

  /// exp(s tr x) p(x) at a floating point.
  double evaluate(const ExpPolynomial& f, std::span<const double> x) const {
    return std::exp(f.s.get_d() * trace_.evaluate<double>(x)) * f.poly.evaluate<double>(x);
  }

  const Matrix<QSqrt2>& polarized(std::size_t i, std::size_t j) const { return polar_[i * n_ + j]; }

 private:
  std::vector<AmbientPoly> jordan_mul(const std::vector<AmbientPoly>& a, const std::vector<AmbientPoly>& b) const {
    std::vector<AmbientPoly> out(n_, AmbientPoly(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (b[j].is_zero()) continue;
        const auto& terms = alg_.product_terms(i, j);
        if (terms.empty()) continue;
        const AmbientPoly ab = a[i] * b[j];
        for (const auto& [k, c] : terms) out[k] += ab * c;
      }
    }
    return out;
  }

  AmbientPoly trace_of(const std::vector<AmbientPoly>& y) const {
    AmbientPoly out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (!trace_coeffs_[i].is_zero()) out += y[i] * trace_coeffs_[i];
    return out;
  }

  const JordanAlgebra& alg_;
  std::size_t n_;
  Element<QSqrt2> trace_coeffs_;
  std::vector<AmbientPoly> coords_;
  AmbientPoly trace_;
  std::vector<Matrix<QSqrt2>> polar_;
  std::vector<AmbientPoly> power_traces_;
};

/// c_m(j) = prod_{k != j} (m_k - m_j - (d/2)(k - j + 1)) / (m_k - m_j - (d/2)(k - j)), j 1-based.
/// Empty optional when a denominator vanishes.
inline std::optional<Rational> c_constant(const AlgebraDescriptor& desc, const Partition& m, int j) {
  if (j < 1 || j > desc.rank) throw std::out_of_range("c_m(j): index out of range");
  const Rational half_d = desc.degree / 2;
  Rational out = 1;
  for (int k = 1; k <= desc.rank; ++k) {
    if (k == j) continue;
    const Rational diff = Rational(m[k - 1] - m[j - 1]);
    Rational num = diff - half_d * (k - j + 1);
    Rational den = diff - half_d * (k - j);
    num.canonicalize();
    den.canonicalize();
    if (sgn(den) == 0) return std::nullopt;
    out *= num / den;
  }
  out.canonicalize();
  return out;
}

/// The constant multiplying l_{m - gamma_j} in the lowering relation:
/// binom(m, m - gamma_j) (m_j - 1 + nu - (j-1) d/2).
inline Rational lowering_constant(const SphericalTable& table, const AlgebraDescriptor& desc, const Rational& nu,
                                  const Partition& m, int j) {
  Partition lower;
  if (!m.shifted(j - 1, -1, lower)) return 0;
  Rational out = table.binomial(m, lower) * (Rational(m[j - 1] - 1) + nu - Rational(j - 1) * desc.degree / 2);
  out.canonicalize();
  return out;
}

struct OperatorReport {
  std::string relation;  // "1", "2", "3", "euler" or an operator name
  Partition m;
  Rational nu;
  ExpPolynomial residual;
  bool pass = false;
  bool degenerate = false;
  std::vector<std::pair<Partition, Rational>> constants;  // neighbour partition -> constant used
};

/// Lifted Laguerre functions l_m^nu for one (algebra, nu) with a cache.
class LaguerreFamily {
 public:
  LaguerreFamily(const DiffEngine& engine, std::shared_ptr<const SphericalTable> table, Rational nu)
      : engine_(engine), table_(std::move(table)), nu_(std::move(nu)) {
    require_admissible(engine_.algebra().descriptor(), nu_);
  }

  const Rational& nu() const { return nu_; }
  const SphericalTable& table() const { return *table_; }
  const DiffEngine& engine() const { return engine_; }

  const ExpPolynomial& get(const Partition& m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    const auto& desc = engine_.algebra().descriptor();
    ExpPolynomial f = engine_.lift(laguerre_fn_sym(*table_, desc, nu_, m));
    return cache_.emplace(m, std::move(f)).first->second;
  }

 private:
  static void require_admissible(const AlgebraDescriptor& desc, const Rational& nu) {
    if (!admissible(desc, nu)) throw std::domain_error("nu = " + nu.get_str() + " is not admissible");
  }

  const DiffEngine& engine_;
  std::shared_ptr<const SphericalTable> table_;
  Rational nu_;
  std::map<Partition, ExpPolynomial> cache_;
};

/// Residuals of the three recursion relations and the Euler relation.
class RecursionChecker {
 public:
  explicit RecursionChecker(LaguerreFamily& family) : fam_(family) {}

  /// Added to every c_m(j) in relation 3; used to confirm the check is sensitive.
  void set_c_perturbation(Rational delta) { perturb_ = std::move(delta); }

  /// (1): (-tr + B) l_m + (r nu + 2|m|) l_m.
  OperatorReport relation1(const Partition& m) {
    const auto& eng = fam_.engine();
    const auto& f = fam_.get(m);
    OperatorReport rep = start("1", m);
    const Rational ev = Rational(rank()) * fam_.nu() + 2 * m.weight();
    rep.residual = eng.op_xyz(fam_.nu(), Sl2Element::Z, f) + f * QSqrt2(ev);
    return finish(std::move(rep));
  }

  /// (2): (tr + r nu + 2 D_x + B) l_m + 2 sum_j binom(m, m - g_j)(m_j - 1 + nu - (j-1)d/2) l_{m - g_j}.
  OperatorReport relation2(const Partition& m) {
    const auto& eng = fam_.engine();
    OperatorReport rep = start("2", m);
    rep.residual = eng.op_xyz(fam_.nu(), Sl2Element::X, fam_.get(m)) * QSqrt2(2);
    rep.residual += lowering_sum(m, rep.constants) * QSqrt2(2);
    return finish(std::move(rep));
  }

  /// (3): (tr - r nu - 2 D_x + B) l_m + 2 sum_j c_m(j) l_{m + g_j}.
  OperatorReport relation3(const Partition& m) {
    const auto& eng = fam_.engine();
    OperatorReport rep = start("3", m);
    rep.residual = eng.op_xyz(fam_.nu(), Sl2Element::Y, fam_.get(m)) * QSqrt2(-2);
    const auto raise = raising_sum(m, rep.constants);
    if (!raise) {
      rep.degenerate = true;
      return rep;
    }
    rep.residual += *raise * QSqrt2(2);
    return finish(std::move(rep));
  }

  OperatorReport relation(int id, const Partition& m) {
    switch (id) {
      case 1:
        return relation1(m);
      case 2:
        return relation2(m);
      case 3:
        return relation3(m);
    }
    throw std::invalid_argument("unknown relation " + std::to_string(id));
  }

  /// Euler relation 2 lambda(Z0) l_m + sum_j lower_j l_{m-g_j} - sum_j c_m(j) l_{m+g_j} = 0, Z0 = X(0, I, 0),
  /// together with the check that half the difference of the operator parts of (2) and (3) is 2 lambda(Z0).
  OperatorReport euler(const Partition& m) {
    const auto& eng = fam_.engine();
    const std::size_t n = eng.dim();
    const auto& f = fam_.get(m);
    OperatorReport rep = start("euler", m);
    auto z0 = LieVector<QSqrt2>::zero(n);
    z0.T = Matrix<QSqrt2>::identity(n);
    const ExpPolynomial lz0 = eng.lambda_action(fam_.nu(), z0, f) * QSqrt2(2);

    const ExpPolynomial op2 = eng.op_xyz(fam_.nu(), Sl2Element::X, f) * QSqrt2(2);
    const ExpPolynomial op3 = eng.op_xyz(fam_.nu(), Sl2Element::Y, f) * QSqrt2(-2);
    const bool halves_match = (op2 - op3) * QSqrt2(frac(1, 2)) == lz0;

    std::vector<std::pair<Partition, Rational>> lower_c, raise_c;
    const ExpPolynomial lower = lowering_sum(m, lower_c);
    const auto raise = raising_sum(m, raise_c);
    rep.constants = lower_c;
    rep.constants.insert(rep.constants.end(), raise_c.begin(), raise_c.end());
    if (!raise) {
      rep.degenerate = true;
      return rep;
    }
    rep.residual = lz0 + lower - *raise;
    rep = finish(std::move(rep));
    rep.pass = rep.pass && halves_match;
    return rep;
  }

 private:
  int rank() const { return fam_.engine().algebra().rank(); }

  OperatorReport start(std::string id, const Partition& m) const {
    OperatorReport rep;
    rep.relation = std::move(id);
    rep.m = m;
    rep.nu = fam_.nu();
    return rep;
  }

  static OperatorReport finish(OperatorReport rep) {
    rep.pass = rep.residual.is_zero();
    return rep;
  }

  ExpPolynomial lowering_sum(const Partition& m, std::vector<std::pair<Partition, Rational>>& used) {
    const auto& desc = fam_.engine().algebra().descriptor();
    ExpPolynomial sum{Rational(-1), AmbientPoly(fam_.engine().dim())};
    for (int j = 1; j <= desc.rank; ++j) {
      Partition lower;
      if (!m.shifted(j - 1, -1, lower)) continue;
      const Rational c = lowering_constant(fam_.table(), desc, fam_.nu(), m, j);
      used.emplace_back(lower, c);
      sum += fam_.get(lower) * QSqrt2(c);
    }
    return sum;
  }

  std::optional<ExpPolynomial> raising_sum(const Partition& m, std::vector<std::pair<Partition, Rational>>& used) {
    const auto& desc = fam_.engine().algebra().descriptor();
    ExpPolynomial sum{Rational(-1), AmbientPoly(fam_.engine().dim())};
    for (int j = 1; j <= desc.rank; ++j) {
      const auto c = c_constant(desc, m, j);
      if (!c) return std::nullopt;
      Partition upper;
      if (!m.shifted(j - 1, 1, upper)) {
        if (sgn(*c) != 0) throw std::logic_error("c_m(j) nonzero outside the partition lattice");
        continue;
      }
      const Rational cj = *c + perturb_;
      used.emplace_back(upper, cj);
      sum += fam_.get(upper) * QSqrt2(cj);
    }
    return sum;
  }

  LaguerreFamily& fam_;
  Rational perturb_{0};
};

/// Coefficients of f in the span of the given functions (all with the same exponent), if it lies there.
inline std::optional<std::vector<QSqrt2>> expand_in(const ExpPolynomial& f, const std::vector<ExpPolynomial>& basis) {
  std::map<Monomial, std::size_t> index;
  auto collect = [&](const ExpPolynomial& g) {
    for (const auto& [mono, c] : g.poly.terms()) index.emplace(mono, 0);
  };
  collect(f);
  for (const auto& b : basis) {
    if (!b.is_zero() && !f.is_zero() && b.s != f.s) return std::nullopt;
    collect(b);
  }
  std::size_t k = 0;
  for (auto& [mono, i] : index) i = k++;
  auto flatten = [&](const ExpPolynomial& g) {
    std::vector<QSqrt2> v(index.size(), QSqrt2(0));
    for (const auto& [mono, c] : g.poly.terms()) v[index.at(mono)] = c;
    return v;
  };
  std::vector<std::vector<QSqrt2>> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  if (index.empty()) return std::vector<QSqrt2>(basis.size(), QSqrt2(0));
  return express_in_span(cols, flatten(f));
}

}  // namespace conelag
