#pragma once

// Exact inner products on L^2(Omega, Delta^{nu - n/r} dx)^L through the
// Laplace functional F[psi_k] = (nu)_k Gamma_Omega(nu), norm formulas,
// extraction of d_m, and floating quadrature oracles in eigenvalue
// coordinates.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/laguerre.hpp"
#include "conelag/partition.hpp"
#include "conelag/scalar.hpp"
#include "conelag/symfun.hpp"

namespace conelag {

/// q * 2^{log2} * Gamma_Omega(nu), with 0 <= log2 < 1 after normalization.
class GammaUnitValue {
 public:
  GammaUnitValue() = default;
  explicit GammaUnitValue(Rational q, Rational log2 = 0) : q_(std::move(q)), log2_(std::move(log2)) { normalize(); }

  const Rational& coefficient() const { return q_; }
  const Rational& log2_scale() const { return log2_; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  /// Numeric value given log Gamma_Omega(nu).
  double to_double(double log_gamma) const { return q_.get_d() * std::exp2(log2_.get_d()) * std::exp(log_gamma); }

  GammaUnitValue& operator*=(const Rational& s) {
    q_ *= s;
    normalize();
    return *this;
  }
  friend GammaUnitValue operator*(GammaUnitValue a, const Rational& s) { return a *= s; }
  friend GammaUnitValue operator+(const GammaUnitValue& a, const GammaUnitValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.log2_ != b.log2_) throw std::domain_error("adding values with different powers of two");
    return GammaUnitValue(a.q_ + b.q_, a.log2_);
  }
  /// a / b as an exact number, when the powers of two cancel.
  friend Rational operator/(const GammaUnitValue& a, const GammaUnitValue& b) {
    if (a.log2_ != b.log2_) throw std::domain_error("ratio is not rational");
    return a.q_ / b.q_;
  }
  friend bool operator==(const GammaUnitValue& a, const GammaUnitValue& b) {
    return a.q_ == b.q_ && (a.is_zero() || a.log2_ == b.log2_);
  }

  std::string str() const {
    std::string s = q_.get_str();
    if (sgn(log2_) != 0 && !is_zero()) s += "*2^(" + log2_.get_str() + ")";
    return s + "*Gamma_Omega(nu)";
  }

 private:
  void normalize() {
    q_.canonicalize();
    log2_.canonicalize();
    if (is_zero()) {
      log2_ = 0;
      return;
    }
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), log2_.get_num_mpz_t(), log2_.get_den_mpz_t());
    if (fl != 0) {
      const long k = fl.get_si();
      q_ *= rational_pow(Rational(2), k);
      log2_ -= k;
      log2_.canonicalize();
    }
  }

  Rational q_{0};
  Rational log2_{0};
};

inline void require_admissible(const AlgebraDescriptor& desc, const Rational& nu) {
  if (!admissible(desc, nu))
    throw std::domain_error("nu = " + nu.get_str() + " is not above the convergence threshold " +
                            admissibility_threshold(desc).get_str());
}

/// F[p] = int_Omega exp(-tr x) p(x) Delta^{nu - n/r}(x) dx = sum_k a_k (nu)_k Gamma_Omega(nu).
inline GammaUnitValue laplace_functional(const SphericalTable& table, const AlgebraDescriptor& desc, const Rational& nu,
                                         const SymPoly& p) {
  require_admissible(desc, nu);
  Rational q = 0;
  for (const auto& [k, a] : table.expand(p)) q += a * pochhammer(desc, nu, k);
  return GammaUnitValue(q);
}

/// <l_m, l_n> = 2^{-r nu} F[L_m L_n].
inline GammaUnitValue inner_product_exact(const SphericalTable& table, const AlgebraDescriptor& desc, const Rational& nu,
                                          const Partition& m, const Partition& n) {
  if (m.weight() + n.weight() > table.max_degree()) throw std::out_of_range("degree bound exceeded");
  const SymPoly prod = laguerre_poly(table, desc, nu, m) * laguerre_poly(table, desc, nu, n);
  const GammaUnitValue f = laplace_functional(table, desc, nu, prod);
  return GammaUnitValue(f.coefficient(), -Rational(desc.rank) * nu);
}

/// 2^{-r nu} (1/d_m) (n/r)_m Gamma_Omega(nu + m).
inline GammaUnitValue norm_formula(const AlgebraDescriptor& desc, const Rational& nu, const Partition& m,
                                   const Rational& dm) {
  const Rational q = pochhammer(desc, desc.dim_over_rank(), m) * pochhammer(desc, nu, m) / dm;
  return GammaUnitValue(q, -Rational(desc.rank) * nu);
}

struct DmExtraction {
  Rational value;
  std::vector<std::pair<Rational, Rational>> per_nu;  // (nu, d_m(nu))
  bool consistent = true;
};

/// d_m recovered from the exact norm at each nu; consistent iff nu-independent.
inline DmExtraction dm_extract(const SphericalTable& table, const AlgebraDescriptor& desc, const Partition& m,
                               std::span<const Rational> nus) {
  if (nus.size() < 2) throw std::invalid_argument("d_m extraction needs at least two values of nu");
  DmExtraction out;
  for (const auto& nu : nus) {
    const GammaUnitValue norm = inner_product_exact(table, desc, nu, m, m);
    const GammaUnitValue unit = norm_formula(desc, nu, m, 1);
    const Rational dm = unit / norm;
    out.per_nu.emplace_back(nu, dm);
    if (out.per_nu.size() == 1)
      out.value = dm;
    else if (dm != out.value)
      out.consistent = false;
  }
  return out;
}

/// Integrand on eigenvalue tuples (the L-invariant function restricted to the frame).
using SpectralIntegrand = std::function<double(std::span<const double>)>;

/// Floating integral of L-invariant functions against Delta^{nu - n/r} dx,
/// done in eigenvalue coordinates with weight c * |Vandermonde|^d * prod lambda^{nu - n/r}.
/// The constant c is calibrated once so that the integral of exp(-tr) at
/// nu_cal = n/r + 1 equals Gamma_Omega(nu_cal).
class QuadratureOracle {
 public:
  QuadratureOracle(const AlgebraDescriptor& desc, std::uint64_t seed = 1, std::size_t budget = 400000)
      : desc_(desc), seed_(seed), budget_(budget) {
    if (desc.rank > 3) throw std::invalid_argument("quadrature oracle supports rank <= 3");
    const double nu_cal = desc.dim_over_rank().get_d() + 1.0;
    const double raw = raw_integral(nu_cal, [](std::span<const double> l) {
      double t = 0.0;
      for (double x : l) t += x;
      return std::exp(-t);
    });
    log_c_ = gamma_omega_log(desc, nu_cal) - std::log(raw);
  }

  double integrate(double nu, const SpectralIntegrand& f) const {
    if (!(nu > admissibility_threshold(desc_).get_d())) throw std::domain_error("nu not admissible");
    return std::exp(log_c_) * raw_integral(nu, f);
  }

  double calibration_log() const { return log_c_; }
  bool deterministic() const { return desc_.rank <= 2; }

 private:
  double raw_integral(double nu, const SpectralIntegrand& f) const {
    const double a = nu - desc_.dim_over_rank().get_d();
    const double d = desc_.degree.get_d();
    if (desc_.rank == 1) {
      boost::math::quadrature::exp_sinh<double> es;
      return es.integrate([&](double x) {
        const double l[1] = {x};
        return finite_or_zero(f(l) * std::pow(x, a));
      });
    }
    if (desc_.rank == 2) {
      // lambda_1 = u in (0, inf), lambda_2 = u t with t in (0, 1).
      boost::math::quadrature::exp_sinh<double> outer;
      boost::math::quadrature::tanh_sinh<double> inner;
      auto g = [&](double u) {
        if (u == 0.0 || !std::isfinite(u)) return 0.0;
        return finite_or_zero(inner.integrate(
            [&](double t) {
              const double l[2] = {u, u * t};
              return finite_or_zero(f(l) * std::pow(u - u * t, d) * std::pow(u * u * t, a) * u);
            },
            0.0, 1.0));
      };
      return outer.integrate(g);
    }
    // rank 3: seeded Monte Carlo with Gamma-distributed eigenvalues.
    std::mt19937_64 rng(seed_);
    const double shape = a + 1.0 + d;
    std::gamma_distribution<double> gd(shape, 1.0);
    const double log_norm = std::lgamma(shape);
    double sum = 0.0;
    for (std::size_t i = 0; i < budget_; ++i) {
      double l[3];
      double log_density = 0.0;
      for (double& x : l) {
        x = gd(rng);
        log_density += (shape - 1.0) * std::log(x) - x - log_norm;
      }
      double w = std::pow(std::abs((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])), d) * std::pow(l[0] * l[1] * l[2], a);
      sum += f(l) * w * std::exp(-log_density);
    }
    return sum / static_cast<double>(budget_) / 6.0;
  }

  // The integrands decay like exp(-tr); far in the tail 0 * inf may appear.
  static double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

  AlgebraDescriptor desc_;
  std::uint64_t seed_;
  std::size_t budget_;
  double log_c_ = 0.0;
};

}  // namespace conelag
