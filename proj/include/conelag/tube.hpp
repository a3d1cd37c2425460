#pragma once

// Generators of the group acting on the tube T(Omega) = Omega + iV and their
// Jacobian multipliers, in floating complex arithmetic.
//
//   tau_iu(z)   = z + iu                 J = 1
//   rho_T(z)    = T z,  T = P(a)         J = Det T
//   sigma_iv(z) = (z^{-1} + iv)^{-1}     J = (det z det(z^{-1} + iv))^{-p}
//
// The genus p = 2n/r is an integer for every supported algebra, so the
// multiplier is single valued.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/matrix.hpp"

namespace conelag {

using Cplx = std::complex<double>;
using TubeElement = Element<Cplx>;

enum class GeneratorKind { Translation, Linear, Inversion };

inline std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Translation:
      return "tau";
    case GeneratorKind::Linear:
      return "rho";
    case GeneratorKind::Inversion:
      return "sigma";
  }
  return "?";
}

/// tau_iu (param = u), rho_{P(a)} (param = a in Omega) or sigma_iv (param = v).
struct TubeGenerator {
  GeneratorKind kind;
  Element<double> param;
};

class TubeAction {
 public:
  explicit TubeAction(const JordanAlgebra& alg) : alg_(alg) {
    const Rational& p = alg.descriptor().genus;
    if (p.get_den() != 1) throw std::invalid_argument("non-integral genus");
    genus_ = static_cast<int>(p.get_num().get_si());
  }

  const JordanAlgebra& algebra() const { return alg_; }
  int genus() const { return genus_; }

  bool in_tube(std::span<const Cplx> z) const {
    Element<double> re(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) re[i] = z[i].real();
    return alg_.in_cone(std::span<const double>(re));
  }

  TubeElement inverse(std::span<const Cplx> z) const { return alg_.inverse<Cplx>(z); }

  TubeElement apply(const TubeGenerator& g, std::span<const Cplx> z) const { return apply_as<Cplx>(g, z); }

  /// The generator action in any complex scalar type (extended precision for Jacobian checks).
  template <class C>
  Element<C> apply_as(const TubeGenerator& g, std::span<const C> z) const {
    using R = typename C::value_type;
    switch (g.kind) {
      case GeneratorKind::Translation: {
        Element<C> out(z.begin(), z.end());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += C(0, static_cast<R>(g.param[i]));
        return out;
      }
      case GeneratorKind::Linear: {
        const Matrix<double> pa = alg_.quad<double>(g.param);
        Element<C> out(z.size(), C(0));
        for (std::size_t i = 0; i < z.size(); ++i)
          for (std::size_t j = 0; j < z.size(); ++j) out[i] += static_cast<R>(pa(i, j)) * z[j];
        return out;
      }
      case GeneratorKind::Inversion: {
        Element<C> w = alg_.inverse<C>(z);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += C(0, static_cast<R>(g.param[i]));
        return alg_.inverse<C>(w);
      }
    }
    throw std::logic_error("unknown generator");
  }

  /// Determinant of the complex Jacobian of g_1 o ... o g_k at z (chain[0] applied last),
  /// by 5-point central differences with one Richardson step (h, h/2), evaluated in long double.
  Cplx composite_jacobian_det(std::span<const TubeGenerator> chain, std::span<const Cplx> z, double h) const {
    using CL = std::complex<long double>;
    using MatL = Eigen::Matrix<CL, Eigen::Dynamic, Eigen::Dynamic>;
    const std::size_t n = z.size();
    const Element<CL> z0(z.begin(), z.end());
    auto map = [&](Element<CL> w) {
      for (std::size_t k = chain.size(); k-- > 0;) w = apply_as<CL>(chain[k], w);
      return w;
    };
    auto stencil = [&](long double step) {
      MatL jac(n, n);
      for (std::size_t k = 0; k < n; ++k) {
        auto at = [&](long double t) {
          Element<CL> w = z0;
          w[k] += t;
          return map(std::move(w));
        };
        const auto p2 = at(2 * step), p1 = at(step), m1 = at(-step), m2 = at(-2 * step);
        for (std::size_t i = 0; i < n; ++i) jac(i, k) = (-p2[i] + 8.0L * p1[i] - 8.0L * m1[i] + m2[i]) / (12.0L * step);
      }
      return jac;
    };
    const long double hl = h;
    const MatL jac = (16.0L * stencil(hl / 2) - stencil(hl)) / 15.0L;
    const CL det = jac.determinant();
    return {static_cast<double>(det.real()), static_cast<double>(det.imag())};
  }

  /// Closed-form multiplier J(g, z).
  Cplx multiplier(const TubeGenerator& g, std::span<const Cplx> z) const {
    switch (g.kind) {
      case GeneratorKind::Translation:
        return {1.0, 0.0};
      case GeneratorKind::Linear:
        return determinant(linear_map(g.param));
      case GeneratorKind::Inversion: {
        TubeElement w = inverse(z);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += Cplx(0.0, g.param[i]);
        const Cplx base = alg_.det<Cplx>(z) * alg_.det<Cplx>(w);
        return std::pow(base, -genus_);
      }
    }
    throw std::logic_error("unknown generator");
  }

  /// sigma_iv by Hua's identity z - P(z)(z + (iv)^{-1})^{-1}; needs v invertible.
  TubeElement sigma_hua(std::span<const double> v, std::span<const Cplx> z) const {
    TubeElement iv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) iv[i] = Cplx(0.0, v[i]);
    TubeElement w(z.begin(), z.end());
    const TubeElement ivinv = inverse(iv);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += ivinv[i];
    const TubeElement pz = alg_.quad<Cplx>(z).apply(inverse(w));
    TubeElement out(z.begin(), z.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= pz[i];
    return out;
  }

  /// Complex Jacobian of a holomorphic map by 5-point central differences
  /// along the real basis directions.
  Eigen::MatrixXcd jacobian_fd(const std::function<TubeElement(std::span<const Cplx>)>& f, std::span<const Cplx> z,
                               double h) const {
    const std::size_t n = z.size();
    Eigen::MatrixXcd jac(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      auto at = [&](double t) {
        TubeElement w(z.begin(), z.end());
        w[k] += t;
        return f(w);
      };
      const auto p2 = at(2 * h), p1 = at(h), m1 = at(-h), m2 = at(-2 * h);
      for (std::size_t i = 0; i < n; ++i) jac(i, k) = (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
    }
    return jac;
  }

  Matrix<Cplx> linear_map(std::span<const double> a) const {
    const Matrix<double> pa = alg_.quad<double>(a);
    Matrix<Cplx> out(pa.rows(), pa.cols());
    for (std::size_t i = 0; i < pa.rows(); ++i)
      for (std::size_t j = 0; j < pa.cols(); ++j) out(i, j) = pa(i, j);
    return out;
  }

 private:
  const JordanAlgebra& alg_;
  int genus_ = 0;
};

}  // namespace conelag
