#pragma once

// Floating finite-difference evaluation of the lambda_nu operators, used as
// an independent check of the exact operator engine. Functions are sampled
// through a black-box callback (typically the spectral evaluation of l_m).
// Sampling and differencing run in long double so that the h^-2 amplification
// of rounding noise stays well below the comparison tolerance.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "conelag/diffops.hpp"
#include "conelag/jordan.hpp"
#include "conelag/laguerre.hpp"
#include "conelag/liealg.hpp"
#include "conelag/matrix.hpp"

namespace conelag {

using Extended = long double;
using ScalarField = std::function<Extended(std::span<const Extended>)>;

struct FdDerivatives {
  Extended value = 0.0L;
  std::vector<Extended> grad;
  std::vector<Extended> hess;  // row-major n x n
  Extended h = 0.0L;
};

/// Eigenvalues of x in extended precision (non-increasing).
inline std::vector<Extended> extended_spectrum(const JordanAlgebra& alg, std::span<const Extended> x) {
  const auto& desc = alg.descriptor();
  std::vector<Extended> ev;
  if (desc.kind == AlgebraKind::SpinFactor) {
    const Extended x0 = x[0] / std::sqrt(2.0L);
    Extended u2 = 0.0L;
    for (std::size_t i = 1; i < x.size(); ++i) u2 += x[i] * x[i] / 2.0L;
    const Extended u = std::sqrt(u2);
    return {x0 + u, x0 - u};
  }
  using CMat = Eigen::Matrix<std::complex<Extended>, Eigen::Dynamic, Eigen::Dynamic>;
  const int r = desc.rank;
  CMat m = CMat::Zero(r, r);
  const auto& basis = alg.basis_matrices();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const auto& c = basis[i](a, b);
        if (c.re.is_zero() && c.im.is_zero()) continue;
        m(a, b) += x[i] * std::complex<Extended>(scalar_from<Extended>(c.re), scalar_from<Extended>(c.im));
      }
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  for (int i = r - 1; i >= 0; --i) ev.push_back(es.eigenvalues()(i));
  return ev;
}

/// exp(s tr x) p(lambda(x)) through the extended-precision spectrum.
inline ScalarField spectral_field(const JordanAlgebra& alg, LaguerreFunctionSym f) {
  return [&alg, f = std::move(f)](std::span<const Extended> x) {
    const auto ev = extended_spectrum(alg, x);
    Extended tr = 0.0L;
    for (Extended l : ev) tr += l;
    return std::exp(scalar_from<Extended>(f.s) * tr) * f.poly.evaluate<Extended>(ev);
  };
}

inline LieVector<double> to_double(const LieVector<QSqrt2>& x) {
  const std::size_t n = x.u.size();
  LieVector<double> out = LieVector<double>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.u[i] = x.u[i].to_double();
    out.v[i] = x.v[i].to_double();
    for (std::size_t j = 0; j < n; ++j) out.T(i, j) = x.T(i, j).to_double();
  }
  return out;
}

class FdOracle {
 public:
  /// Step h = h_rel * (largest eigenvalue of x).
  explicit FdOracle(const JordanAlgebra& alg, double h_rel = 1e-4) : alg_(alg), n_(alg.dim()), h_rel_(h_rel) {
    if (!(h_rel > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const auto ei = alg.basis_vector<double>(i);
        const auto ej = alg.basis_vector<double>(j);
        polar_.push_back(alg.quad<double>(ei, ej));
      }
    identity_ = alg.identity<double>();
  }

  /// Smallest gap between eigenvalues of x (infinity for rank 1).
  double eigenvalue_gap(std::span<const double> x) const {
    const auto sp = alg_.spectrum(x);
    double gap = INFINITY;
    for (std::size_t i = 1; i < sp.eigenvalues.size(); ++i)
      gap = std::min(gap, std::abs(sp.eigenvalues[i - 1] - sp.eigenvalues[i]));
    return gap;
  }

  bool well_conditioned(std::span<const double> x, double min_gap = 1e-6) const { return eigenvalue_gap(x) > min_gap; }

  /// Central differences with one Richardson step (h and h/2) for all first and second partials.
  FdDerivatives derivatives(const ScalarField& f, std::span<const double> x) const {
    const auto sp = alg_.spectrum(x);
    const double scale = std::max(1.0, std::abs(sp.eigenvalues.front()));
    FdDerivatives d;
    d.h = static_cast<Extended>(h_rel_ * scale);
    const std::vector<Extended> x0(x.begin(), x.end());
    d.value = f(x0);
    d.grad.assign(n_, 0.0L);
    d.hess.assign(n_ * n_, 0.0L);
    std::vector<Extended> w(x0);
    auto at = [&](std::size_t i, Extended a, std::size_t j, Extended b) {
      w = x0;
      w[i] += a;
      w[j] += b;
      return f(w);
    };
    auto richardson = [](Extended coarse, Extended fine) { return (4.0L * fine - coarse) / 3.0L; };
    for (std::size_t i = 0; i < n_; ++i) {
      auto first = [&](Extended h) { return (at(i, h, i, 0.0L) - at(i, -h, i, 0.0L)) / (2.0L * h); };
      auto second = [&](Extended h) { return (at(i, h, i, 0.0L) - 2.0L * d.value + at(i, -h, i, 0.0L)) / (h * h); };
      d.grad[i] = richardson(first(d.h), first(d.h / 2));
      d.hess[i * n_ + i] = richardson(second(d.h), second(d.h / 2));
      for (std::size_t j = i + 1; j < n_; ++j) {
        auto mixed = [&](Extended h) {
          return (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4.0L * h * h);
        };
        d.hess[i * n_ + j] = d.hess[j * n_ + i] = richardson(mixed(d.h), mixed(d.h / 2));
      }
    }
    return d;
  }

  double trace_multiply(const FdDerivatives& d, std::span<const double> x) const {
    return static_cast<double>(trace(x) * d.value);
  }

  double euler(const FdDerivatives& d, std::span<const double> x) const { return static_cast<double>(euler_ext(d, x)); }

  double bessel(double nu, std::span<const double> w, const FdDerivatives& d, std::span<const double> x) const {
    return static_cast<double>(bessel_ext(nu, w, d, x));
  }

  double lambda_action(double nu, const LieVector<double>& a, const FdDerivatives& d, std::span<const double> x) const {
    const Extended p = alg_.descriptor().genus.get_d();
    Extended ux = 0.0L, tr = 0.0L, dir = 0.0L;
    for (std::size_t i = 0; i < n_; ++i) {
      ux += a.u[i] * static_cast<Extended>(x[i]);
      tr += a.T(i, i);
      Extended tx = 0.0L;  // (T^t x)_i
      for (std::size_t j = 0; j < n_; ++j) tx += a.T(j, i) * static_cast<Extended>(x[j]);
      dir += tx * d.grad[i];
    }
    return static_cast<double>(ux * d.value + nu / p * tr * d.value + dir - bessel_ext(nu, a.v, d, x));
  }

  double op_xyz(double nu, Sl2Element which, const FdDerivatives& d, std::span<const double> x) const {
    const Extended rnu = alg_.rank() * static_cast<Extended>(nu);
    const Extended t = trace(x) * d.value;
    const Extended b = bessel_ext(nu, identity_, d, x);
    const Extended e = euler_ext(d, x);
    switch (which) {
      case Sl2Element::X:
        return static_cast<double>(0.5L * (t + rnu * d.value + 2.0L * e + b));
      case Sl2Element::Y:
        return static_cast<double>(0.5L * (-t + rnu * d.value + 2.0L * e - b));
      case Sl2Element::Z:
        return static_cast<double>(-t + b);
    }
    throw std::logic_error("unknown sl2 element");
  }

  /// |fd - exact| / max(|exact|, |f(x)|): the function value sets the scale when the exact result is near zero.
  static double relative_error(double fd, double exact, double value) {
    const double den = std::max({std::abs(exact), std::abs(value), 1e-300});
    return std::abs(fd - exact) / den;
  }

 private:
  Extended trace(std::span<const double> x) const {
    Extended s = 0.0L;
    for (std::size_t i = 0; i < n_; ++i) s += identity_[i] * static_cast<Extended>(x[i]);
    return s;
  }

  Extended euler_ext(const FdDerivatives& d, std::span<const double> x) const {
    Extended s = 0.0L;
    for (std::size_t i = 0; i < n_; ++i) s += static_cast<Extended>(x[i]) * d.grad[i];
    return s;
  }

  Extended bessel_ext(double nu, std::span<const double> w, const FdDerivatives& d, std::span<const double> x) const {
    Extended s = 0.0L;
    for (std::size_t i = 0; i < n_; ++i) {
      s += static_cast<Extended>(nu) * d.grad[i] * w[i];
      for (std::size_t j = 0; j < n_; ++j) {
        const Element<double> pw = polar_[i * n_ + j].apply(w);
        Extended c = 0.0L;
        for (std::size_t k = 0; k < n_; ++k) c += static_cast<Extended>(x[k]) * pw[k];
        s += d.hess[i * n_ + j] * c;
      }
    }
    return s;
  }

  const JordanAlgebra& alg_;
  std::size_t n_;
  double h_rel_;
  std::vector<Matrix<double>> polar_;
  Element<double> identity_;
};

}  // namespace conelag
