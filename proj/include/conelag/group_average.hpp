#pragma once

// Numerical average of the power function Delta_m over the orbit of x under
// the connected isometry group fixing e. Independent check of the exact
// spherical polynomials; nothing in the exact pipelines depends on it.

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/partition.hpp"

namespace conelag {

struct OracleValue {
  double value = 0.0;
  std::string method;
  std::size_t samples = 0;
};

namespace detail {

// Delta_m of a Hermitian matrix from its leading principal minors.
inline double power_function_of_matrix(const Eigen::MatrixXcd& a, const Partition& m) {
  const int r = m.rank();
  double out = 1.0;
  for (int k = 1; k <= r; ++k) {
    const int e = m[k - 1] - (k < r ? m[k] : 0);
    if (e == 0) continue;
    const double minor = a.topLeftCorner(k, k).determinant().real();
    out *= std::pow(minor, e);
  }
  return out;
}

inline Eigen::MatrixXcd haar_sample(int r, bool complex_entries, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) z(i, j) = {g(rng), complex_entries ? g(rng) : 0.0};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < r; ++j) {
    const std::complex<double> d = rr(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace detail

/// Average of Delta_m(k.x) over the group. budget = quadrature nodes
/// (rank-2 real symmetric, spin factor) or Monte-Carlo samples (otherwise).
inline OracleValue group_average_oracle(const JordanAlgebra& alg, const Partition& m, std::span<const double> x,
                                        std::uint64_t seed, std::size_t budget) {
  const auto& desc = alg.descriptor();
  if (m.rank() != desc.rank) throw std::invalid_argument("partition rank mismatch");
  if (m.weight() == 0) return {1.0, "trivial", 0};
  if (desc.rank == 1) return {std::pow(alg.trace<double>(x), m[0]), "rank one (trivial group)", 0};

  if (desc.kind == AlgebraKind::SpinFactor) {
    // x = (s, u): Delta_1 along the frame is s + u_1; rotating u gives
    // u_1 = |u| cos(phi) with density sin^{n-3}(phi) on [0, pi].
    const double s = x[0] / std::sqrt(2.0);
    double u2 = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) u2 += x[i] * x[i] / 2.0;
    const double u = std::sqrt(u2);
    const double det = s * s - u2;
    const int k = m[0] - m[1];
    const double w = static_cast<double>(desc.dim - 3);
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto num = [&](double phi) { return std::pow(s + u * std::cos(phi), k) * std::pow(std::sin(phi), w); };
    auto den = [&](double phi) { return std::pow(std::sin(phi), w); };
    const double avg = GK::integrate(num, 0.0, std::numbers::pi, 0, 0.0) / GK::integrate(den, 0.0, std::numbers::pi, 0, 0.0);
    return {avg * std::pow(det, m[1]), "gauss-kronrod rotation of the vector part", 61};
  }

  const Eigen::MatrixXcd a = alg.to_matrix(x);
  const int r = desc.rank;
  if (desc.kind == AlgebraKind::SymReal && r == 2) {
    const std::size_t nodes = budget == 0 ? 64 : budget;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(nodes);
      Eigen::MatrixXcd k(2, 2);
      k << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      sum += detail::power_function_of_matrix(k * a * k.adjoint(), m);
    }
    return {sum / static_cast<double>(nodes), "trapezoid over SO(2)", nodes};
  }

  if (budget == 0) throw std::invalid_argument("Monte-Carlo budget must be positive");
  std::mt19937_64 rng(seed);
  const bool cplx = desc.kind == AlgebraKind::HermComplex;
  double sum = 0.0;
  for (std::size_t i = 0; i < budget; ++i) {
    const Eigen::MatrixXcd k = detail::haar_sample(r, cplx, rng);
    sum += detail::power_function_of_matrix(k * a * k.adjoint(), m);
  }
  return {sum / static_cast<double>(budget), cplx ? "Monte Carlo over U(r)" : "Monte Carlo over O(r)", budget};
}

/// Same averages for several partitions; Monte-Carlo paths share the samples.
inline std::vector<OracleValue> group_average_oracle(const JordanAlgebra& alg, std::span<const Partition> ms,
                                                     std::span<const double> x, std::uint64_t seed, std::size_t budget) {
  const auto& desc = alg.descriptor();
  const bool mc = desc.kind != AlgebraKind::SpinFactor && !(desc.kind == AlgebraKind::SymReal && desc.rank == 2) &&
                  desc.rank > 1;
  std::vector<OracleValue> out;
  if (!mc) {
    for (const auto& m : ms) out.push_back(group_average_oracle(alg, m, x, seed, budget));
    return out;
  }
  if (budget == 0) throw std::invalid_argument("Monte-Carlo budget must be positive");
  const int r = desc.rank;
  const Eigen::MatrixXcd a = alg.to_matrix(x);
  std::mt19937_64 rng(seed);
  const bool cplx = desc.kind == AlgebraKind::HermComplex;
  std::vector<double> sums(ms.size(), 0.0);
  std::vector<double> minors(r);
  for (std::size_t i = 0; i < budget; ++i) {
    const Eigen::MatrixXcd k = detail::haar_sample(r, cplx, rng);
    const Eigen::MatrixXcd b = k * a * k.adjoint();
    for (int j = 1; j <= r; ++j) minors[j - 1] = b.topLeftCorner(j, j).determinant().real();
    for (std::size_t q = 0; q < ms.size(); ++q) {
      double v = 1.0;
      for (int j = 1; j <= r; ++j) {
        const int e = ms[q][j - 1] - (j < r ? ms[q][j] : 0);
        for (int t = 0; t < e; ++t) v *= minors[j - 1];
      }
      sums[q] += v;
    }
  }
  for (std::size_t q = 0; q < ms.size(); ++q) {
    if (ms[q].rank() != r) throw std::invalid_argument("partition rank mismatch");
    if (ms[q].weight() == 0)
      out.push_back({1.0, "trivial", 0});
    else
      out.push_back({sums[q] / static_cast<double>(budget), cplx ? "Monte Carlo over U(r)" : "Monte Carlo over O(r)", budget});
  }
  return out;
}

}  // namespace conelag
