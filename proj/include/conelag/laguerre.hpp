#pragma once

// Cone Gamma function, generalized Pochhammer symbols and the Laguerre
// polynomials L_m^nu / functions l_m^nu(x) = exp(-tr x) L_m^nu(2x).

#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/partition.hpp"
#include "conelag/scalar.hpp"
#include "conelag/symfun.hpp"

namespace conelag {

/// (nu)_m = prod_j prod_{i < m_j} (nu - (j-1) d/2 + i). Throws on a Gamma pole.
inline Rational pochhammer(const AlgebraDescriptor& desc, const Rational& nu, const Partition& m) {
  if (m.rank() != desc.rank) throw std::invalid_argument("partition rank mismatch");
  Rational out = 1;
  for (int j = 1; j <= desc.rank; ++j) {
    if (m[j - 1] == 0) continue;
    Rational a = nu - Rational(j - 1) * desc.degree / 2;
    a.canonicalize();
    if (sgn(a) <= 0 && a.get_den() == 1) throw std::domain_error("Pochhammer symbol hits a Gamma pole at " + a.get_str());
    for (int i = 0; i < m[j - 1]; ++i) out *= a + i;
  }
  return out;
}

/// log Gamma_Omega(s) = (n-r)/2 log(2 pi) + sum_j log Gamma(s_j - (j-1) d/2).
inline double gamma_omega_log(const AlgebraDescriptor& desc, std::span<const double> s) {
  if (s.size() != static_cast<std::size_t>(desc.rank)) throw std::invalid_argument("Gamma_Omega argument length");
  const double d = desc.degree.get_d();
  double out = 0.5 * static_cast<double>(desc.dim - desc.rank) * std::log(2.0 * std::numbers::pi);
  for (int j = 1; j <= desc.rank; ++j) {
    const double a = s[j - 1] - (j - 1) * d / 2.0;
    if (!(a > 0.0)) throw std::domain_error("Gamma_Omega argument outside its domain");
    out += std::lgamma(a);
  }
  return out;
}

inline double gamma_omega_log(const AlgebraDescriptor& desc, double nu) {
  std::vector<double> s(desc.rank, nu);
  return gamma_omega_log(desc, s);
}

/// Gamma_Omega(nu + m) / Gamma_Omega(nu), exact.
inline Rational gamma_omega_ratio(const AlgebraDescriptor& desc, const Rational& nu, const Partition& m) {
  return pochhammer(desc, nu, m);
}

/// Convergence threshold (r-1) d / 2 of the Gamma_Omega integral.
inline Rational admissibility_threshold(const AlgebraDescriptor& desc) {
  Rational t = Rational(desc.rank - 1) * desc.degree / 2;
  t.canonicalize();
  return t;
}

inline bool admissible(const AlgebraDescriptor& desc, const Rational& nu) { return nu > admissibility_threshold(desc); }

/// L_m^nu(x) = sum_n coeffs[n] psi_n(-x).
struct LaguerreExpansion {
  Partition m;
  Rational nu;
  std::map<Partition, Rational> coeffs;
};

inline LaguerreExpansion laguerre_expansion(const SphericalTable& table, const AlgebraDescriptor& desc, const Rational& nu,
                                            const Partition& m) {
  LaguerreExpansion out{m, nu, {}};
  const Rational top = pochhammer(desc, nu, m);
  for (const auto& [n, b] : table.binomials().at(m)) {
    const Rational pn = pochhammer(desc, nu, n);
    out.coeffs.emplace(n, top * b / pn);
  }
  return out;
}

/// L_m^nu as a symmetric polynomial in the eigenvalues.
inline SymPoly laguerre_poly(const SphericalTable& table, const AlgebraDescriptor& desc, const Rational& nu,
                             const Partition& m) {
  const auto e = laguerre_expansion(table, desc, nu, m);
  SymPoly out(desc.rank);
  for (const auto& [n, c] : e.coeffs) out += table.psi(n) * (n.weight() % 2 == 0 ? c : Rational(-c));
  return out;
}

/// l_m^nu = exp(s tr x) * poly(x) with s = -1 and poly = L_m^nu(2 .).
struct LaguerreFunctionSym {
  Rational s;
  SymPoly poly;
};

inline LaguerreFunctionSym laguerre_fn_sym(const SphericalTable& table, const AlgebraDescriptor& desc, const Rational& nu,
                                           const Partition& m) {
  return {Rational(-1), laguerre_poly(table, desc, nu, m).dilate(2)};
}

/// exp(s tr x) p(lambda(x)) in floating point, through the spectrum of x.
inline double evaluate_on_spectrum(const JordanAlgebra& alg, const LaguerreFunctionSym& f, std::span<const double> x) {
  const auto sp = alg.spectrum(x);
  return std::exp(f.s.get_d() * sp.trace) * f.poly.evaluate<double>(sp.eigenvalues);
}

inline double laguerre_fn_eval(const JordanAlgebra& alg, const SphericalTable& table, const Rational& nu,
                               const Partition& m, std::span<const double> x) {
  return evaluate_on_spectrum(alg, laguerre_fn_sym(table, alg.descriptor(), nu, m), x);
}

}  // namespace conelag
