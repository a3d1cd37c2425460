#pragma once

// Verification campaigns: suites of exact and numeric checks over a grid of
// algebras, with JSON / CSV / text reports. Used by the command-line tool.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conelag/diffops.hpp"
#include "conelag/fd_oracle.hpp"
#include "conelag/group_average.hpp"
#include "conelag/integrate.hpp"
#include "conelag/jordan.hpp"
#include "conelag/laguerre.hpp"
#include "conelag/liealg.hpp"
#include "conelag/symfun.hpp"
#include "conelag/tube.hpp"

namespace conelag {

using Json = nlohmann::json;

enum class Profile { Exact, Numeric, Both };

inline Profile parse_profile(const std::string& s) {
  if (s == "exact") return Profile::Exact;
  if (s == "numeric") return Profile::Numeric;
  if (s == "both") return Profile::Both;
  throw std::invalid_argument("unknown profile: " + s);
}

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {"recursions", "orthogonality", "lie", "oracles"};
  return s;
}

struct CampaignConfig {
  std::vector<AlgebraDescriptor> algebras;  // empty: default grid
  std::vector<Rational> nus;                // empty: n/r + 1 and n/r + 3/2 per algebra
  int max_degree = 4;
  std::set<std::string> suites = {"recursions", "orthogonality", "lie", "oracles"};
  std::set<int> relations = {1, 2, 3};
  Profile profile = Profile::Both;
  std::uint64_t seed = 1;
  std::size_t mc_budget = 1000000;
  Rational perturb_c = 0;
};

inline std::vector<AlgebraDescriptor> default_grid() {
  return {make_algebra(AlgebraKind::SymReal, 1),        make_algebra(AlgebraKind::SymReal, 2),
          make_algebra(AlgebraKind::HermComplex, 2),    make_algebra(AlgebraKind::SymReal, 3),
          make_algebra(AlgebraKind::SpinFactor, 2, 5), make_algebra(AlgebraKind::SpinFactor, 2, 6)};
}

inline std::vector<Rational> grid_nus(const AlgebraDescriptor& desc) {
  return {desc.dim_over_rank() + 1, desc.dim_over_rank() + frac(3, 2)};
}

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  Json detail;
};

struct ConfigurationReport {
  AlgebraDescriptor desc;
  std::vector<CheckResult> checks;
};

inline Json descriptor_json(const AlgebraDescriptor& d) {
  return {{"kind", to_string(d.kind)}, {"r", d.rank}, {"d", d.degree.get_str()}, {"n", d.dim}, {"p", d.genus.get_str()}};
}

inline Json constants_json(const std::vector<std::pair<Partition, Rational>>& cs) {
  Json arr = Json::array();
  for (const auto& [p, c] : cs) arr.push_back({{"to", p.str()}, {"value", c.get_str()}});
  return arr;
}

inline Json report_json(const OperatorReport& rep, const AlgebraDescriptor& desc) {
  Json j = {{"relation", rep.relation},
            {"kind", to_string(desc.kind)},
            {"r", desc.rank},
            {"d", desc.degree.get_str()},
            {"nu", rep.nu.get_str()},
            {"m", rep.m.str()},
            {"pass", rep.pass},
            {"degenerate", rep.degenerate},
            {"residual_terms", rep.residual.poly.size()}};
  const std::string key = rep.relation == "2" ? "binomials" : (rep.relation == "3" ? "c" : "values");
  j["constants"] = {{key, constants_json(rep.constants)}};
  return j;
}

namespace detail {

inline Element<QSqrt2> unit_scale_point(const JordanAlgebra& alg, std::uint64_t seed) {
  Element<QSqrt2> x = alg.random_cone_point(seed);
  const QSqrt2 s = QSqrt2(alg.rank()) / alg.trace<QSqrt2>(x);
  for (auto& c : x) c *= s;
  return x;
}

/// Seeded cone points with eigenvalues separated by at least min_gap.
inline std::vector<Element<double>> separated_points(const JordanAlgebra& alg, std::uint64_t seed, int count,
                                                     double min_gap) {
  const FdOracle fd(alg);
  std::vector<Element<double>> out;
  for (std::uint64_t s = seed; out.size() < static_cast<std::size_t>(count); ++s) {
    auto x = to_double(alg.random_cone_point(s));
    if (fd.eigenvalue_gap(x) > min_gap) out.push_back(std::move(x));
    if (s > seed + 10000) throw std::runtime_error("could not find well-conditioned points");
  }
  return out;
}

inline void add(std::vector<CheckResult>& out, std::string suite, std::string name, bool pass, Json detail) {
  out.push_back({std::move(suite), std::move(name), pass, std::move(detail)});
}

}  // namespace detail

/// Recursion relations, Euler relation, eigenvalue law, highest weight, grading and operator sl2 relations.
inline std::vector<CheckResult> run_recursions(const AlgebraDescriptor& desc, const CampaignConfig& cfg,
                                               const std::vector<Rational>& nus) {
  std::vector<CheckResult> out;
  const JordanAlgebra alg(desc);
  const DiffEngine eng(alg);
  const auto table = spherical_table(desc, cfg.max_degree + 1);
  const auto t = sl2_triple<QSqrt2>(alg);
  for (const auto& nu : nus) {
    LaguerreFamily fam(eng, table, nu);
    RecursionChecker chk(fam);
    chk.set_c_perturbation(cfg.perturb_c);
    const Json where = {{"nu", nu.get_str()}};
    for (const auto& m : partitions(desc.rank, cfg.max_degree)) {
      for (int rel : cfg.relations) {
        const auto rep = chk.relation(rel, m);
        detail::add(out, "recursions", "relation-" + std::to_string(rel), rep.pass, report_json(rep, desc));
      }
      const auto eu = chk.euler(m);
      detail::add(out, "recursions", "euler", eu.pass, report_json(eu, desc));

      const ExpPolynomial& f = fam.get(m);
      const Rational ev = -(Rational(desc.rank) * nu + 2 * m.weight());
      const bool eig = eng.op_xyz(nu, Sl2Element::Z, f) == f * QSqrt2(ev);
      detail::add(out, "recursions", "z-eigenvalue", eig, {{"nu", nu.get_str()}, {"m", m.str()}, {"eigenvalue", ev.get_str()}});

      std::vector<ExpPolynomial> down, up;
      for (int j = 0; j < desc.rank; ++j) {
        Partition p;
        if (m.shifted(j, -1, p)) down.push_back(fam.get(p));
        if (m.weight() < cfg.max_degree + 1 && m.shifted(j, 1, p)) up.push_back(fam.get(p));
      }
      const bool gx = expand_in(eng.op_xyz(nu, Sl2Element::X, f), down).has_value();
      const bool gy = expand_in(eng.op_xyz(nu, Sl2Element::Y, f), up).has_value();
      detail::add(out, "recursions", "grading", gx && gy, {{"nu", nu.get_str()}, {"m", m.str()}, {"x_lowers", gx}, {"y_raises", gy}});
    }

    const ExpPolynomial& l0 = fam.get(Partition::zero(desc.rank));
    bool hw = true;
    for (std::size_t i = 0; i < alg.dim(); ++i)
      hw = hw && eng.lambda_action(nu, p_vector<QSqrt2>(alg, alg.basis_vector<QSqrt2>(i), 1), l0).is_zero();
    detail::add(out, "recursions", "highest-weight", hw, where);

    auto comm = [&](const LieVector<QSqrt2>& a, const LieVector<QSqrt2>& b, const ExpPolynomial& f) {
      return eng.lambda_action(nu, a, eng.lambda_action(nu, b, f)) - eng.lambda_action(nu, b, eng.lambda_action(nu, a, f));
    };
    bool zx = true, zy = true, xy = true, mixed = true;
    auto np = LieVector<QSqrt2>::zero(alg.dim()), nm = LieVector<QSqrt2>::zero(alg.dim());
    np.u[0] = QSqrt2(1);
    nm.v[alg.dim() - 1] = QSqrt2(1);
    for (const auto& m : partitions(desc.rank, std::min(2, cfg.max_degree))) {
      const ExpPolynomial& f = fam.get(m);
      zx = zx && comm(t.z, t.x, f) == eng.op_xyz(nu, Sl2Element::X, f) * QSqrt2(2);
      zy = zy && comm(t.z, t.y, f) == eng.op_xyz(nu, Sl2Element::Y, f) * QSqrt2(-2);
      xy = xy && comm(t.x, t.y, f) == eng.op_xyz(nu, Sl2Element::Z, f);
      mixed = mixed && comm(np, nm, f) == eng.lambda_action(nu, bracket<QSqrt2>(alg, np, nm), f);
    }
    detail::add(out, "recursions", "sl2-operators", zx && zy && xy, {{"nu", nu.get_str()}, {"zx", zx}, {"zy", zy}, {"xy", xy}});
    detail::add(out, "recursions", "homomorphism-mixed", mixed, where);
  }
  return out;
}

/// Exact orthogonality and norms, d_m extraction, and quadrature spot checks (r <= 2).
inline std::vector<CheckResult> run_orthogonality(const AlgebraDescriptor& desc, const CampaignConfig& cfg,
                                                  const std::vector<Rational>& nus) {
  std::vector<CheckResult> out;
  const int deg = std::min(3, cfg.max_degree);
  const auto table = spherical_table(desc, 2 * deg);
  const auto ms = partitions(desc.rank, deg);
  if (cfg.profile != Profile::Numeric) {
    for (const auto& nu : nus) {
      std::size_t pairs = 0;
      bool orth = true, pos = true, classical = true;
      Json failures = Json::array();
      for (const auto& m : ms)
        for (const auto& n : ms) {
          if (n < m) continue;
          const auto ip = inner_product_exact(*table, desc, nu, m, n);
          ++pairs;
          if (!(m == n)) {
            if (!ip.is_zero()) {
              orth = false;
              failures.push_back({{"m", m.str()}, {"n", n.str()}, {"value", ip.str()}});
            }
            continue;
          }
          if (ip.sign() <= 0) pos = false;
          if (desc.rank == 1) {
            Rational fact = 1;
            for (int i = 2; i <= m[0]; ++i) fact *= i;
            const GammaUnitValue expect(fact * pochhammer(desc, nu, m), -nu);
            if (!(ip == expect)) classical = false;
          }
        }
      detail::add(out, "orthogonality", "orthogonal", orth, {{"nu", nu.get_str()}, {"pairs", pairs}, {"failures", failures}});
      detail::add(out, "orthogonality", "norms-positive", pos, {{"nu", nu.get_str()}});
      if (desc.rank == 1) detail::add(out, "orthogonality", "classical-norms", classical, {{"nu", nu.get_str()}});
    }
    std::vector<Rational> dnus = nus;
    dnus.push_back(desc.dim_over_rank() + 2);
    for (const auto& m : ms) {
      const auto dm = dm_extract(*table, desc, m, dnus);
      Json per = Json::array();
      for (const auto& [nu, v] : dm.per_nu) per.push_back({{"nu", nu.get_str()}, {"d_m", v.get_str()}});
      detail::add(out, "orthogonality", "d_m-nu-independent", dm.consistent,
                  {{"m", m.str()}, {"d_m", dm.value.get_str()}, {"per_nu", per}});
    }
  }
  if (cfg.profile != Profile::Exact && desc.rank <= 2) {
    const QuadratureOracle quad(desc, cfg.seed);
    const JordanAlgebra alg(desc);
    const Rational nu = nus.front();
    const double lg = gamma_omega_log(desc, nu.get_d());
    const auto small = partitions(desc.rank, std::min(2, deg));
    for (const auto& m : small)
      for (const auto& n : small) {
        if (n < m) continue;
        const auto fm = laguerre_fn_sym(*table, desc, nu, m);
        const auto fn = laguerre_fn_sym(*table, desc, nu, n);
        const double num = quad.integrate(nu.get_d(), [&](std::span<const double> l) {
          return std::exp(2.0 * fm.s.get_d() * (l[0] + (l.size() > 1 ? l[1] : 0.0))) * fm.poly.evaluate<double>(l) *
                 fn.poly.evaluate<double>(l);
        });
        const double exact = inner_product_exact(*table, desc, nu, m, n).to_double(lg);
        const double scale = std::sqrt(inner_product_exact(*table, desc, nu, m, m).to_double(lg) *
                                       inner_product_exact(*table, desc, nu, n, n).to_double(lg));
        const double err = std::abs(num - exact) / scale;
        detail::add(out, "orthogonality", "quadrature-inner-product", err <= 1e-4,
                    {{"nu", nu.get_str()}, {"m", m.str()}, {"n", n.str()}, {"numeric", num}, {"exact", exact}, {"rel_err", err}});
      }
  }
  return out;
}

/// Lie structure (exact) and tube multipliers (numeric).
inline std::vector<CheckResult> run_lie(const AlgebraDescriptor& desc, const CampaignConfig& cfg) {
  using Q = QSqrt2;
  std::vector<CheckResult> out;
  const JordanAlgebra alg(desc);
  const std::size_t n = alg.dim();
  if (cfg.profile != Profile::Numeric) {
    const LieAlgebraModel<Q> g(alg);
    const auto t = sl2_triple<Q>(alg);
    const bool sl2 = g.bracket(t.x, t.y) == t.z && g.bracket(t.z, t.x) == t.x * Q(2) && g.bracket(t.z, t.y) == t.y * Q(-2);
    detail::add(out, "lie", "sl2-relations", sl2, Json::object());

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> num(-4, 4);
    auto random_lie = [&] {
      auto x = LieVector<Q>::zero(n);
      for (const auto& b : g.basis()) x += b * Q(frac(num(rng), 2));
      return x;
    };
    bool jac = true, anti = true, sign = true;
    for (int i = 0; i < 100; ++i) {
      const auto a = random_lie(), b = random_lie(), c = random_lie();
      jac = jac && (g.bracket(a, g.bracket(b, c)) + g.bracket(b, g.bracket(c, a)) + g.bracket(c, g.bracket(a, b))).is_zero();
      anti = anti && (g.bracket(a, b) + g.bracket(b, a)).is_zero();
      if (i < 10) {
        // the bracket against the commutator DX(z)Y(z) - DY(z)X(z) of the vector fields
        Element<Q> z(n);
        for (auto& c0 : z) c0 = Q(frac(num(rng), 3));
        auto d = [&](const LieVector<Q>& x, const Element<Q>& w) {
          Element<Q> r0 = x.T.apply(w);
          const Element<Q> q = alg.quad<Q>(z, w).apply(x.v);
          for (std::size_t k = 0; k < n; ++k) r0[k] -= Q(2) * q[k];
          return r0;
        };
        Element<Q> lhs = d(a, vector_field_at<Q>(alg, b, z));
        const Element<Q> rhs = d(b, vector_field_at<Q>(alg, a, z));
        for (std::size_t k = 0; k < n; ++k) lhs[k] -= rhs[k];
        sign = sign && lhs == vector_field_at<Q>(alg, g.bracket(a, b), z);
      }
    }
    detail::add(out, "lie", "jacobi", jac, {{"triples", 100}, {"seed", cfg.seed}});
    detail::add(out, "lie", "antisymmetry", anti, {{"pairs", 100}});
    detail::add(out, "lie", "bracket-sign-convention", sign,
                {{"box_coefficient", "+2"},
                 {"matches", "complexified bracket form"},
                 {"criterion", "canonical triple satisfies [x,y]=z, [z,x]=2x, [z,y]=-2y"},
                 {"vector_field_commutator", "DX(z)Y(z) - DY(z)X(z)"}});

    bool theta = true;
    const auto& basis = g.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      theta = theta && cartan_involution(cartan_involution(basis[i])) == basis[i];
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        theta = theta && cartan_involution(g.bracket(basis[i], basis[j])) ==
                             g.bracket(cartan_involution(basis[i]), cartan_involution(basis[j]));
    }
    detail::add(out, "lie", "cartan-involution", theta, Json::object());

    bool cent = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto s = LieVector<Q>::zero(n);
        s.T = commutator(alg.left<Q>(alg.basis_vector<Q>(i)), alg.left<Q>(alg.basis_vector<Q>(j)));
        for (const auto* w : {&t.x, &t.y, &t.z}) cent = cent && g.bracket(s, *w).is_zero();
      }
    detail::add(out, "lie", "l-invariance-of-triple", cent, Json::object());

    bool adz = true;
    std::vector<std::vector<Q>> plus;
    for (std::size_t i = 0; i < n; ++i) {
      const auto w = alg.basis_vector<Q>(i);
      const auto wp = p_vector<Q>(alg, w, 1), wm = p_vector<Q>(alg, w, -1);
      adz = adz && g.bracket(t.z, wp) == wp * Q(2) && g.bracket(t.z, wm) == wm * Q(-2);
      plus.push_back(g.coordinates(wp));
    }
    Matrix<Q> pm(plus.size(), plus[0].size());
    for (std::size_t i = 0; i < plus.size(); ++i)
      for (std::size_t j = 0; j < plus[i].size(); ++j) pm(i, j) = plus[i][j];
    const std::size_t dim_plus = rank(pm);
    detail::add(out, "lie", "ad-z-eigenspaces", adz && dim_plus == n, {{"dim_p_plus", dim_plus}});

    bool routes = true;
    Matrix<Q> gram(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        const Q v = g.killing_via_ad(basis[i], basis[j]);
        routes = routes && g.killing_formula(basis[i], basis[j]) == v;
        gram(i, j) = gram(j, i) = v;
      }
    const Q bzz = g.killing_via_ad(t.z, t.z);
    detail::add(out, "lie", "killing-routes", routes,
                {{"pairs", basis.size() * (basis.size() + 1) / 2},
                 {"B(z,z)", bzz.str()},
                 {"pairing_coefficient", "+4 n/r"},
                 {"dim_g", basis.size()}});
    detail::add(out, "lie", "killing-nondegenerate", !determinant(gram).is_zero(), Json::object());
  }
  if (cfg.profile != Profile::Exact) {
    const TubeAction act(alg);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> im(-1.0, 1.0);
    std::uniform_int_distribution<int> kind(0, 2);
    double worst_sigma = 0.0, worst_cocycle = 0.0;
    bool in_tube = true;
    auto generator = [&](std::uint64_t s) {
      const int k = kind(rng);
      const auto a = to_double(alg.random_cone_point(s));
      if (k == 1) return TubeGenerator{GeneratorKind::Linear, a};
      Element<double> v(n);
      for (auto& c : v) c = im(rng);
      return TubeGenerator{k == 0 ? GeneratorKind::Translation : GeneratorKind::Inversion, v};
    };
    for (int c = 0; c < 100; ++c) {
      const auto x = to_double(alg.random_cone_point(cfg.seed * 1000 + c));
      TubeElement z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = {x[i], im(rng)};
      const auto a = generator(cfg.seed * 7919 + 2 * c), b = generator(cfg.seed * 7919 + 2 * c + 1);
      const TubeGenerator chain[] = {a, b};
      const Cplx lhs = act.composite_jacobian_det(chain, z, 3e-3);
      const Cplx rhs = act.multiplier(a, act.apply(b, z)) * act.multiplier(b, z);
      worst_cocycle = std::max(worst_cocycle, std::abs(lhs - rhs) / std::abs(rhs));
      in_tube = in_tube && act.in_tube(act.apply(a, act.apply(b, z)));

      const auto v = to_double(alg.random_cone_point(cfg.seed * 31 + c));
      const TubeGenerator tau{GeneratorKind::Translation, v};
      const TubeElement conj = act.inverse(act.apply(tau, act.inverse(z)));
      const TubeElement hua = act.sigma_hua(v, z);
      for (std::size_t i = 0; i < n; ++i) worst_sigma = std::max(worst_sigma, std::abs(conj[i] - hua[i]));
    }
    detail::add(out, "lie", "tube-cocycle", worst_cocycle <= 1e-10 && in_tube,
                {{"cases", 100}, {"max_rel_err", worst_cocycle}, {"seed", cfg.seed}});
    detail::add(out, "lie", "tube-sigma-conjugation", worst_sigma <= 1e-12, {{"cases", 100}, {"max_abs_err", worst_sigma}});
  }
  return out;
}

/// Numeric oracles: group average vs psi_m, finite differences vs exact operators, Laplace functional vs quadrature.
inline std::vector<CheckResult> run_oracles(const AlgebraDescriptor& desc, const CampaignConfig& cfg,
                                            const std::vector<Rational>& nus) {
  std::vector<CheckResult> out;
  if (cfg.profile == Profile::Exact) return out;
  const JordanAlgebra alg(desc);
  const auto table = spherical_table(desc, std::max(cfg.max_degree, 2));
  const bool mc = desc.rank > 1 && desc.kind != AlgebraKind::SpinFactor && !(desc.kind == AlgebraKind::SymReal && desc.rank == 2);
  const double tol = mc ? 1e-2 : 1e-8;
  const auto ms = partitions(desc.rank, cfg.max_degree);
  double worst = 0.0;
  for (int s = 0; s < 5; ++s) {
    const auto x = to_double(detail::unit_scale_point(alg, cfg.seed + s));
    const auto sp = alg.spectrum(x);
    const auto vals = group_average_oracle(alg, std::span<const Partition>(ms), x, cfg.seed + s, mc ? cfg.mc_budget : 0);
    for (std::size_t i = 0; i < ms.size(); ++i)
      worst = std::max(worst, std::abs(vals[i].value - table->psi(ms[i]).evaluate<double>(sp.eigenvalues)));
  }
  detail::add(out, "oracles", "group-average", worst <= tol,
              {{"points", 5}, {"max_abs_err", worst}, {"tolerance", tol}, {"monte_carlo", mc},
               {"budget", mc ? cfg.mc_budget : 0}, {"seed", cfg.seed}});

  const DiffEngine eng(alg);
  const FdOracle fd(alg);
  const auto points = detail::separated_points(alg, cfg.seed, 5, 1e-2);
  const auto t = sl2_triple<QSqrt2>(alg);
  std::vector<std::pair<std::string, LieVector<QSqrt2>>> gens = {{"x", t.x}, {"y", t.y}, {"z", t.z}};
  {
    auto a = LieVector<QSqrt2>::zero(alg.dim()), b = LieVector<QSqrt2>::zero(alg.dim());
    a.u[0] = QSqrt2(1);
    b.v[alg.dim() - 1] = QSqrt2(1);
    gens.emplace_back("X(e_1,0,0)", a);
    gens.emplace_back("X(0,0,e_n)", b);
    gens.emplace_back("p+(e_1)", p_vector<QSqrt2>(alg, alg.basis_vector<QSqrt2>(0), 1));
    gens.emplace_back("p-(e_1)", p_vector<QSqrt2>(alg, alg.basis_vector<QSqrt2>(0), -1));
  }
  const auto e = alg.identity<QSqrt2>();
  const auto ed = alg.identity<double>();
  for (const auto& nu : nus) {
    double worst_fd = 0.0;
    std::size_t evals = 0;
    for (const auto& m : partitions(desc.rank, std::min(2, cfg.max_degree))) {
      const auto sym = laguerre_fn_sym(*table, desc, nu, m);
      const ExpPolynomial f = eng.lift(sym);
      const ExpPolynomial sym_ops[] = {eng.trace_multiply(f), eng.euler_D(f), eng.bessel(nu, e, f),
                                       eng.op_xyz(nu, Sl2Element::X, f), eng.op_xyz(nu, Sl2Element::Y, f),
                                       eng.op_xyz(nu, Sl2Element::Z, f)};
      std::vector<ExpPolynomial> sym_lambda;
      for (const auto& [name, g] : gens) sym_lambda.push_back(eng.lambda_action(nu, g, f));
      for (const auto& x : points) {
        const auto d = fd.derivatives(spectral_field(alg, sym), x);
        const double value = static_cast<double>(d.value);
        const double num_ops[] = {fd.trace_multiply(d, x), fd.euler(d, x), fd.bessel(nu.get_d(), ed, d, x),
                                  fd.op_xyz(nu.get_d(), Sl2Element::X, d, x), fd.op_xyz(nu.get_d(), Sl2Element::Y, d, x),
                                  fd.op_xyz(nu.get_d(), Sl2Element::Z, d, x)};
        for (std::size_t k = 0; k < 6; ++k, ++evals)
          worst_fd = std::max(worst_fd, FdOracle::relative_error(num_ops[k], eng.evaluate(sym_ops[k], x), value));
        for (std::size_t k = 0; k < gens.size(); ++k, ++evals) {
          const double num = fd.lambda_action(nu.get_d(), to_double(gens[k].second), d, x);
          worst_fd = std::max(worst_fd, FdOracle::relative_error(num, eng.evaluate(sym_lambda[k], x), value));
        }
      }
    }
    detail::add(out, "oracles", "finite-differences", worst_fd <= 1e-6,
                {{"nu", nu.get_str()}, {"points", points.size()}, {"evaluations", evals}, {"max_rel_err", worst_fd}});
  }

  if (desc.rank <= 2) {
    const QuadratureOracle quad(desc, cfg.seed);
    const Rational nu = nus.front();
    const double lg = gamma_omega_log(desc, nu.get_d());
    double worst_q = 0.0;
    for (const auto& m : partitions(desc.rank, std::min(2, cfg.max_degree))) {
      const auto& p = table->psi(m);
      const double num = quad.integrate(nu.get_d(), [&](std::span<const double> l) {
        double tr = 0.0;
        for (double v : l) tr += v;
        return std::exp(-tr) * p.evaluate<double>(l);
      });
      const double exact = laplace_functional(*table, desc, nu, p).to_double(lg);
      worst_q = std::max(worst_q, std::abs(num - exact) / std::abs(exact));
    }
    detail::add(out, "oracles", "laplace-functional-quadrature", worst_q <= 1e-4,
                {{"nu", nu.get_str()}, {"max_rel_err", worst_q}});
  }
  return out;
}

struct CampaignResult {
  std::vector<ConfigurationReport> configurations;
  std::size_t total = 0;
  std::size_t failed = 0;
  bool pass() const { return failed == 0; }
};

inline CampaignResult run_campaign(const CampaignConfig& cfg) {
  const auto algebras = cfg.algebras.empty() ? default_grid() : cfg.algebras;
  std::vector<std::future<ConfigurationReport>> tasks;
  for (const auto& desc : algebras) {
    tasks.push_back(std::async(std::launch::async, [&cfg, desc] {
      ConfigurationReport rep{desc, {}};
      const auto nus = cfg.nus.empty() ? grid_nus(desc) : cfg.nus;
      auto append = [&](std::vector<CheckResult> v) {
        for (auto& c : v) rep.checks.push_back(std::move(c));
      };
      if (cfg.suites.count("recursions") && cfg.profile != Profile::Numeric) append(run_recursions(desc, cfg, nus));
      if (cfg.suites.count("orthogonality")) append(run_orthogonality(desc, cfg, nus));
      if (cfg.suites.count("lie")) append(run_lie(desc, cfg));
      if (cfg.suites.count("oracles")) append(run_oracles(desc, cfg, nus));
      return rep;
    }));
  }
  CampaignResult res;
  for (auto& t : tasks) {
    res.configurations.push_back(t.get());
    for (const auto& c : res.configurations.back().checks) {
      ++res.total;
      if (!c.pass) ++res.failed;
    }
  }
  return res;
}

inline std::string suite_list(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return out;
}

inline Json campaign_json(const CampaignConfig& cfg, const CampaignResult& res) {
  Json confs = Json::array();
  Json first_failure = nullptr;
  for (const auto& c : res.configurations) {
    Json checks = Json::array();
    for (const auto& k : c.checks) {
      checks.push_back({{"suite", k.suite}, {"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
      if (!k.pass && first_failure.is_null())
        first_failure = {{"algebra", c.desc.label()}, {"suite", k.suite}, {"name", k.name}, {"detail", k.detail}};
    }
    confs.push_back({{"algebra", descriptor_json(c.desc)}, {"checks", checks}});
  }
  Json nus = Json::array();
  for (const auto& nu : cfg.nus) nus.push_back(nu.get_str());
  Json rels = Json::array();
  for (int r : cfg.relations) rels.push_back(r);
  const char* profile = cfg.profile == Profile::Exact ? "exact" : (cfg.profile == Profile::Numeric ? "numeric" : "both");
  return {{"schema", 1},
          {"config",
           {{"max_deg", cfg.max_degree},
            {"nu", nus},
            {"suites", suite_list(cfg.suites)},
            {"relations", rels},
            {"profile", profile},
            {"seed", cfg.seed},
            {"mc_budget", cfg.mc_budget},
            {"perturb_c", cfg.perturb_c.get_str()}}},
          {"configurations", confs},
          {"summary", {{"total", res.total}, {"passed", res.total - res.failed}, {"failed", res.failed}, {"first_failure", first_failure}}}};
}

inline std::string detail_field(const Json& d, const char* key) {
  if (!d.contains(key)) return "";
  const auto& v = d.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

inline std::string campaign_csv(const CampaignResult& res) {
  std::ostringstream os;
  os << "kind,r,d,n,suite,name,nu,m,pass\n";
  for (const auto& c : res.configurations)
    for (const auto& k : c.checks)
      os << to_string(c.desc.kind) << ',' << c.desc.rank << ',' << c.desc.degree.get_str() << ',' << c.desc.dim << ','
         << k.suite << ',' << k.name << ',' << detail_field(k.detail, "nu") << ",\"" << detail_field(k.detail, "m")
         << "\"," << (k.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

inline std::string campaign_text(const CampaignResult& res) {
  std::ostringstream os;
  for (const auto& c : res.configurations) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // suite/name -> (passed, total)
    std::vector<std::string> order;
    for (const auto& k : c.checks) {
      const std::string key = k.suite + "/" + k.name;
      if (!tally.count(key)) order.push_back(key);
      auto& t = tally[key];
      ++t.second;
      if (k.pass) ++t.first;
    }
    os << c.desc.label() << '\n';
    for (const auto& key : order) {
      const auto& [p, t] = tally[key];
      os << "  " << (p == t ? "PASS" : "FAIL") << ' ' << key << " (" << p << '/' << t << ")\n";
    }
    for (const auto& k : c.checks)
      if (!k.pass) os << "    failed: " << k.suite << '/' << k.name << ' ' << k.detail.dump() << '\n';
  }
  os << "total " << res.total << ", failed " << res.failed << '\n';
  return os.str();
}

}  // namespace conelag
