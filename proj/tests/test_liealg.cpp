#include <gtest/gtest.h>

#include <random>

#include "conelag/liealg.hpp"
#include "conelag/tube.hpp"

using namespace conelag;

namespace {

using Q = QSqrt2;

std::vector<AlgebraDescriptor> algebras() {
  return {make_algebra(AlgebraKind::SymReal, 2), make_algebra(AlgebraKind::SymReal, 3),
          make_algebra(AlgebraKind::HermComplex, 2), make_algebra(AlgebraKind::SpinFactor, 2, 5)};
}

Element<Q> random_element(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  Element<Q> x(n);
  for (auto& c : x) c = Q(frac(num(rng), 3));
  return x;
}

LieVector<Q> random_lie(const LieAlgebraModel<Q>& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  auto x = LieVector<Q>::zero(g.algebra().dim());
  for (const auto& b : g.basis()) x += b * Q(frac(num(rng), 2));
  return x;
}

// [X, Y] of the vector fields themselves: DX(z) Y(z) - DY(z) X(z),
// with DX(z) w = T w - 2 P(z, w) v.
Element<Q> field_commutator(const JordanAlgebra& alg, const LieVector<Q>& a, const LieVector<Q>& b,
                            const Element<Q>& z) {
  auto d = [&](const LieVector<Q>& x, const Element<Q>& w) {
    Element<Q> out = x.T.apply(w);
    const Element<Q> t = alg.quad<Q>(z, w).apply(x.v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= Q(2) * t[i];
    return out;
  };
  const Element<Q> xa = vector_field_at<Q>(alg, a, z);
  const Element<Q> xb = vector_field_at<Q>(alg, b, z);
  Element<Q> out = d(a, xb);
  const Element<Q> t = d(b, xa);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t[i];
  return out;
}

}  // namespace

TEST(Box, Examples) {
  const JordanAlgebra alg(make_algebra(AlgebraKind::SymReal, 2));
  const auto e = alg.identity<Q>();
  EXPECT_EQ(box<Q>(alg, e, e), Matrix<Q>::identity(3));
  std::mt19937 rng(1);
  const auto x = random_element(3, rng);
  EXPECT_EQ(box<Q>(alg, x, e), alg.left<Q>(x));
  const auto& c = alg.frame();
  EXPECT_EQ(box<Q>(alg, c[0], c[1]), commutator(alg.left<Q>(c[0]), alg.left<Q>(c[1])));
  EXPECT_TRUE(alg.left<Q>(alg.mul<Q>(c[0], c[1])).is_zero());
}

TEST(Bracket, Sl2Relations) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const auto t = sl2_triple<Q>(alg);
    EXPECT_EQ(bracket<Q>(alg, t.x, t.y), t.z) << desc.label();
    EXPECT_EQ(bracket<Q>(alg, t.z, t.x), t.x * Q(2)) << desc.label();
    EXPECT_EQ(bracket<Q>(alg, t.z, t.y), t.y * Q(-2)) << desc.label();
  }
}

TEST(Bracket, MatchesCommutatorOfVectorFields) {
  std::mt19937 rng(5);
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const LieAlgebraModel<Q> g(alg);
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_lie(g, rng);
      const auto b = random_lie(g, rng);
      const auto z = random_element(alg.dim(), rng);
      EXPECT_EQ(vector_field_at<Q>(alg, bracket<Q>(alg, a, b), z), field_commutator(alg, a, b, z)) << desc.label();
    }
  }
}

TEST(Bracket, AntisymmetryAndJacobi) {
  std::mt19937 rng(7);
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const LieAlgebraModel<Q> g(alg);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_lie(g, rng);
      const auto b = random_lie(g, rng);
      const auto c = random_lie(g, rng);
      EXPECT_TRUE((g.bracket(a, b) + g.bracket(b, a)).is_zero());
      const auto jac = g.bracket(a, g.bracket(b, c)) + g.bracket(b, g.bracket(c, a)) + g.bracket(c, g.bracket(a, b));
      EXPECT_TRUE(jac.is_zero()) << desc.label();
      EXPECT_TRUE(g.structure().contains(g.bracket(a, b).T));
    }
  }
}

TEST(Structure, Dimensions) {
  // g is sp(2r, R), su(r, r) and so(2, n) respectively
  EXPECT_EQ(LieAlgebraModel<Q>(JordanAlgebra(make_algebra(AlgebraKind::SymReal, 2))).dim(), 10u);
  EXPECT_EQ(LieAlgebraModel<Q>(JordanAlgebra(make_algebra(AlgebraKind::SymReal, 3))).dim(), 21u);
  EXPECT_EQ(LieAlgebraModel<Q>(JordanAlgebra(make_algebra(AlgebraKind::HermComplex, 2))).dim(), 15u);
  EXPECT_EQ(LieAlgebraModel<Q>(JordanAlgebra(make_algebra(AlgebraKind::SpinFactor, 2, 5))).dim(), 21u);
}

TEST(Cartan, InvolutiveAutomorphism) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const LieAlgebraModel<Q> g(alg);
    const auto& b = g.basis();
    for (const auto& x : b) EXPECT_EQ(cartan_involution(cartan_involution(x)), x);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        EXPECT_EQ(cartan_involution(g.bracket(b[i], b[j])), g.bracket(cartan_involution(b[i]), cartan_involution(b[j])));
    const auto t = sl2_triple<Q>(alg);
    EXPECT_EQ(cartan_involution(t.z), t.z);
  }
}

TEST(Sl2, CentralizesRotations) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const auto t = sl2_triple<Q>(alg);
    const std::size_t n = alg.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto s = LieVector<Q>::zero(n);
        s.T = commutator(alg.left<Q>(alg.basis_vector<Q>(i)), alg.left<Q>(alg.basis_vector<Q>(j)));
        EXPECT_EQ(s.T.transpose(), -s.T);
        EXPECT_TRUE(bracket<Q>(alg, s, t.z).is_zero());
        EXPECT_TRUE(bracket<Q>(alg, s, t.x).is_zero());
        EXPECT_TRUE(bracket<Q>(alg, s, t.y).is_zero());
      }
  }
}

TEST(AdZ, EigenspacesOfP) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const LieAlgebraModel<Q> g(alg);
    const auto z = sl2_triple<Q>(alg).z;
    std::vector<std::vector<Q>> plus;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      const auto w = alg.basis_vector<Q>(i);
      const auto wp = p_vector<Q>(alg, w, 1);
      const auto wm = p_vector<Q>(alg, w, -1);
      EXPECT_EQ(g.bracket(z, wp), wp * Q(2));
      EXPECT_EQ(g.bracket(z, wm), wm * Q(-2));
      plus.push_back(g.coordinates(wp));
    }
    Matrix<Q> m(plus.size(), plus[0].size());
    for (std::size_t i = 0; i < plus.size(); ++i)
      for (std::size_t j = 0; j < plus[i].size(); ++j) m(i, j) = plus[i][j];
    EXPECT_EQ(rank(m), alg.dim());
  }
}

TEST(Killing, RoutesAgreeOnBasis) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const LieAlgebraModel<Q> g(alg);
    const auto& b = g.basis();
    Matrix<Q> gram(b.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j) {
        const Q tr = g.killing_via_ad(b[i], b[j]);
        EXPECT_EQ(g.killing_formula(b[i], b[j]), tr) << desc.label() << " " << i << "," << j;
        gram(i, j) = gram(j, i) = tr;
      }
    EXPECT_FALSE(determinant(gram).is_zero());
  }
}

TEST(Killing, Examples) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const LieAlgebraModel<Q> g(alg);
    const auto z = sl2_triple<Q>(alg).z;
    EXPECT_EQ(g.killing_via_ad(z, z), Q(8 * desc.dim));
    EXPECT_EQ(g.killing_formula(z, z), Q(8 * desc.dim));
    const std::size_t n = alg.dim();
    auto a = LieVector<Q>::zero(n), c = LieVector<Q>::zero(n);
    a.u[0] = Q(1);
    c.u[n - 1] = Q(3);
    EXPECT_TRUE(g.killing_via_ad(a, c).is_zero());
    EXPECT_TRUE(g.killing_formula(a, c).is_zero());
  }
}

TEST(Tube, TranslationAndLinearMultipliers) {
  const JordanAlgebra alg(make_algebra(AlgebraKind::SymReal, 2));
  const TubeAction act(alg);
  EXPECT_EQ(act.genus(), 3);
  const TubeElement z = {{2.0, 0.3}, {1.5, -0.2}, {0.1, 0.4}};
  ASSERT_TRUE(act.in_tube(z));
  const TubeGenerator tau{GeneratorKind::Translation, {0.5, -1.0, 2.0}};
  EXPECT_EQ(act.multiplier(tau, z), Cplx(1.0, 0.0));
  const TubeGenerator rho{GeneratorKind::Linear, {2.0, 1.0, 0.5}};
  // Det P(a) = det(a)^p
  const double det_a = alg.det<double>(std::vector<double>{2.0, 1.0, 0.5});
  EXPECT_NEAR(std::abs(act.multiplier(rho, z) - std::pow(det_a, 3)), 0.0, 1e-12);
}

TEST(Tube, SigmaRoutesAndCocycle) {
  for (const auto& desc : algebras()) {
    const JordanAlgebra alg(desc);
    const TubeAction act(alg);
    const auto x = to_double(alg.random_cone_point(3));
    TubeElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = {x[i], 0.25 * static_cast<double>(i % 3) - 0.2};
    ASSERT_TRUE(act.in_tube(z));
    const auto v = to_double(alg.random_cone_point(9));
    const TubeGenerator sigma{GeneratorKind::Inversion, v};
    const TubeElement s1 = act.apply(sigma, z);
    const TubeElement s2 = act.sigma_hua(v, z);
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(std::abs(s1[i] - s2[i]), 0.0, 1e-12);
    EXPECT_TRUE(act.in_tube(s1));

    const TubeGenerator rho{GeneratorKind::Linear, to_double(alg.random_cone_point(4))};
    auto composite = [&](std::span<const Cplx> w) { return act.apply(sigma, act.apply(rho, w)); };
    const auto jac = act.jacobian_fd(composite, z, 1e-3);
    const Cplx lhs = jac.determinant();
    const Cplx rhs = act.multiplier(sigma, act.apply(rho, z)) * act.multiplier(rho, z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::abs(rhs)) << desc.label();
  }
}
