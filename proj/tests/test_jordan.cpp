#include <gtest/gtest.h>

#include <random>

#include "conelag/jordan.hpp"

using namespace conelag;

namespace {

std::vector<AlgebraDescriptor> all_descriptors() {
  return {make_algebra(AlgebraKind::SymReal, 1),     make_algebra(AlgebraKind::SymReal, 2),
          make_algebra(AlgebraKind::SymReal, 3),     make_algebra(AlgebraKind::HermComplex, 2),
          make_algebra(AlgebraKind::HermComplex, 3), make_algebra(AlgebraKind::SpinFactor, 2, 3),
          make_algebra(AlgebraKind::SpinFactor, 2, 5)};
}

Element<QSqrt2> random_rational_element(const JordanAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  Element<QSqrt2> x(alg.dim());
  for (auto& c : x) c = QSqrt2(Rational(num(rng), 3));
  return x;
}

Matrix<QSqrt2> mat(const std::vector<std::vector<long>>& rows) {
  Matrix<QSqrt2> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = QSqrt2(rows[i][j]);
  return m;
}

}  // namespace

TEST(Descriptor, MatrixKindsFollowDimensionFormula) {
  const auto a = make_algebra(AlgebraKind::SymReal, 2);
  EXPECT_EQ(a.dim, 3);
  EXPECT_EQ(a.degree, 1);
  EXPECT_EQ(a.genus, 3);
  const auto b = make_algebra(AlgebraKind::HermComplex, 3);
  EXPECT_EQ(b.dim, 9);
  EXPECT_EQ(b.degree, 2);
  EXPECT_EQ(b.genus, 6);
  const auto c = make_algebra(AlgebraKind::SpinFactor, 2, 5);
  EXPECT_EQ(c.rank, 2);
  EXPECT_EQ(c.degree, 3);
  EXPECT_EQ(c.genus, 5);
  const auto d = make_algebra(AlgebraKind::HermComplex, 1);
  EXPECT_EQ(d.dim, 1);
  EXPECT_EQ(d.degree, 0);
}

TEST(Descriptor, RejectsInconsistentParameters) {
  EXPECT_THROW(make_algebra(AlgebraKind::SpinFactor, 2, 2), std::invalid_argument);
  EXPECT_THROW(make_algebra(AlgebraKind::SpinFactor, 3, 5), std::invalid_argument);
  EXPECT_THROW(make_algebra(AlgebraKind::SpinFactor, 2), std::invalid_argument);
  EXPECT_THROW(make_algebra(AlgebraKind::SymReal, 0), std::invalid_argument);
  EXPECT_THROW(make_algebra(AlgebraKind::SymReal, 2, 4), std::invalid_argument);
  EXPECT_THROW(parse_algebra_kind("octonion"), std::invalid_argument);
}

TEST(Product, IdentityAndFrame) {
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra alg(desc);
    std::mt19937_64 rng(7);
    const auto e = alg.identity<QSqrt2>();
    const auto x = random_rational_element(alg, rng);
    EXPECT_EQ(alg.mul<QSqrt2>(e, x), x) << desc.label();
    const auto& c = alg.frame();
    Element<QSqrt2> sum(alg.dim(), QSqrt2(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(alg.square<QSqrt2>(c[i]), c[i]);
      EXPECT_EQ(alg.trace<QSqrt2>(c[i]), QSqrt2(1));
      for (std::size_t j = 0; j < c.size(); ++j)
        if (i != j) EXPECT_TRUE(alg.mul<QSqrt2>(c[i], c[j]) == Element<QSqrt2>(alg.dim(), QSqrt2(0)));
      for (std::size_t k = 0; k < alg.dim(); ++k) sum[k] += c[i][k];
    }
    EXPECT_EQ(sum, e);
  }
}

TEST(Product, SpinFactorIdentity) {
  JordanAlgebra alg(make_algebra(AlgebraKind::SpinFactor, 2, 4));
  // (1, 0) has coordinate sqrt2 on f0.
  const auto e = alg.identity<QSqrt2>();
  EXPECT_EQ(e[0], QSqrt2::sqrt2());
  Element<QSqrt2> su = {QSqrt2(3), QSqrt2(-1), QSqrt2(Rational(1, 2)), QSqrt2(2)};
  EXPECT_EQ(alg.mul<QSqrt2>(e, su), su);
}

TEST(Product, JordanIdentityAndAssociativeInnerProduct) {
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra alg(desc);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = random_rational_element(alg, rng);
      const auto b = random_rational_element(alg, rng);
      const auto u = random_rational_element(alg, rng);
      const auto a2 = alg.square<QSqrt2>(a);
      EXPECT_EQ(alg.mul<QSqrt2>(a2, alg.mul<QSqrt2>(a, b)), alg.mul<QSqrt2>(a, alg.mul<QSqrt2>(a2, b)))
          << desc.label();
      EXPECT_EQ(alg.inner<QSqrt2>(alg.mul<QSqrt2>(a, u), b), alg.inner<QSqrt2>(u, alg.mul<QSqrt2>(a, b)));
    }
    // Orthonormality: <e_i, e_j> = tr(e_i e_j) = delta_ij.
    for (std::size_t i = 0; i < alg.dim(); ++i)
      for (std::size_t j = 0; j < alg.dim(); ++j) {
        const auto ei = alg.basis_vector<QSqrt2>(i);
        const auto ej = alg.basis_vector<QSqrt2>(j);
        EXPECT_EQ(alg.trace<QSqrt2>(alg.mul<QSqrt2>(ei, ej)), QSqrt2(i == j ? 1 : 0)) << desc.label();
      }
  }
}

TEST(QuadraticRepresentation, BasicIdentities) {
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra alg(desc);
    std::mt19937_64 rng(3);
    const auto e = alg.identity<QSqrt2>();
    EXPECT_TRUE(alg.quad<QSqrt2>(e) == Matrix<QSqrt2>::identity(alg.dim()));
    const auto x = alg.random_cone_point(5);
    const auto y = random_rational_element(alg, rng);
    EXPECT_TRUE(alg.quad<QSqrt2>(x, x) == alg.quad<QSqrt2>(x));
    const auto xinv = alg.inverse<QSqrt2>(x);
    EXPECT_EQ(alg.quad<QSqrt2>(x).apply(xinv), x);
    EXPECT_EQ(alg.mul<QSqrt2>(x, xinv), e);
    EXPECT_TRUE(inverse(alg.quad<QSqrt2>(x)) == alg.quad<QSqrt2>(xinv)) << desc.label();
    (void)y;
  }
}

TEST(TraceDeterminant, StructuralIdentities) {
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra alg(desc);
    std::mt19937_64 rng(19);
    const Rational n_over_r = desc.dim_over_rank();
    for (int trial = 0; trial < 2; ++trial) {
      const auto x = random_rational_element(alg, rng);
      const auto y = random_rational_element(alg, rng);
      // Tr L(x) = (n/r) tr x
      EXPECT_EQ(alg.left<QSqrt2>(x).trace(), QSqrt2(n_over_r) * alg.trace<QSqrt2>(x)) << desc.label();
      // Det P(x) = det(x)^{2n/r}; 2n/r is an integer for every supported kind.
      const QSqrt2 dx = alg.det<QSqrt2>(x);
      const long p = desc.genus.get_num().get_si();
      QSqrt2 dp(1);
      for (long i = 0; i < p; ++i) dp *= dx;
      EXPECT_EQ(determinant(alg.quad<QSqrt2>(x)), dp) << desc.label();
      // det(P(y)x) = det(y)^2 det(x)
      const QSqrt2 dy = alg.det<QSqrt2>(y);
      EXPECT_EQ(alg.det<QSqrt2>(alg.quad<QSqrt2>(y).apply(x)), dy * dy * dx) << desc.label();
    }
  }
}

TEST(Spectral, IdentityAndDiagonal) {
  JordanAlgebra alg(make_algebra(AlgebraKind::SymReal, 2));
  const auto sp = alg.spectrum(to_double(alg.identity<QSqrt2>()));
  EXPECT_NEAR(sp.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(sp.eigenvalues[1], 1.0, 1e-14);
  EXPECT_NEAR(sp.trace, 2.0, 1e-14);
  EXPECT_NEAR(sp.det, 1.0, 1e-14);
  const std::vector<QSqrt2> lam = {QSqrt2(3), QSqrt2(1)};
  const auto x = alg.from_eigenvalues<QSqrt2>(lam);
  EXPECT_EQ(alg.trace<QSqrt2>(x), QSqrt2(4));
  EXPECT_EQ(alg.det<QSqrt2>(x), QSqrt2(3));
  const auto sx = alg.spectrum(to_double(x));
  EXPECT_NEAR(sx.eigenvalues[0], 3.0, 1e-14);
  EXPECT_NEAR(sx.eigenvalues[1], 1.0, 1e-14);
}

TEST(Spectral, SpinFactorDeterminantIsLorentzForm) {
  // Spin factor element (s, u): det = s^2 - |u|^2.
  JordanAlgebra alg(make_algebra(AlgebraKind::SpinFactor, 2, 4));
  const Rational s(5, 2);
  const std::vector<Rational> u = {Rational(3, 2), Rational(0), Rational(2)};
  Element<QSqrt2> x(4);
  x[0] = QSqrt2(s) * QSqrt2::sqrt2();
  for (int k = 0; k < 3; ++k) x[k + 1] = QSqrt2(u[k]) * QSqrt2::sqrt2();
  const Rational u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  EXPECT_EQ(alg.det<QSqrt2>(x), QSqrt2(s * s - u2));
  EXPECT_EQ(alg.trace<QSqrt2>(x), QSqrt2(2 * s));
  const auto ev = alg.exact_spin_eigenvalues(x);
  ASSERT_TRUE(ev.has_value());
  EXPECT_EQ((*ev)[0], QSqrt2(s + 5 / Rational(2)));
  EXPECT_EQ((*ev)[1], QSqrt2(s - 5 / Rational(2)));
}

TEST(Spectral, PolynomialInvariantsAgreeWithEigenvalues) {
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra alg(desc);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
      const auto x = random_rational_element(alg, rng);
      const auto xd = to_double(x);
      const auto sp = alg.spectrum(xd);
      EXPECT_NEAR(sp.trace, alg.trace<double>(xd), 1e-10) << desc.label();
      EXPECT_NEAR(sp.det, alg.det<QSqrt2>(x).to_double(), 1e-10) << desc.label();
    }
  }
}

TEST(Minors, LeadingMinorsOfSymmetricMatrix) {
  JordanAlgebra alg(make_algebra(AlgebraKind::SymReal, 2));
  // x = [[a, b], [b, c]] with a=2, b=3/2, c=5: coordinates (a, c, sqrt2 b).
  const Rational a(2), b(3, 2), c(5);
  const Element<QSqrt2> x = {QSqrt2(a), QSqrt2(c), QSqrt2(0, b)};
  EXPECT_EQ(alg.minor<QSqrt2>(x, 1), QSqrt2(a));
  EXPECT_EQ(alg.minor<QSqrt2>(x, 2), QSqrt2(a * c - b * b));
  const std::vector<QSqrt2> lam = {QSqrt2(3), QSqrt2(1)};
  const auto d = alg.from_eigenvalues<QSqrt2>(lam);
  const std::vector<int> m20 = {2, 0};
  EXPECT_EQ(alg.power_function<QSqrt2>(d, m20), QSqrt2(9));
}

TEST(Minors, PowerFunctionAtIdentityAndHomogeneity) {
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra alg(desc);
    const auto e = alg.identity<QSqrt2>();
    const auto x = alg.random_cone_point(31);
    std::vector<int> m(desc.rank, 0);
    m[0] = 3;
    if (desc.rank > 1) m[1] = 1;
    EXPECT_EQ(alg.power_function<QSqrt2>(e, m), QSqrt2(1));
    int weight = 0;
    for (int v : m) weight += v;
    Element<QSqrt2> tx = x;
    for (auto& c : tx) c *= QSqrt2(2);
    EXPECT_EQ(alg.power_function<QSqrt2>(tx, m), alg.power_function<QSqrt2>(x, m) * QSqrt2(1L << weight));
  }
}

TEST(Minors, SpinFactorFirstMinor) {
  // Delta_1(s, u) = <x, c_1> = s + u_1.
  JordanAlgebra alg(make_algebra(AlgebraKind::SpinFactor, 2, 5));
  Element<QSqrt2> x(5, QSqrt2(0));
  x[0] = QSqrt2(4) * QSqrt2::sqrt2();
  x[1] = QSqrt2(1) * QSqrt2::sqrt2();
  x[3] = QSqrt2(2) * QSqrt2::sqrt2();
  EXPECT_EQ(alg.minor<QSqrt2>(x, 1), QSqrt2(5));
}

TEST(Cone, MembershipAndInverse) {
  JordanAlgebra alg(make_algebra(AlgebraKind::SymReal, 2));
  const Element<QSqrt2> bad = {QSqrt2(1), QSqrt2(-1), QSqrt2(0)};
  EXPECT_FALSE(alg.in_cone(std::span<const QSqrt2>(bad)));
  EXPECT_FALSE(alg.in_cone(std::span<const double>(to_double(bad))));
  const auto e = alg.identity<QSqrt2>();
  EXPECT_TRUE(alg.in_cone(std::span<const QSqrt2>(e)));
  EXPECT_EQ(alg.inverse<QSqrt2>(e), e);
  const Element<QSqrt2> singular = {QSqrt2(1), QSqrt2(0), QSqrt2(0)};
  EXPECT_THROW(alg.inverse<QSqrt2>(singular), std::domain_error);
  for (const auto& desc : all_descriptors()) {
    JordanAlgebra a(desc);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto x = a.random_cone_point(seed);
      EXPECT_TRUE(a.in_cone(std::span<const QSqrt2>(x))) << desc.label();
      EXPECT_GE(a.spectrum(to_double(x)).eigenvalues.back(), 0.5 - 1e-12);
      EXPECT_EQ(a.random_cone_point(seed), x);
    }
  }
}

TEST(Minors, VanishingMinorWithNegativeExponentThrows) {
  JordanAlgebra alg(make_algebra(AlgebraKind::SymReal, 2));
  const Element<QSqrt2> x = {QSqrt2(0), QSqrt2(1), QSqrt2(1)};
  const std::vector<int> s = {-1, 0};
  EXPECT_THROW(alg.power_function<QSqrt2>(x, s), std::domain_error);
  (void)mat;
}
