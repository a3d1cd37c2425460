#include <gtest/gtest.h>

#include <random>

#include "conelag/symfun.hpp"

using namespace conelag;

namespace {

Partition P(std::vector<int> p) { return Partition(std::move(p)); }

// Coefficient of t^k in prod_i (1 - x_i t)^{-a}, a = d/2: proportional to the
// one-row Jack polynomial. Built from the binomial series of each factor.
Rational one_row_generating(std::span<const Rational> x, int k, const Rational& a) {
  // series of (1 - y t)^{-a} = sum_j (a)_j / j! y^j t^j
  std::vector<Rational> acc(k + 1, 0);
  acc[0] = 1;
  for (const auto& xi : x) {
    std::vector<Rational> next(k + 1, 0);
    for (int i = 0; i <= k; ++i) {
      Rational c = 1;  // (a)_j / j! * xi^j
      for (int j = 0; i + j <= k; ++j) {
        next[i + j] += acc[i] * c;
        c *= (a + j) / Rational(j + 1) * xi;
      }
    }
    acc = next;
  }
  return acc[k];
}

// Schur polynomial by the bialternant formula, exact.
Rational schur(const Partition& l, std::span<const Rational> x) {
  const std::size_t r = x.size();
  Matrix<Rational> num(r, r), den(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      num(i, j) = rational_pow(x[i], l.parts[j] + static_cast<long>(r - 1 - j));
      den(i, j) = rational_pow(x[i], static_cast<long>(r - 1 - j));
    }
  return determinant(num) / determinant(den);
}

}  // namespace

TEST(Partitions, OrderAndCount) {
  const auto p = partitions(2, 2);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0], P({0, 0}));
  EXPECT_EQ(p[1], P({1, 0}));
  EXPECT_EQ(p[2], P({1, 1}));
  EXPECT_EQ(p[3], P({2, 0}));
  const auto q = partitions(1, 3);
  ASSERT_EQ(q.size(), 4u);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(q[k], P({k}));
  EXPECT_EQ(partitions(3, 3).size(), 7u);
}

TEST(Partitions, ParseAndShift) {
  EXPECT_EQ(parse_partition("2,1", 3), P({2, 1, 0}));
  EXPECT_EQ(parse_partition("(1,1,0)", 2), P({1, 1}));
  EXPECT_THROW(parse_partition("1,2", 2), std::invalid_argument);
  EXPECT_THROW(parse_partition("1,1,1", 2), std::invalid_argument);
  Partition out;
  EXPECT_TRUE(P({1, 0}).shifted(1, 1, out));
  EXPECT_EQ(out, P({1, 1}));
  EXPECT_FALSE(P({1, 1}).shifted(0, -1, out));
  EXPECT_FALSE(P({0, 0}).shifted(1, 1, out));
}

TEST(SymPoly, PowerSumConversion) {
  // lambda1 * lambda2 = (p1^2 - p2) / 2
  const auto ps = to_power_sums(SymPoly::monomial(P({1, 1})));
  Polynomial<Rational> expected(2);
  Monomial p1sq;
  p1sq.exps[0] = 2;
  expected.add_term(p1sq, frac(1, 2));
  expected.add_term(Monomial::variable(1), frac(-1, 2));
  EXPECT_EQ(ps, expected);
}

TEST(SymPoly, PowerSumRoundTripRank3) {
  const auto& parts = partitions(3, 5);
  std::vector<Rational> lam = {frac(3, 2), frac(-1, 3), 2};
  for (const auto& l : parts) {
    const SymPoly m = SymPoly::monomial(l);
    const auto ps = to_power_sums(m);
    std::vector<Rational> p(3);
    for (int k = 1; k <= 3; ++k)
      for (const auto& x : lam) p[k - 1] += rational_pow(x, k);
    EXPECT_EQ(ps.evaluate<Rational>(p), m.evaluate<Rational>(lam)) << l.str();
  }
}

TEST(SymPoly, ProductAndSymmetryCheck) {
  const SymPoly a = SymPoly::monomial(P({1, 0}));
  const SymPoly sq = a * a;  // (x+y)^2 = m_2 + 2 m_11
  EXPECT_EQ(sq.coefficient(P({2, 0})), 1);
  EXPECT_EQ(sq.coefficient(P({1, 1})), 2);
  Polynomial<Rational> asym = Polynomial<Rational>::variable(2, 0);
  EXPECT_THROW(SymPoly::from_polynomial(asym, 2), std::invalid_argument);
}

TEST(Spherical, LowDegreeExamples) {
  const SphericalTable t(make_algebra(AlgebraKind::SymReal, 2), 4);
  const SymPoly& psi1 = t.psi(P({1, 0}));
  EXPECT_EQ(psi1.coefficient(P({1, 0})), frac(1, 2));
  const SymPoly& psi20 = t.psi(P({2, 0}));
  EXPECT_EQ(psi20.coefficient(P({2, 0})), frac(3, 8));
  EXPECT_EQ(psi20.coefficient(P({1, 1})), frac(2, 8));
  std::vector<Rational> lam = {3, 1};
  EXPECT_EQ(psi20.evaluate<Rational>(lam), frac(9, 2));
  EXPECT_DOUBLE_EQ(psi20.evaluate<double>(std::vector<double>{3.0, 1.0}), 4.5);
  EXPECT_EQ(t.psi(P({2, 2})), SymPoly::monomial(P({2, 2})));
  EXPECT_EQ(t.psi(P({1, 1})), SymPoly::monomial(P({1, 1})));
}

TEST(Spherical, NormalizationHomogeneityIndependence) {
  for (const auto& desc : {make_algebra(AlgebraKind::SymReal, 3), make_algebra(AlgebraKind::HermComplex, 2),
                           make_algebra(AlgebraKind::SpinFactor, 2, 6)}) {
    const SphericalTable t(desc, 5);
    for (const auto& m : t.partitions()) {
      const SymPoly& psi = t.psi(m);
      EXPECT_EQ(psi.at_ones(), 1) << desc.label() << m.str();
      EXPECT_EQ(psi.degree(), m.weight());
      EXPECT_EQ(psi.homogeneous_part(m.weight()), psi);
      EXPECT_EQ(psi.dilate(frac(3, 2)), psi * rational_pow(frac(3, 2), m.weight()));
    }
    for (int k = 0; k <= 5; ++k) {
      const auto& c = t.change_of_basis(k);
      EXPECT_EQ(rank(c), c.rows()) << desc.label() << " weight " << k;
    }
  }
}

TEST(Spherical, OneRowAgainstGeneratingFunction) {
  for (const auto& desc : {make_algebra(AlgebraKind::SymReal, 2), make_algebra(AlgebraKind::SymReal, 3),
                           make_algebra(AlgebraKind::HermComplex, 3), make_algebra(AlgebraKind::SpinFactor, 2, 5)}) {
    const SphericalTable t(desc, 5);
    const Rational a = desc.degree / 2;
    std::vector<Rational> ones(desc.rank, 1);
    std::vector<Rational> x;
    for (int i = 0; i < desc.rank; ++i) x.push_back(frac(2 * i + 3, i + 2));
    for (int k = 0; k <= 5; ++k) {
      std::vector<int> parts(desc.rank, 0);
      parts[0] = k;
      const Rational expected = one_row_generating(x, k, a) / one_row_generating(ones, k, a);
      EXPECT_EQ(t.psi(P(parts)).evaluate<Rational>(x), expected) << desc.label() << " k=" << k;
    }
  }
}

TEST(Spherical, RankTwoFactorsThroughDeterminant) {
  const SphericalTable t(make_algebra(AlgebraKind::SpinFactor, 2, 5), 6);
  for (const auto& m : t.partitions()) {
    const SymPoly lhs = t.psi(m);
    SymPoly rhs = t.psi(P({m[0] - m[1], 0}));
    for (int i = 0; i < m[1]; ++i) rhs = rhs * SymPoly::monomial(P({1, 1}));
    EXPECT_EQ(lhs, rhs) << m.str();
  }
}

TEST(Spherical, HermitianCaseIsNormalizedSchur) {
  const SphericalTable t(make_algebra(AlgebraKind::HermComplex, 3), 5);
  std::vector<Rational> x = {frac(1, 2), 2, frac(-5, 3)};
  std::vector<Rational> y = {1, 2, 3};
  // bialternants need distinct points, so compare ratios at two points
  for (const auto& m : t.partitions()) {
    const Rational s_x = schur(m, x);
    const Rational s_y = schur(m, y);
    const Rational psi_x = t.psi(m).evaluate<Rational>(x);
    const Rational psi_y = t.psi(m).evaluate<Rational>(y);
    EXPECT_EQ(s_x * psi_y, s_y * psi_x) << m.str();
  }
}

TEST(Spherical, ExpansionExamples) {
  const SphericalTable t(make_algebra(AlgebraKind::SymReal, 2), 4);
  const auto a = t.expand(t.psi(P({2, 0})));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.at(P({2, 0})), 1);

  const SymPoly tr = SymPoly::monomial(P({1, 0}));
  const auto b = t.expand(tr * tr);
  Rational sum = 0;
  for (const auto& [m, c] : b) sum += c;
  EXPECT_EQ(sum, 4);
  EXPECT_EQ(t.combine(b), tr * tr);

  const auto c = t.expand(SymPoly::monomial(P({1, 1})));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.at(P({1, 1})), 1);
  EXPECT_THROW(t.expand(SymPoly::monomial(P({5, 0}))), std::out_of_range);
}

TEST(Spherical, ExpansionRoundTrip) {
  const SphericalTable t(make_algebra(AlgebraKind::SymReal, 3), 4);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-9, 9);
  std::map<Partition, Rational> a;
  for (const auto& m : t.partitions()) a[m] = frac(num(rng), 7);
  std::erase_if(a, [](const auto& kv) { return sgn(kv.second) == 0; });
  EXPECT_EQ(t.expand(t.combine(a)), a);
}

TEST(Binomials, BasicProperties) {
  for (const auto& desc : {make_algebra(AlgebraKind::SymReal, 2), make_algebra(AlgebraKind::HermComplex, 2),
                           make_algebra(AlgebraKind::SymReal, 3)}) {
    const SphericalTable t(desc, 4);
    for (const auto& m : t.partitions()) {
      EXPECT_EQ(t.binomial(m, Partition::zero(desc.rank)), 1);
      EXPECT_EQ(t.binomial(m, m), 1);
      for (const auto& [n, c] : t.binomials().at(m)) EXPECT_TRUE(m.contains(n)) << m.str() << " " << n.str();
    }
  }
}

TEST(Binomials, RankOneIsPascal) {
  const SphericalTable t(make_algebra(AlgebraKind::SymReal, 1), 6);
  for (int m = 0; m <= 6; ++m) {
    mpz_class c = 1;
    for (int k = 0; k <= m; ++k) {
      EXPECT_EQ(t.binomial(P({m}), P({k})), Rational(c));
      c = c * (m - k) / (k + 1);
    }
  }
}

TEST(Spherical, DegreeBound) {
  const SphericalTable t(make_algebra(AlgebraKind::SymReal, 2), 2);
  EXPECT_THROW(t.psi(P({3, 0})), std::out_of_range);
  EXPECT_EQ(spherical_table(make_algebra(AlgebraKind::SymReal, 2), 3).get(),
            spherical_table(make_algebra(AlgebraKind::SymReal, 2), 3).get());
}
