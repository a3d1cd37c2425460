#pragma once

// The Lie algebra g of vector fields X(z) = u + T z - P(z) v on the tube,
// stored as triples (u, T, v) with T in the structure algebra h.
//
// Brackets use the complexified convention
//   u = T1 u2 - T2 u1
//   T = [T1, T2] + 2 (u1 [] v2 - u2 [] v1)
//   v = T2^t v1 - T1^t v2
// which is the one for which the canonical triple obeys [x, y] = z and
// [z, x] = 2x, [z, y] = -2y.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelag/jordan.hpp"
#include "conelag/matrix.hpp"
#include "conelag/scalar.hpp"

namespace conelag {

template <class K>
struct LieVector {
  Element<K> u;
  Matrix<K> T;
  Element<K> v;

  static LieVector zero(std::size_t n) { return {Element<K>(n, K(0)), Matrix<K>(n, n), Element<K>(n, K(0))}; }

  LieVector& operator+=(const LieVector& o) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += o.u[i];
    T += o.T;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
  }
  LieVector& operator-=(const LieVector& o) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= o.u[i];
    T -= o.T;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
  }
  LieVector& operator*=(const K& s) {
    for (auto& c : u) c *= s;
    T *= s;
    for (auto& c : v) c *= s;
    return *this;
  }
  friend LieVector operator+(LieVector a, const LieVector& b) { return a += b; }
  friend LieVector operator-(LieVector a, const LieVector& b) { return a -= b; }
  friend LieVector operator*(LieVector a, const K& s) { return a *= s; }
  friend LieVector operator*(const K& s, LieVector a) { return a *= s; }
  friend bool operator==(const LieVector& a, const LieVector& b) { return a.u == b.u && a.T == b.T && a.v == b.v; }

  bool is_zero() const {
    auto z = [](const K& c) { return ScalarTraits<K>::is_zero(c); };
    return std::all_of(u.begin(), u.end(), z) && T.is_zero() && std::all_of(v.begin(), v.end(), z);
  }
};

namespace detail {

template <class K>
Element<K> sub(const Element<K>& a, const Element<K>& b) {
  Element<K> out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

template <class K>
Element<K> scaled(const Element<K>& a, const K& s) {
  Element<K> out(a);
  for (auto& c : out) c *= s;
  return out;
}

}  // namespace detail

/// x [] y = L(xy) + [L(x), L(y)].
template <class K>
Matrix<K> box(const JordanAlgebra& alg, std::span<const K> x, std::span<const K> y) {
  return alg.left<K>(alg.mul<K>(x, y)) + commutator(alg.left<K>(x), alg.left<K>(y));
}

template <class K>
LieVector<K> bracket(const JordanAlgebra& alg, const LieVector<K>& a, const LieVector<K>& b) {
  LieVector<K> out;
  out.u = detail::sub(a.T.apply(b.u), b.T.apply(a.u));
  out.T = commutator(a.T, b.T) + K(2) * (box<K>(alg, a.u, b.v) - box<K>(alg, b.u, a.v));
  out.v = detail::sub(b.T.transpose().apply(a.v), a.T.transpose().apply(b.v));
  return out;
}

/// Cartan involution X(u, T, v) -> X(v, -T^t, u).
template <class K>
LieVector<K> cartan_involution(const LieVector<K>& x) {
  return {x.v, -x.T.transpose(), x.u};
}

/// Value of the vector field at z: u + T z - P(z) v.
template <class K>
Element<K> vector_field_at(const JordanAlgebra& alg, const LieVector<K>& x, std::span<const K> z) {
  Element<K> out = x.T.apply(z);
  const Element<K> pv = alg.quad<K>(z).apply(x.v);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += x.u[i] - pv[i];
  return out;
}

template <class K>
struct Sl2Triple {
  LieVector<K> x, y, z;
};

/// x = 1/2 X(e, 2I, -e), y = 1/2 X(-e, 2I, e), z = X(-e, 0, -e).
template <class K>
Sl2Triple<K> sl2_triple(const JordanAlgebra& alg) {
  const std::size_t n = alg.dim();
  const Element<K> e = alg.identity<K>();
  const Element<K> me = detail::scaled(e, K(-1));
  const Matrix<K> two = K(2) * Matrix<K>::identity(n);
  const K half = K(1) / K(2);
  Sl2Triple<K> t;
  t.x = LieVector<K>{e, two, me} * half;
  t.y = LieVector<K>{me, two, e} * half;
  t.z = LieVector<K>{me, Matrix<K>(n, n), me};
  return t;
}

/// X(w, 2L(w), -w) (sign +1) or X(w, -2L(w), -w) (sign -1).
template <class K>
LieVector<K> p_vector(const JordanAlgebra& alg, std::span<const K> w, int sign) {
  const Element<K> wv(w.begin(), w.end());
  return {wv, K(2 * sign) * alg.left<K>(w), detail::scaled(wv, K(-1))};
}

/// Coefficients of target in the span of the given vectors; empty optional if outside.
template <class K>
std::optional<std::vector<K>> express_in_span(const std::vector<std::vector<K>>& columns, const std::vector<K>& target) {
  const std::size_t rows = target.size();
  const std::size_t k = columns.size();
  Matrix<K> aug(rows, k + 1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rows; ++i) aug(i, j) = columns[j][i];
  for (std::size_t i = 0; i < rows; ++i) aug(i, k) = target[i];
  const auto pivots = row_reduce(aug);
  std::vector<K> coef(k, K(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == k) return std::nullopt;
    coef[pivots[r]] = aug(r, k);
  }
  return coef;
}

/// The structure algebra h = span{L(a), [L(a), L(b)]} with an exact basis.
template <class K>
class StructureAlgebra {
 public:
  explicit StructureAlgebra(const JordanAlgebra& alg) : n_(alg.dim()) {
    std::vector<Matrix<K>> cand;
    std::vector<Matrix<K>> ls;
    for (std::size_t i = 0; i < n_; ++i) ls.push_back(alg.left<K>(alg.basis_vector<K>(i)));
    for (const auto& l : ls) cand.push_back(l);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) cand.push_back(commutator(ls[i], ls[j]));
    for (const auto& c : cand) {
      std::vector<std::vector<K>> cols;
      for (const auto& b : basis_) cols.push_back(b.data());
      if (!express_in_span(cols, c.data())) basis_.push_back(c);
    }
    for (const auto& b : basis_) flat_.push_back(b.data());
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix<K>>& basis() const { return basis_; }

  std::optional<std::vector<K>> coordinates(const Matrix<K>& t) const { return express_in_span(flat_, t.data()); }
  bool contains(const Matrix<K>& t) const { return coordinates(t).has_value(); }

  /// Killing form of h: Tr(ad T1 ad T2) computed on the basis.
  K killing(const Matrix<K>& t1, const Matrix<K>& t2) const {
    K tr(0);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const Matrix<K> img = commutator(t1, commutator(t2, basis_[k]));
      const auto c = coordinates(img);
      if (!c) throw std::logic_error("structure algebra is not closed under brackets");
      tr += (*c)[k];
    }
    return tr;
  }

 private:
  std::size_t n_;
  std::vector<Matrix<K>> basis_;
  std::vector<std::vector<K>> flat_;
};

/// Exact model of g: basis X(e_i,0,0), X(0,H_k,0), X(0,0,e_i).
template <class K>
class LieAlgebraModel {
 public:
  explicit LieAlgebraModel(const JordanAlgebra& alg) : alg_(alg), h_(alg) {
    const std::size_t n = alg.dim();
    for (std::size_t i = 0; i < n; ++i) {
      auto x = LieVector<K>::zero(n);
      x.u[i] = K(1);
      basis_.push_back(std::move(x));
    }
    for (const auto& t : h_.basis()) {
      auto x = LieVector<K>::zero(n);
      x.T = t;
      basis_.push_back(std::move(x));
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto x = LieVector<K>::zero(n);
      x.v[i] = K(1);
      basis_.push_back(std::move(x));
    }
  }

  const JordanAlgebra& algebra() const { return alg_; }
  const StructureAlgebra<K>& structure() const { return h_; }
  const std::vector<LieVector<K>>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  LieVector<K> bracket(const LieVector<K>& a, const LieVector<K>& b) const { return conelag::bracket<K>(alg_, a, b); }

  std::vector<K> coordinates(const LieVector<K>& x) const {
    const auto tc = h_.coordinates(x.T);
    if (!tc) throw std::invalid_argument("T-component is not in the structure algebra");
    std::vector<K> out(x.u.begin(), x.u.end());
    out.insert(out.end(), tc->begin(), tc->end());
    out.insert(out.end(), x.v.begin(), x.v.end());
    return out;
  }

  /// Trace route: Tr(ad X1 ad X2) on the basis of g.
  K killing_via_ad(const LieVector<K>& a, const LieVector<K>& b) const {
    K tr(0);
    for (std::size_t k = 0; k < basis_.size(); ++k) tr += coordinates(bracket(a, bracket(b, basis_[k])))[k];
    return tr;
  }

  /// Formula route: B_h(T1, T2) + 2 Tr(T1 T2) + 4 (n/r)(<u1, v2> + <u2, v1>).
  K killing_formula(const LieVector<K>& a, const LieVector<K>& b) const {
    const auto& desc = alg_.descriptor();
    const K nr = scalar_from<K>(desc.dim_over_rank());
    const K pair = alg_.inner<K>(a.u, b.v) + alg_.inner<K>(b.u, a.v);
    return h_.killing(a.T, b.T) + K(2) * trace_of_product(a.T, b.T) + K(4) * nr * pair;
  }

 private:
  const JordanAlgebra& alg_;
  StructureAlgebra<K> h_;
  std::vector<LieVector<K>> basis_;
};

}  // namespace conelag
