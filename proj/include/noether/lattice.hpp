#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "noether/error.hpp"
#include "noether/rational.hpp"

namespace noether {

/// Square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// Exact determinant of an integer matrix (Bareiss with row pivoting).
inline Integer exact_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace detail {

/// Gauss-Jordan elimination. Solves a x = b; throws SingularSystem when a is
/// singular.
inline std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw Error(Errc::SingularSystem, "Gram submatrix is singular");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(pivot, k), a(col, k));
      std::swap(b[pivot], b[col]);
    }
    const Rational inv = Rational(1) / a(col, col);
    for (std::size_t k = col; k < n; ++k) a(col, k) *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a(row, col).is_zero()) continue;
      const Rational f = a(row, col);
      for (std::size_t k = col; k < n; ++k) a(row, k) -= f * a(col, k);
      b[row] -= f * b[col];
    }
  }
  return b;
}

inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = Rational(1);
    auto col = solve(a, std::move(e));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

/// Leading principal minors det(G_1), ..., det(G_n) of an integer matrix by
/// Bareiss fraction-free elimination without pivoting. After the first
/// vanishing minor the rest are computed one block at a time.
inline std::vector<Integer> leading_minors(const std::vector<std::vector<Integer>>& g) {
  const std::size_t n = g.size();
  std::vector<Integer> minors;
  minors.reserve(n);
  auto m = g;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(m[k][k]);
    if (m[k][k] == 0) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  for (std::size_t k = minors.size(); k < n; ++k) {
    std::vector<std::vector<Integer>> block(k + 1, std::vector<Integer>(k + 1));
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j <= k; ++j) block[i][j] = g[i][j];
    minors.push_back(exact_determinant(std::move(block)));
  }
  return minors;
}

}  // namespace detail

/// Sorted, duplicate-free set of basis indices.
class SupportSet {
 public:
  SupportSet() = default;

  /// Throws IndexOutOfRange on duplicates; the order of `indices` is irrelevant.
  explicit SupportSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
      throw Error(Errc::IndexOutOfRange, "duplicate index in support set");
  }

  static SupportSet all(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return SupportSet(std::move(v));
  }

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<std::size_t>& indices() const { return indices_; }

  bool contains(std::size_t i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

  /// Position of basis index i within the set, or size() when absent.
  std::size_t position(std::size_t i) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
    return (it != indices_.end() && *it == i) ? static_cast<std::size_t>(it - indices_.begin()) : size();
  }

  SupportSet unite(const SupportSet& o) const {
    std::vector<std::size_t> out;
    std::set_union(begin(), end(), o.begin(), o.end(), std::back_inserter(out));
    return SupportSet(std::move(out));
  }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

class DivisorClass;

/// A finite basis of curve classes with an integral symmetric Gram matrix.
///
/// Cheap to copy: the data is shared and immutable.
class IntersectionLattice {
 public:
  static IntersectionLattice build(std::vector<std::string> names, std::vector<std::vector<std::int64_t>> gram) {
    if (names.empty()) throw Error(Errc::DimensionMismatch, "lattice needs at least one class");
    if (gram.size() != names.size())
      throw Error(Errc::DimensionMismatch, "gram has " + std::to_string(gram.size()) + " rows for " +
                                               std::to_string(names.size()) + " names");
    for (const auto& row : gram)
      if (row.size() != names.size()) throw Error(Errc::DimensionMismatch, "gram is not square");
    std::unordered_set<std::string> seen;
    for (const auto& n : names)
      if (!seen.insert(n).second) throw Error(Errc::DuplicateName, "duplicate class label '" + n + "'");
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (gram[i][j] != gram[j][i])
          throw Error(Errc::AsymmetricGram, names[i] + "." + names[j] + " != " + names[j] + "." + names[i]);
    IntersectionLattice l;
    l.data_ = std::make_shared<const Data>(Data{std::move(names), std::move(gram)});
    return l;
  }

  std::size_t rank() const { return data_->names.size(); }
  const std::vector<std::string>& names() const { return data_->names; }
  const std::string& name(std::size_t i) const { return data_->names.at(i); }
  std::int64_t gram(std::size_t i, std::size_t j) const { return data_->gram.at(i).at(j); }
  const std::vector<std::vector<std::int64_t>>& gram_matrix() const { return data_->gram; }

  /// e_i = -Γ_i².
  std::int64_t e(std::size_t i) const { return -gram(i, i); }

  std::size_t index_of(std::string_view label) const {
    const auto& n = data_->names;
    auto it = std::find(n.begin(), n.end(), label);
    if (it == n.end()) throw Error(Errc::UnknownLabel, "no class labelled '" + std::string(label) + "'");
    return static_cast<std::size_t>(it - n.begin());
  }

  void check_index(std::size_t i) const {
    if (i >= rank())
      throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i) + " outside rank " + std::to_string(rank()));
  }

  void check_subset(const SupportSet& s) const {
    for (auto i : s) check_index(i);
  }

  /// Gram submatrix on s, as rationals.
  RationalMatrix submatrix(const SupportSet& s) const {
    RationalMatrix m(s.size());
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = 0; b < s.size(); ++b) m(a, b) = Rational(static_cast<long>(gram(s[a], s[b])));
    return m;
  }

  DivisorClass zero() const;
  DivisorClass basis(std::size_t i) const;
  DivisorClass basis(std::string_view label) const;
  DivisorClass make(std::vector<Rational> coeffs) const;

  friend bool operator==(const IntersectionLattice& a, const IntersectionLattice& b) {
    return a.data_ == b.data_ || (a.data_->names == b.data_->names && a.data_->gram == b.data_->gram);
  }

 private:
  IntersectionLattice() = default;

  struct Data {
    std::vector<std::string> names;
    std::vector<std::vector<std::int64_t>> gram;
  };
  std::shared_ptr<const Data> data_;
};

/// Exact rational coefficient vector over a lattice basis.
class DivisorClass {
 public:
  DivisorClass(IntersectionLattice lattice, std::vector<Rational> coeffs)
      : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != lattice_.rank())
      throw Error(Errc::DimensionMismatch, "divisor has " + std::to_string(coeffs_.size()) +
                                               " coefficients for rank " + std::to_string(lattice_.rank()));
  }

  const IntersectionLattice& lattice() const { return lattice_; }
  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }
  /// All coefficients ≥ 0.
  bool is_effective() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.sign() >= 0; });
  }
  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_integer(); });
  }
  /// Indices with a nonzero coefficient.
  SupportSet support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) s.push_back(i);
    return SupportSet(std::move(s));
  }

  DivisorClass& operator+=(const DivisorClass& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  DivisorClass& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
  friend DivisorClass operator*(DivisorClass a, const Rational& s) { return a *= s; }
  DivisorClass operator-() const { return Rational(-1) * *this; }

  /// Componentwise a ≥ b.
  friend bool dominates(const DivisorClass& a, const DivisorClass& b) {
    a.require_same(b);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] < b[i]) return false;
    return true;
  }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.lattice_ == b.lattice_ && a.coeffs_ == b.coeffs_;
  }

  void require_same(const DivisorClass& o) const {
    if (!(lattice_ == o.lattice_)) throw Error(Errc::LatticeMismatch, "classes live on different lattices");
  }

 private:
  IntersectionLattice lattice_;
  std::vector<Rational> coeffs_;
};

inline DivisorClass IntersectionLattice::zero() const { return DivisorClass(*this, std::vector<Rational>(rank())); }

inline DivisorClass IntersectionLattice::basis(std::size_t i) const {
  check_index(i);
  std::vector<Rational> c(rank());
  c[i] = Rational(1);
  return DivisorClass(*this, std::move(c));
}

inline DivisorClass IntersectionLattice::basis(std::string_view label) const { return basis(index_of(label)); }

inline DivisorClass IntersectionLattice::make(std::vector<Rational> coeffs) const {
  return DivisorClass(*this, std::move(coeffs));
}

/// Convenience: IntersectionLattice::build.
inline IntersectionLattice build_lattice(std::vector<std::string> names, std::vector<std::vector<std::int64_t>> gram) {
  return IntersectionLattice::build(std::move(names), std::move(gram));
}

/// D · Γ_i.
inline Rational pair_with_basis(const DivisorClass& d, std::size_t i) {
  const auto& l = d.lattice();
  l.check_index(i);
  Rational s;
  for (std::size_t k = 0; k < l.rank(); ++k)
    if (!d[k].is_zero() && l.gram(k, i) != 0) s += d[k] * Rational(static_cast<long>(l.gram(k, i)));
  return s;
}

/// aᵀ · gram · b.
inline Rational pair(const DivisorClass& a, const DivisorClass& b) {
  a.require_same(b);
  const auto& l = a.lattice();
  Rational s;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    if (a[i].is_zero()) continue;
    Rational row;
    for (std::size_t j = 0; j < l.rank(); ++j)
      if (!b[j].is_zero() && l.gram(i, j) != 0) row += Rational(static_cast<long>(l.gram(i, j))) * b[j];
    s += a[i] * row;
  }
  return s;
}

/// Sylvester's criterion on the Gram submatrix of `subset`: negative definite
/// iff (-1)^k det(G_k) > 0 for every leading principal minor.
inline bool is_negative_definite(const IntersectionLattice& lattice, const SupportSet& subset) {
  if (subset.empty()) throw Error(Errc::EmptySubset, "negative-definiteness needs a nonempty subset");
  lattice.check_subset(subset);
  std::vector<std::vector<Integer>> g(subset.size(), std::vector<Integer>(subset.size()));
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = 0; b < subset.size(); ++b)
      g[a][b] = Integer(static_cast<long>(lattice.gram(subset[a], subset[b])));
  auto minors = detail::leading_minors(g);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int want = (k % 2 == 0) ? -1 : 1;  // sign of det(G_{k+1}) for a negative definite form
    if (sgn(minors[k]) != want) return false;
  }
  return true;
}

/// The unique class supported on `subset` whose pairing with Γ_j equals
/// targets[j] for every j in `subset`.
inline DivisorClass solve_against_gram(const IntersectionLattice& lattice, const SupportSet& subset,
                                       std::span<const Rational> targets) {
  lattice.check_subset(subset);
  if (targets.size() != subset.size())
    throw Error(Errc::DimensionMismatch, "one target per subset index is required");
  std::vector<Rational> coeffs(lattice.rank());
  if (!subset.empty()) {
    auto x = detail::solve(lattice.submatrix(subset), std::vector<Rational>(targets.begin(), targets.end()));
    for (std::size_t k = 0; k < subset.size(); ++k) coeffs[subset[k]] = x[k];
  }
  return DivisorClass(lattice, std::move(coeffs));
}

/// Adjunction: p_a(C) = 1 + (C² + K·C)/2.
inline Rational arithmetic_genus(const IntersectionLattice& lattice, const DivisorClass& canonical,
                                 std::size_t curve_index) {
  lattice.check_index(curve_index);
  if (!(canonical.lattice() == lattice)) throw Error(Errc::LatticeMismatch, "canonical class on another lattice");
  const Rational c2(static_cast<long>(lattice.gram(curve_index, curve_index)));
  return Rational(1) + (c2 + pair_with_basis(canonical, curve_index)) / Rational(2);
}

/// Pairings of d against every index of s, in order.
inline std::vector<Rational> pairings_on(const DivisorClass& d, const SupportSet& s) {
  std::vector<Rational> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(pair_with_basis(d, i));
  return out;
}

}  // namespace noether
