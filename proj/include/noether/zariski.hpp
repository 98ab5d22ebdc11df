#pragma once

#include <string>
#include <utility>
#include <vector>

#include "noether/lattice.hpp"

namespace noether {

/// Throws NegativeOffDiagonalOnSupport unless Γ_i·Γ_j ≥ 0 for all distinct i, j in s.
inline void require_nonnegative_offdiagonal(const IntersectionLattice& lattice, const SupportSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (lattice.gram(s[a], s[b]) < 0)
        throw Error(Errc::NegativeOffDiagonalOnSupport,
                    lattice.name(s[a]) + "." + lattice.name(s[b]) + " < 0 on the negative support");
}

/// N = Σ γ_i Γ_i with γ_i > 0 on a negative definite support whose distinct
/// components meet non-negatively. Everything in the invariants and chains
/// modules is a function of this alone.
class NegativePart {
 public:
  NegativePart(IntersectionLattice lattice, SupportSet support, std::vector<Rational> gamma)
      : lattice_(std::move(lattice)), support_(std::move(support)), gamma_(std::move(gamma)) {
    lattice_.check_subset(support_);
    if (gamma_.size() != support_.size())
      throw Error(Errc::DimensionMismatch, "one coefficient per support index is required");
    for (std::size_t k = 0; k < gamma_.size(); ++k)
      if (gamma_[k].sign() <= 0)
        throw Error(Errc::ValidationError, "coefficient of " + lattice_.name(support_[k]) + " must be positive");
    if (!support_.empty()) {
      if (!is_negative_definite(lattice_, support_))
        throw Error(Errc::NotPseudoEffectiveInConfiguration, "negative support is not negative definite");
      require_nonnegative_offdiagonal(lattice_, support_);
    }
  }

  /// The negative part of an effective class with the support it actually has.
  static NegativePart from_class(const DivisorClass& n) {
    auto s = n.support();
    std::vector<Rational> g;
    for (auto i : s) g.push_back(n[i]);
    return NegativePart(n.lattice(), std::move(s), std::move(g));
  }

  const IntersectionLattice& lattice() const { return lattice_; }
  const SupportSet& support() const { return support_; }
  const std::vector<Rational>& gamma() const { return gamma_; }
  bool empty() const { return support_.empty(); }
  std::size_t size() const { return support_.size(); }

  /// e_k = -Γ_k² for the k-th support component.
  Rational e(std::size_t k) const { return Rational(static_cast<long>(lattice_.e(support_[k]))); }

  DivisorClass as_class() const {
    std::vector<Rational> c(lattice_.rank());
    for (std::size_t k = 0; k < support_.size(); ++k) c[support_[k]] = gamma_[k];
    return DivisorClass(lattice_, std::move(c));
  }

  /// Pairings of a class against each support component, in support order.
  std::vector<Rational> pattern_of(const DivisorClass& a) const { return pairings_on(a, support_); }

  NegativePart scaled(const Rational& m) const {
    std::vector<Rational> g = gamma_;
    for (auto& x : g) x *= m;
    return NegativePart(lattice_, support_, std::move(g));
  }

 private:
  IntersectionLattice lattice_;
  SupportSet support_;
  std::vector<Rational> gamma_;
};

struct ZariskiDecomposition {
  DivisorClass positive;
  DivisorClass negative;
  SupportSet support;
  std::vector<Rational> gamma;  // per support index
  int iterations = 0;

  NegativePart negative_part() const { return NegativePart(negative.lattice(), support, gamma); }
};

/// pair(D, Γ) ≥ 0 for every basis class Γ.
inline bool is_nef_on(const IntersectionLattice& lattice, const DivisorClass& d) {
  if (!(d.lattice() == lattice)) throw Error(Errc::LatticeMismatch, "divisor on another lattice");
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    if (pair_with_basis(d, i).sign() < 0) return false;
  return true;
}

/// Zariski decomposition relative to the classes of the lattice.
///
/// Growing-support iteration: start from the classes D meets negatively, solve
/// for N on the support so that P = D - N is orthogonal to it, and add every
/// class P still meets negatively. The support strictly grows, so this stops
/// after at most rank() rounds. A non negative definite support or a negative
/// coefficient means D has no decomposition inside this configuration.
inline ZariskiDecomposition zariski_decompose(const IntersectionLattice& lattice, const DivisorClass& d) {
  if (!(d.lattice() == lattice)) throw Error(Errc::LatticeMismatch, "divisor on another lattice");
  auto negative_against = [&](const DivisorClass& x) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < lattice.rank(); ++i)
      if (pair_with_basis(x, i).sign() < 0) s.push_back(i);
    return SupportSet(std::move(s));
  };

  SupportSet s = negative_against(d);
  if (s.empty()) return ZariskiDecomposition{d, lattice.zero(), {}, {}, 0};

  DivisorClass n = lattice.zero();
  DivisorClass p = d;
  int rounds = 0;
  for (;;) {
    if (!is_negative_definite(lattice, s))
      throw Error(Errc::NotPseudoEffectiveInConfiguration, "support Gram is not negative definite");
    n = solve_against_gram(lattice, s, pairings_on(d, s));
    for (auto i : s)
      if (n[i].sign() < 0)
        throw Error(Errc::NotPseudoEffectiveInConfiguration,
                    "negative coefficient " + n[i].str() + " on " + lattice.name(i));
    p = d - n;
    ++rounds;
    SupportSet grown = s.unite(negative_against(p));
    if (grown == s) break;
    s = std::move(grown);
  }
  require_nonnegative_offdiagonal(lattice, s);

  SupportSet support = n.support();
  std::vector<Rational> gamma;
  for (auto i : support) gamma.push_back(n[i]);
  return ZariskiDecomposition{std::move(p), std::move(n), std::move(support), std::move(gamma), rounds};
}

struct Volume {
  Rational value;
  bool big = false;  // value > 0
};

/// Vol(D) = P² of the configuration-relative decomposition.
inline Volume volume(const IntersectionLattice& lattice, const DivisorClass& d) {
  auto z = zariski_decompose(lattice, d);
  Rational v = pair(z.positive, z.positive);
  return Volume{v, v.sign() > 0};
}

struct StarLift {
  DivisorClass base;
  DivisorClass lifted;
  std::vector<Rational> correction;  // per n_support index
};

/// base + Σ c_i Γ_i with (lifted)·Γ_i = 0 for every i in n_support.
inline StarLift star_lift(const IntersectionLattice& lattice, const DivisorClass& base, const SupportSet& n_support) {
  if (!(base.lattice() == lattice)) throw Error(Errc::LatticeMismatch, "base class on another lattice");
  if (n_support.empty()) return StarLift{base, base, {}};
  auto targets = pairings_on(base, n_support);
  for (auto& t : targets) t = -t;
  auto delta = solve_against_gram(lattice, n_support, targets);
  std::vector<Rational> correction;
  for (auto i : n_support) correction.push_back(delta[i]);
  return StarLift{base, base + delta, std::move(correction)};
}

}  // namespace noether
