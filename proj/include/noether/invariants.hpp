#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "noether/zariski.hpp"

namespace noether {

/// A pattern t_i = A·Γ_i over the components of N, in support order.
using Pattern = std::vector<Rational>;

inline Pattern make_pattern(const std::vector<std::int64_t>& t) {
  Pattern p;
  p.reserve(t.size());
  for (auto x : t) p.emplace_back(static_cast<long>(x));
  return p;
}

/// E_A (capped) or E(A) (uncapped) on Supp(N), with A entering only through
/// its pattern.
struct ExceptionalSolution {
  bool capped = true;
  std::vector<Rational> coeffs;  // β_i (capped) or b_i (uncapped), per support index
  Pattern pattern;

  DivisorClass as_class(const NegativePart& n) const {
    std::vector<Rational> c(n.lattice().rank());
    for (std::size_t k = 0; k < coeffs.size(); ++k) c[n.support()[k]] = coeffs[k];
    return DivisorClass(n.lattice(), std::move(c));
  }

  /// A·E = Σ t_i x_i.
  Rational pair_with_pattern() const {
    Rational s;
    for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * pattern[k];
    return s;
  }
};

namespace detail {

inline void require_pattern(const NegativePart& n, const Pattern& t) {
  if (t.size() != n.size())
    throw Error(Errc::DimensionMismatch, "pattern length " + std::to_string(t.size()) + " for support of size " +
                                             std::to_string(n.size()));
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t[k].sign() < 0) throw Error(Errc::NegativePattern, "pattern entry on " + n.lattice().name(n.support()[k]) + " is negative");
}

inline Rational capped_entry(const Rational& t) { return t < Rational(1) ? t : Rational(1); }

}  // namespace detail

/// Solves E·Γ_i = -min{1, t_i} (capped) or E·Γ_i = -t_i (uncapped), then
/// checks the componentwise lower bound x_i ≥ (target_i)/e_i.
inline ExceptionalSolution exceptional_solution(const NegativePart& n, const Pattern& pattern, bool capped) {
  detail::require_pattern(n, pattern);
  if (n.empty()) return ExceptionalSolution{capped, {}, pattern};
  std::vector<Rational> rhs(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) rhs[k] = -(capped ? detail::capped_entry(pattern[k]) : pattern[k]);
  auto x = detail::solve(n.lattice().submatrix(n.support()), rhs);
  for (std::size_t k = 0; k < n.size(); ++k) {
    const Rational lower = -rhs[k] / n.e(k);
    if (x[k].sign() < 0 || x[k] < lower)
      throw Error(Errc::CoefficientCheckFailed, "exceptional coefficient on " + n.lattice().name(n.support()[k]) +
                                                    " is " + x[k].str() + ", below " + lower.str());
  }
  return ExceptionalSolution{capped, std::move(x), pattern};
}

/// 𝔢_A for an N-nef pattern: (A·N)/(A·E_A), or 0 when A·N = 0.
inline Rational e_of_pattern(const NegativePart& n, const Pattern& pattern) {
  detail::require_pattern(n, pattern);
  Rational an;
  for (std::size_t k = 0; k < n.size(); ++k) an += n.gamma()[k] * pattern[k];
  if (an.is_zero()) return Rational(0);
  const Rational ae = exceptional_solution(n, pattern, true).pair_with_pattern();
  if (ae.sign() <= 0)
    throw Error(Errc::CoefficientCheckFailed, "A.E_A = " + ae.str() + " is not positive while A.N > 0");
  return an / ae;
}

/// 𝔢_A of an N-nef class A. Throws NotNNef when A meets a component of N negatively.
inline Rational e_of_divisor_pair(const NegativePart& n, const DivisorClass& a) {
  a.require_same(n.as_class());
  auto t = n.pattern_of(a);
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t[k].sign() < 0) throw Error(Errc::NotNNef, "A." + n.lattice().name(n.support()[k]) + " = " + t[k].str());
  return e_of_pattern(n, t);
}

inline Rational e_of_divisor_pair(const ZariskiDecomposition& z, const DivisorClass& a) {
  return e_of_divisor_pair(z.negative_part(), a);
}

/// 𝔢₀ = max_i γ_i·(-Γ_i²), or 0 when N = 0.
inline Rational e_zero(const NegativePart& n) {
  Rational best;
  for (std::size_t k = 0; k < n.size(); ++k) best = max(best, n.gamma()[k] * n.e(k));
  return best;
}

inline Rational e_zero(const ZariskiDecomposition& z) { return e_zero(z.negative_part()); }

struct EInvariantResult {
  Rational value;
  bool attained = true;
  std::vector<int> witness_pattern;     // 0/1 indicator of σ, in support order
  std::optional<std::size_t> ray;       // support position of the limiting ray when not attained
  Rational e_zero;
};

inline constexpr std::size_t kDefaultSupportCap = 16;

/// 𝔢(D): the supremum of 𝔢_A over all N-nef integer patterns t ≥ 0.
///
/// For σ = {i : t_i ≥ 1} the capped solution is β(σ) = -G⁻¹·1_σ, and on the
/// region {t_i ≥ 1 on σ, t_i = 0 off σ} the ratio (Σγ_i t_i)/(Σβ_i t_i) is
/// linear-fractional. Its supremum there is the larger of the vertex value at
/// t = 1_σ and the ray limits γ_i/β_i(σ) for i in σ. The vertex is attained;
/// a ray limit that strictly beats every vertex is only a supremum.
///
/// Ties go to the lexicographically smallest indicator vector.
inline EInvariantResult e_sup(const NegativePart& n, std::size_t max_support = kDefaultSupportCap) {
  EInvariantResult out;
  if (n.empty()) return out;
  const std::size_t k = n.size();
  if (k > max_support || k >= 63)
    throw Error(Errc::SupportTooLarge, "support of size " + std::to_string(k) + " exceeds cap " +
                                           std::to_string(max_support));
  out.e_zero = e_zero(n);

  // W = -G⁻¹ has non-negative entries (G is an M-matrix up to sign).
  RationalMatrix w = detail::inverse(n.lattice().submatrix(n.support()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) w(i, j) = -w(i, j);

  std::optional<Rational> best_vertex;
  std::vector<int> vertex_pattern;
  std::optional<Rational> best_ray;
  std::vector<int> ray_pattern;
  std::size_t ray_index = 0;

  std::vector<Rational> beta(k);
  std::vector<int> indicator(k);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) indicator[i] = static_cast<int>((mask >> i) & 1U);
    for (std::size_t i = 0; i < k; ++i) {
      Rational s;
      for (std::size_t j = 0; j < k; ++j)
        if (indicator[j]) s += w(i, j);
      beta[i] = s;
    }
    Rational num, den;
    for (std::size_t i = 0; i < k; ++i)
      if (indicator[i]) {
        num += n.gamma()[i];
        den += beta[i];
      }
    const Rational vertex = num / den;
    if (!best_vertex || *best_vertex < vertex || (*best_vertex == vertex && indicator < vertex_pattern)) {
      best_vertex = vertex;
      vertex_pattern = indicator;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (!indicator[i]) continue;
      const Rational ray = n.gamma()[i] / beta[i];
      if (!best_ray || *best_ray < ray ||
          (*best_ray == ray && (indicator < ray_pattern || (indicator == ray_pattern && i < ray_index)))) {
        best_ray = ray;
        ray_pattern = indicator;
        ray_index = i;
      }
    }
  }

  if (*best_ray <= *best_vertex) {
    out.value = *best_vertex;
    out.attained = true;
    out.witness_pattern = vertex_pattern;
  } else {
    out.value = *best_ray;
    out.attained = false;
    out.witness_pattern = ray_pattern;
    out.ray = ray_index;
  }
  return out;
}

inline EInvariantResult e_sup(const ZariskiDecomposition& z, std::size_t max_support = kDefaultSupportCap) {
  return e_sup(z.negative_part(), max_support);
}

struct FibreData {
  std::int64_t n = 1;
  DivisorClass fibre;
};

struct EInequalityReport {
  Rational e_a;
  Rational a_dot_n;
  Rational a_dot_uncapped;  // A·E(A)
  Rational slack;           // (𝔢_A E(A) - N)·A
  bool holds = true;
  std::optional<Rational> scaled_slack;  // ((𝔢_A/n) E(A) - N)·A
  std::optional<bool> scaled_holds;
};

/// Evaluates (𝔢_A E(A) - N)·A and, for A ≡_N nF, ((𝔢_A/n) E(A) - N)·A.
inline EInequalityReport verify_e_inequality(const NegativePart& n, const DivisorClass& a,
                                             const std::optional<FibreData>& fibre = std::nullopt) {
  EInequalityReport r;
  r.e_a = e_of_divisor_pair(n, a);
  auto t = n.pattern_of(a);
  for (std::size_t k = 0; k < n.size(); ++k) r.a_dot_n += n.gamma()[k] * t[k];
  r.a_dot_uncapped = exceptional_solution(n, t, false).pair_with_pattern();
  r.slack = r.e_a * r.a_dot_uncapped - r.a_dot_n;
  r.holds = r.slack.sign() >= 0;
  if (fibre) {
    if (fibre->n <= 0) throw Error(Errc::ValidationError, "fibre multiplicity must be positive");
    auto tf = n.pattern_of(fibre->fibre);
    const Rational mult(static_cast<long>(fibre->n));
    for (std::size_t k = 0; k < n.size(); ++k) {
      if (tf[k].sign() < 0) throw Error(Errc::NotNNef, "F." + n.lattice().name(n.support()[k]) + " < 0");
      if (t[k] != mult * tf[k])
        throw Error(Errc::NotNEquivalent, "A." + n.lattice().name(n.support()[k]) + " != n F." +
                                              n.lattice().name(n.support()[k]));
    }
    r.scaled_slack = r.e_a / mult * r.a_dot_uncapped - r.a_dot_n;
    r.scaled_holds = r.scaled_slack->sign() >= 0;
  }
  return r;
}

}  // namespace noether
