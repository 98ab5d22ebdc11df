#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "noether/error.hpp"
#include "noether/rational.hpp"

namespace noether {

namespace detail {
inline Rational q(std::int64_t x) { return Rational(static_cast<long>(x)); }

inline void require_nonnegative_e(const Rational& e) {
  if (e.sign() < 0) throw Error(Errc::ValidationError, "the invariant e must be non-negative, got " + e.str());
}
}  // namespace detail

/// Lower bound for the volume when |D| is composed with a pencil:
/// (h0 - 1)² / (h0 - 1 + e).
inline Rational pencil_bound(std::int64_t h0, const Rational& e) {
  if (h0 < 2) throw Error(Errc::H0TooSmall, "pencil bound needs h0 >= 2, got " + std::to_string(h0));
  detail::require_nonnegative_e(e);
  const Rational k = detail::q(h0 - 1);
  return k * k / (k + e);
}

/// h0 - (1 + 2e)/(1 + e): the refinement applying when Vol ≠ h0 - 2, and with
/// 2h0 in place of h0 the tighter of the two non-ruled refinements.
inline Rational refined_offset_tight(const Rational& e) { return (Rational(1) + Rational(2) * e) / (Rational(1) + e); }
/// (3 + 4e)/(1 + e): offset of the wider non-ruled refinement.
inline Rational refined_offset_wide(const Rational& e) { return (Rational(3) + Rational(4) * e) / (Rational(1) + e); }

struct SurfaceBounds {
  Rational base;     // h0 - 2
  Rational refined;  // h0 - (1+2e)/(1+e)
  bool non_ruled_applies = false;
  std::optional<Rational> non_ruled_base;           // 2h0 - 4
  std::optional<Rational> non_ruled_refined_wide;   // 2h0 - (3+4e)/(1+e)
  std::optional<Rational> non_ruled_refined_tight;  // 2h0 - (1+2e)/(1+e)
};

/// The non-ruled family applies when the surface is declared not ruled or of
/// non-negative Kodaira dimension.
inline bool non_ruled_applies(std::optional<bool> kappa_nonneg, std::optional<bool> ruled) {
  return (ruled && !*ruled) || (kappa_nonneg && *kappa_nonneg);
}

/// Bounds when |D| is not composed with a pencil. Both non-ruled refinements
/// are reported; they always differ by 2.
inline SurfaceBounds surface_bounds(std::int64_t h0, const Rational& e, std::optional<bool> kappa_nonneg,
                                    std::optional<bool> ruled) {
  if (h0 < 3) throw Error(Errc::H0TooSmall, "surface bounds need h0 >= 3, got " + std::to_string(h0));
  detail::require_nonnegative_e(e);
  SurfaceBounds b;
  const Rational h = detail::q(h0);
  b.base = h - Rational(2);
  b.refined = h - refined_offset_tight(e);
  b.non_ruled_applies = non_ruled_applies(kappa_nonneg, ruled);
  if (b.non_ruled_applies) {
    b.non_ruled_base = Rational(2) * h - Rational(4);
    b.non_ruled_refined_wide = Rational(2) * h - refined_offset_wide(e);
    b.non_ruled_refined_tight = Rational(2) * h - refined_offset_tight(e);
  }
  return b;
}

/// Log surfaces: bounds for Vol(K + Δ) from p̄_m, using e ≤ 2m for D = m(K + Δ).
inline Rational log_pair_bounds(std::int64_t pm, std::int64_t m, bool pencil, bool kappa_nonneg) {
  if (m < 1) throw Error(Errc::ValidationError, "m must be positive");
  const Rational m2 = detail::q(m) * detail::q(m);
  if (pencil) {
    if (pm < 2) throw Error(Errc::PmTooSmall, "pencil case needs p_m >= 2");
    return pencil_bound(pm, detail::q(2 * m)) / m2;
  }
  if (pm < 3) throw Error(Errc::PmTooSmall, "non-pencil case needs p_m >= 3");
  return (kappa_nonneg ? detail::q(2 * pm - 4) : detail::q(pm - 2)) / m2;
}

/// Foliations: bounds for Vol(F) from P_m(F), using e ≤ m for D = mK_F.
inline Rational foliation_bounds(std::int64_t pm, std::int64_t m, bool pencil, std::optional<bool> kappa_nonneg) {
  if (m < 1) throw Error(Errc::ValidationError, "m must be positive");
  if (pm < 2) throw Error(Errc::PmTooSmall, "P_m must be at least 2");
  const Rational m2 = detail::q(m) * detail::q(m);
  if (pencil) return pencil_bound(pm, detail::q(m)) / m2;
  if (pm < 3) throw Error(Errc::PmTooSmall, "a system not composed with a pencil has P_m >= 3");
  return (kappa_nonneg.value_or(false) ? detail::q(2 * pm - 4) : detail::q(pm - 2)) / m2;
}

/// 1/(λ²(1+λ)) for the ps-index λ, cross-checked against the pencil route
/// with P_λ = 2.
inline Rational ps_index_bound(std::int64_t lambda) {
  if (lambda < 1) throw Error(Errc::ValidationError, "ps-index must be positive");
  const Rational l = detail::q(lambda);
  const Rational direct = Rational(1) / (l * l * (Rational(1) + l));
  if (direct != foliation_bounds(2, lambda, true, std::nullopt))
    throw Error(Errc::CoefficientCheckFailed, "ps-index bound disagrees with the pencil route");
  return direct;
}

/// Minimal degree of a non-degenerate surface in P^d: d - 1, or 2d - 2 when
/// it is not ruled.
inline std::int64_t degree_lower_bound(std::int64_t d, bool ruled) { return ruled ? d - 1 : 2 * d - 2; }

enum class CliffordBranch { RiemannRoch, Clifford, DegreeZero };

inline std::string_view name(CliffordBranch b) {
  switch (b) {
    case CliffordBranch::RiemannRoch: return "riemann_roch";
    case CliffordBranch::Clifford: return "clifford";
    case CliffordBranch::DegreeZero: return "degree_zero";
  }
  return "riemann_roch";
}

struct CliffordReport {
  CliffordBranch branch = CliffordBranch::RiemannRoch;
  bool equality = false;               // deg = h0 - 1
  bool forces_rational_base = false;   // equality with deg ≥ 1 ⟺ Y ≅ P¹
};

/// Checks that (deg D, h⁰(D), g(Y)) is possible for an effective divisor on
/// a smooth curve. Throws InconsistentTriple otherwise.
inline CliffordReport clifford_check(std::int64_t deg, std::int64_t h0, std::int64_t genus) {
  if (deg < 0) throw Error(Errc::ValidationError, "degree must be non-negative");
  if (genus < 0) throw Error(Errc::ValidationError, "genus must be non-negative");
  auto bad = [&](const std::string& why) {
    return Error(Errc::InconsistentTriple, "(deg " + std::to_string(deg) + ", h0 " + std::to_string(h0) +
                                               ", g " + std::to_string(genus) + "): " + why);
  };
  if (h0 < 1) throw bad("an effective divisor has h0 >= 1");
  CliffordReport r;
  if (deg > 2 * genus - 2) {
    r.branch = CliffordBranch::RiemannRoch;
    if (h0 != deg - genus + 1) throw bad("expected h0 = deg - g + 1 = " + std::to_string(deg - genus + 1));
  } else if (deg > 0) {
    r.branch = CliffordBranch::Clifford;
    if (2 * h0 > deg + 2) throw bad("Clifford requires h0 <= deg/2 + 1");
  } else {
    r.branch = CliffordBranch::DegreeZero;
    if (h0 != 1) throw bad("a degree-zero effective divisor is zero, so h0 = 1");
  }
  if (deg < h0 - 1) throw bad("deg >= h0 - 1 fails");
  r.equality = deg == h0 - 1;
  r.forces_rational_base = r.equality && deg >= 1;
  if (r.forces_rational_base && genus != 0) throw bad("deg = h0 - 1 >= 1 forces genus 0");
  return r;
}

}  // namespace noether
