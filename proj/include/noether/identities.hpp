#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noether/invariants.hpp"
#include "noether/zariski.hpp"

namespace noether {

/// Z ≥ Z* ≥ 0, M* ≥ M + Σ(MΓ_i/e_i)Γ_i ≥ M, and the chain
/// P² ≥ (M*)² ≥ M² + Σ(MΓ_i)²/e_i ≥ M².
struct StarLiftInequalities {
  bool z_geq_zstar = false;
  bool zstar_nonneg = false;
  bool zstar_zero = false;
  bool supports_equal = false;  // Supp Z = Supp N
  std::vector<Rational> m_lower;  // coefficients of M + Σ(MΓ_i/e_i)Γ_i
  bool mstar_geq_mlower = false;
  bool mlower_geq_m = false;
  bool mstar_equals_m = false;
  bool mn_zero = false;
  Rational p2, mstar2, m_lower_value, m2;
  bool chain_holds = false;
};

/// (1+𝔢_M)P² ≥ (1+𝔢_M)M² + MZ + (1+𝔢_M)PZ + 𝔢_M·MZ*.
struct VolumeGapInequality {
  Rational e_m;
  Rational lhs;
  Rational rhs;
  bool holds = false;
  bool equality = false;
};

/// P² = M²  ⟺  MZ = 0  ⟺  (M = P and Z = N).
struct MovingPartEquivalence {
  bool p2_equals_m2 = false;
  bool mz_zero = false;
  bool m_is_p_and_z_is_n = false;
  bool all_equal() const { return p2_equals_m2 == mz_zero && mz_zero == m_is_p_and_z_is_n; }
};

/// FZ* = 0  ⟺  Z* = 0  ⟺  Supp N = Supp Z, each implying PZ = 0.
struct FibreEquivalence {
  Rational fz_star;
  Rational pz;
  bool fz_star_zero = false;
  bool zstar_zero = false;
  bool supports_equal = false;
  bool all_equal() const { return fz_star_zero == zstar_zero && zstar_zero == supports_equal; }
  bool consequence_holds() const { return !zstar_zero || pz.is_zero(); }
};

struct IdentityReport {
  ZariskiDecomposition decomposition;
  StarLift m_star;
  StarLift z_star;
  bool m_nef_on_configuration = false;
  bool z_effective = false;
  Rational mz, pz, mz_star;
  StarLiftInequalities star;
  std::optional<VolumeGapInequality> gap;  // needs M to be N-nef
  MovingPartEquivalence equivalence;
  std::optional<FibreEquivalence> fibre;
  std::vector<std::string> warnings;
};

/// Throws SplitMismatch unless d = m + z exactly.
inline void require_split(const DivisorClass& d, const DivisorClass& m, const DivisorClass& z) {
  if (!(m + z == d)) throw Error(Errc::SplitMismatch, "D is not M + Z");
}

/// All numerical identities linking the Zariski decomposition of D to a
/// declared moving/fixed split D = M + Z.
inline IdentityReport decomposition_identities(const IntersectionLattice& lattice, const DivisorClass& d,
                                               const DivisorClass& m, const DivisorClass& z,
                                               const std::optional<DivisorClass>& fibre = std::nullopt) {
  d.require_same(m);
  d.require_same(z);
  require_split(d, m, z);

  auto zd = zariski_decompose(lattice, d);
  const SupportSet& s = zd.support;
  const DivisorClass& p = zd.positive;
  const DivisorClass& n = zd.negative;

  IdentityReport r{zd, star_lift(lattice, m, s), star_lift(lattice, z, s)};
  r.m_nef_on_configuration = is_nef_on(lattice, m);
  r.z_effective = z.is_effective();
  if (!r.m_nef_on_configuration) r.warnings.emplace_back("M is not nef on the configuration");
  if (!r.z_effective) r.warnings.emplace_back("Z is not effective");

  const DivisorClass& mstar = r.m_star.lifted;
  const DivisorClass& zstar = r.z_star.lifted;
  r.mz = pair(m, z);
  r.pz = pair(p, z);
  r.mz_star = pair(m, zstar);

  auto& st = r.star;
  st.z_geq_zstar = dominates(z, zstar);
  st.zstar_nonneg = zstar.is_effective();
  st.zstar_zero = zstar.is_zero();
  st.supports_equal = z.support() == s;
  std::vector<Rational> lower = m.coeffs();
  Rational lower_sum;
  for (auto i : s) {
    const Rational mg = pair_with_basis(m, i);
    const Rational ei(static_cast<long>(lattice.e(i)));
    lower[i] += mg / ei;
    lower_sum += mg * mg / ei;
  }
  const DivisorClass m_lower = lattice.make(lower);
  st.m_lower = std::move(lower);
  st.mstar_geq_mlower = dominates(mstar, m_lower);
  st.mlower_geq_m = dominates(m_lower, m);
  st.mstar_equals_m = mstar == m;
  st.mn_zero = pair(m, n).is_zero();
  st.p2 = pair(p, p);
  st.mstar2 = pair(mstar, mstar);
  st.m2 = pair(m, m);
  st.m_lower_value = st.m2 + lower_sum;
  st.chain_holds = st.p2 >= st.mstar2 && st.mstar2 >= st.m_lower_value && st.m_lower_value >= st.m2;

  bool m_n_nef = true;
  for (auto i : s)
    if (pair_with_basis(m, i).sign() < 0) m_n_nef = false;
  if (m_n_nef) {
    VolumeGapInequality g;
    g.e_m = e_of_divisor_pair(zd.negative_part(), m);
    const Rational one_e = Rational(1) + g.e_m;
    g.lhs = one_e * st.p2;
    g.rhs = one_e * st.m2 + r.mz + one_e * r.pz + g.e_m * r.mz_star;
    g.holds = g.lhs >= g.rhs;
    g.equality = g.lhs == g.rhs;
    r.gap = g;
  } else {
    r.warnings.emplace_back("M is not N-nef; e_M is undefined");
  }

  r.equivalence.p2_equals_m2 = st.p2 == st.m2;
  r.equivalence.mz_zero = r.mz.is_zero();
  r.equivalence.m_is_p_and_z_is_n = (m == p) && (z == n);

  if (fibre) {
    d.require_same(*fibre);
    FibreEquivalence f;
    f.fz_star = pair(*fibre, zstar);
    f.pz = r.pz;
    f.fz_star_zero = f.fz_star.is_zero();
    f.zstar_zero = st.zstar_zero;
    f.supports_equal = st.supports_equal;
    r.fibre = f;
  }
  return r;
}

}  // namespace noether
