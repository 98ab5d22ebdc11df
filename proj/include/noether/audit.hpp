#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noether/bounds.hpp"
#include "noether/identities.hpp"
#include "noether/invariants.hpp"
#include "noether/zariski.hpp"

namespace noether {

/// Facts about the surface that the lattice cannot see. They are inputs,
/// never computed, and every audit lists the ones it used.
struct Scenario {
  std::int64_t h0 = 0;
  bool pencil = false;
  std::optional<std::int64_t> df;
  std::optional<bool> kappa_nonneg;
  std::optional<bool> ruled;
  std::vector<std::string> minus_one_classes;
  std::optional<std::int64_t> base_genus;

  void validate(const IntersectionLattice& lattice) const {
    if (h0 < 0) throw Error(Errc::ValidationError, "scenario.h0 must be non-negative");
    if (df && !pencil) throw Error(Errc::ValidationError, "scenario.DF is only meaningful for a pencil");
    if (df && *df <= 0) throw Error(Errc::ValidationError, "scenario.DF must be positive");
    if (base_genus && *base_genus < 0) throw Error(Errc::ValidationError, "scenario.base_genus must be non-negative");
    for (const auto& label : minus_one_classes) {
      const auto i = lattice.index_of(label);
      if (lattice.gram(i, i) != -1)
        throw Error(Errc::ValidationError, "declared (-1)-class " + label + " has self-intersection " +
                                               std::to_string(lattice.gram(i, i)));
    }
  }

  std::vector<std::string> assumptions() const {
    std::vector<std::string> out;
    out.push_back("h0 = " + std::to_string(h0));
    out.push_back(std::string("pencil = ") + (pencil ? "true" : "false"));
    if (df) out.push_back("DF = " + std::to_string(*df));
    if (kappa_nonneg) out.push_back(std::string("kappa_nonneg = ") + (*kappa_nonneg ? "true" : "false"));
    if (ruled) out.push_back(std::string("ruled = ") + (*ruled ? "true" : "false"));
    if (base_genus) out.push_back("base_genus = " + std::to_string(*base_genus));
    for (const auto& l : minus_one_classes) out.push_back(l + " is a (-1)-curve");
    return out;
  }
};

struct Check {
  std::string name;
  bool holds = false;
};

struct RefinedBound {
  std::string label;
  Rational bound;
  bool applies = false;  // only when the base inequality is strict
  bool satisfied = false;
};

struct BoundReport {
  std::string label;
  Rational bound;
  Rational volume;
  bool satisfied = false;  // volume ≥ bound
  bool equality = false;   // volume = bound
  std::vector<RefinedBound> refined;
  std::vector<Check> equality_conditions;
  bool consistent = true;  // equality implies the lattice-checkable conditions
  std::vector<std::string> annotations;
};

inline BoundReport make_bound(std::string label, const Rational& volume, const Rational& bound) {
  BoundReport r;
  r.label = std::move(label);
  r.volume = volume;
  r.bound = bound;
  r.satisfied = volume >= bound;
  r.equality = volume == bound;
  return r;
}

inline void add_refined(BoundReport& r, std::string label, const Rational& bound) {
  r.refined.push_back({std::move(label), bound, !r.equality, r.volume >= bound});
}

inline bool all_hold(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.holds) return false;
  return true;
}

enum class Relation { Less, Equal, Greater };

inline std::string_view name(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::Equal: return "=";
    case Relation::Greater: return ">";
  }
  return "=";
}

inline Relation compare(const Rational& a, const Rational& b) {
  return a < b ? Relation::Less : (a == b ? Relation::Equal : Relation::Greater);
}

enum class FibreEquivalenceKind { Global, NegativeSupport };

inline std::string_view name(FibreEquivalenceKind k) {
  return k == FibreEquivalenceKind::Global ? "global" : "negative_support";
}

struct PencilData {
  std::int64_t n = 1;
  FibreEquivalenceKind equivalence = FibreEquivalenceKind::Global;
  Rational fz_star;
  Rational pz;
  Rational df_lattice;
  std::optional<std::int64_t> df_scenario;
  Rational df_used;
  bool df_agree = true;
  Rational identity_rhs;   // n²/(n+𝔢_M)·DF + n𝔢_M/(n+𝔢_M)·FZ* + PZ
  Relation p2_vs_rhs = Relation::Equal;
};

struct AuditReport {
  std::string kind;  // "pencil" or "surface"
  ZariskiDecomposition decomposition;
  Rational volume;
  Rational m2;
  std::optional<Rational> e_m;
  EInvariantResult e_d;
  std::vector<BoundReport> bounds;
  std::vector<Check> checks;       // scenario-level hypotheses and side conditions
  std::vector<std::string> contracted_candidates;  // declared E with PE = 0, NE > 0
  std::vector<std::string> annotations;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
  std::optional<PencilData> pencil;
};

namespace detail {

inline Rational q_int(std::int64_t x) { return Rational(static_cast<long>(x)); }

inline AuditReport audit_common(const IntersectionLattice& lattice, const DivisorClass& d, const DivisorClass& m,
                                const DivisorClass& z, const Scenario& scenario, std::size_t max_support,
                                std::string kind) {
  if (!(d.lattice() == lattice)) throw Error(Errc::LatticeMismatch, "D lives on a different lattice");
  d.require_same(m);
  d.require_same(z);
  require_split(d, m, z);
  scenario.validate(lattice);
  auto zd = zariski_decompose(lattice, d);
  AuditReport r{std::move(kind), zd};
  r.volume = pair(zd.positive, zd.positive);
  r.m2 = pair(m, m);
  r.e_d = e_sup(zd, max_support);
  bool m_n_nef = true;
  for (auto i : zd.support)
    if (pair_with_basis(m, i).sign() < 0) m_n_nef = false;
  if (m_n_nef)
    r.e_m = e_of_divisor_pair(zd, m);
  else
    r.warnings.emplace_back("M meets a component of N negatively; e_M is undefined");
  r.assumptions = scenario.assumptions();
  return r;
}

inline std::vector<Check> moving_fixed_conditions(const ZariskiDecomposition& zd, const DivisorClass& m,
                                                  const DivisorClass& z) {
  return {{"M = P", m == zd.positive}, {"Z = N", z == zd.negative}};
}

}  // namespace detail

/// Audit of the pencil case: M ≡ nF for a fibre class F.
inline AuditReport pencil_audit(const IntersectionLattice& lattice, const DivisorClass& d, const DivisorClass& m,
                                const DivisorClass& z, const Scenario& scenario, const FibreData& fibre,
                                std::size_t max_support = kDefaultSupportCap) {
  if (!scenario.pencil) throw Error(Errc::PencilScenario, "pencil audit needs scenario.pencil = true");
  if (scenario.h0 < 2) throw Error(Errc::H0TooSmall, "a pencil needs h0 >= 2");
  if (fibre.n < 1) throw Error(Errc::ValidationError, "fibre multiple must be positive");
  d.require_same(fibre.fibre);
  auto r = detail::audit_common(lattice, d, m, z, scenario, max_support, "pencil");
  const auto& zd = r.decomposition;
  const Rational nq = detail::q_int(fibre.n);
  const DivisorClass nf = nq * fibre.fibre;

  PencilData pd;
  pd.n = fibre.n;
  bool global = true, on_support = true;
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    if (pair_with_basis(m, i) != pair_with_basis(nf, i)) {
      global = false;
      if (zd.support.contains(i)) on_support = false;
    }
  if (!global && !on_support)
    throw Error(Errc::NotFibreMultiple, "M is not numerically n F, not even against the components of N");
  pd.equivalence = global ? FibreEquivalenceKind::Global : FibreEquivalenceKind::NegativeSupport;
  if (!r.e_m) throw Error(Errc::NotNNef, "M meets a component of N negatively");
  const Rational e_m = *r.e_m;

  const DivisorClass zstar = star_lift(lattice, z, zd.support).lifted;
  pd.fz_star = pair(fibre.fibre, zstar);
  pd.pz = pair(zd.positive, z);
  pd.df_lattice = pair(d, fibre.fibre);
  pd.df_scenario = scenario.df;
  pd.df_used = scenario.df ? detail::q_int(*scenario.df) : pd.df_lattice;
  pd.df_agree = pd.df_used == pd.df_lattice;
  if (!pd.df_agree) r.warnings.emplace_back("scenario DF differs from the lattice value D.F = " + pd.df_lattice.str());
  pd.identity_rhs = nq * nq / (nq + e_m) * pd.df_used + nq * e_m / (nq + e_m) * pd.fz_star + pd.pz;
  pd.p2_vs_rhs = compare(r.volume, pd.identity_rhs);

  const std::int64_t k = scenario.h0 - 1;
  const Rational kq = detail::q_int(k);
  r.checks.push_back({"n >= h0 - 1", fibre.n >= k});
  if (fibre.n == k) r.annotations.emplace_back("n = h0 - 1: the base curve Y is P^1");
  const bool supports_equal = z.support() == zd.support;
  const bool df_one = pd.df_used == Rational(1);

  {
    auto b = make_bound("pencil", r.volume, pencil_bound(scenario.h0, r.e_d.value));
    const bool m_is_k_f = fibre.n == k && global;
    b.equality_conditions = {{"fibration: Supp Z = Supp N", supports_equal},
                             {"fibration: DF = 1", df_one},
                             {"fibration: M = (h0-1)F numerically", m_is_k_f},
                             {"h0 = 2 case: h0 = 2", scenario.h0 == 2},
                             {"h0 = 2 case: M = P", m == zd.positive},
                             {"h0 = 2 case: Z = N", z == zd.negative},
                             {"h0 = 2 case: P^2 = 1", r.volume == Rational(1)}};
    const bool fibration = supports_equal && df_one && m_is_k_f;
    const bool two_sections = scenario.h0 == 2 && m == zd.positive && z == zd.negative && r.volume == Rational(1);
    b.consistent = !b.equality || fibration || two_sections;
    if (b.equality && fibration)
      b.annotations.emplace_back("|D| induces f: X -> P^1 with M linearly equivalent to (h0-1)F (not checkable)");
    r.bounds.push_back(std::move(b));
  }

  if (r.m2.is_zero()) {
    auto fm = make_bound("fibre_multiple", r.volume, nq * nq / (nq + e_m));
    fm.equality_conditions = {{"DF = 1", df_one}, {"Supp Z = Supp N", supports_equal}};
    fm.consistent = !fm.equality || all_hold(fm.equality_conditions);
    r.bounds.push_back(std::move(fm));

    const Rational moving = kq * kq / (kq + e_m);
    auto pm = make_bound("pencil_moving_df", r.volume, moving * pd.df_used);
    pm.equality_conditions = {{"DF = 1", df_one}, {"Supp Z = Supp N", supports_equal}};
    pm.consistent = !pm.equality || all_hold(pm.equality_conditions);
    if (pm.equality) pm.annotations.emplace_back("equality also needs Y = P^1 (not checkable)");
    r.bounds.push_back(std::move(pm));
    r.bounds.push_back(make_bound("pencil_moving", r.volume, moving));

    if (is_nef_on(lattice, d)) {
      const Rational lhs = pair(d, d);
      r.bounds.push_back(make_bound("nef_pencil", lhs, max(kq * pd.df_used, detail::q_int(scenario.h0))));
    }
  } else {
    r.checks.push_back({"M^2 >= (h0-1)^2", r.m2 >= kq * kq});
    auto b = make_bound("pencil_base_point", r.volume, kq * kq);
    b.equality_conditions = detail::moving_fixed_conditions(zd, m, z);
    b.consistent = !b.equality || all_hold(b.equality_conditions);
    if (b.equality) b.annotations.emplace_back("Y = P^1");
    add_refined(b, "pencil_base_point_refined", kq * kq + Rational(1) / (Rational(1) + e_m));
    r.bounds.push_back(std::move(b));
  }
  r.pencil = std::move(pd);
  return r;
}

/// Audit of the case where |D| is not composed with a pencil.
inline AuditReport surface_audit(const IntersectionLattice& lattice, const DivisorClass& d, const DivisorClass& m,
                                 const DivisorClass& z, const Scenario& scenario,
                                 std::size_t max_support = kDefaultSupportCap) {
  if (scenario.pencil) throw Error(Errc::PencilScenario, "surface audit needs scenario.pencil = false");
  if (scenario.h0 < 3) throw Error(Errc::H0TooSmall, "a map onto a surface needs h0 >= 3");
  auto r = detail::audit_common(lattice, d, m, z, scenario, max_support, "surface");
  const auto& zd = r.decomposition;
  const Rational h = detail::q_int(scenario.h0);
  const std::int64_t deg_d = scenario.h0 - 1;

  for (const auto& label : scenario.minus_one_classes) {
    const auto i = lattice.index_of(label);
    r.checks.push_back({"D." + label + " > 0 (not D-exceptional)", pair_with_basis(d, i).sign() > 0});
    if (pair_with_basis(zd.positive, i).is_zero() && pair_with_basis(zd.negative, i).sign() > 0)
      r.contracted_candidates.push_back(label);
  }

  const auto conditions = detail::moving_fixed_conditions(zd, m, z);
  {
    auto b = make_bound("surface", r.volume, h - Rational(2));
    b.equality_conditions = conditions;
    b.consistent = !b.equality || all_hold(conditions);
    if (r.e_m) add_refined(b, "surface_refined_e_M", h - refined_offset_tight(*r.e_m));
    add_refined(b, "surface_refined_e", h - refined_offset_tight(r.e_d.value));
    if (b.equality) {
      b.annotations.emplace_back("phi_|D| is birational onto a normal rational surface of degree " +
                                 std::to_string(deg_d - 1) + " in P^" + std::to_string(deg_d) +
                                 " (see catalog --d " + std::to_string(deg_d) + ")");
      b.annotations.emplace_back("if X is not that surface, a (-1)-curve E contracted by phi_|D| has PE = 0 and NE > 0");
    }
    r.bounds.push_back(std::move(b));
  }

  const bool non_ruled = non_ruled_applies(scenario.kappa_nonneg, scenario.ruled);
  r.annotations.emplace_back("deg of the image surface >= " + std::to_string(degree_lower_bound(deg_d, !non_ruled)));
  if (non_ruled) {
    auto b = make_bound("non_ruled", r.volume, Rational(2) * h - Rational(4));
    b.equality_conditions = conditions;
    b.consistent = !b.equality || all_hold(conditions);
    if (r.e_m) add_refined(b, "non_ruled_refined_tight_e_M", Rational(2) * h - refined_offset_tight(*r.e_m));
    add_refined(b, "non_ruled_refined_tight_e", Rational(2) * h - refined_offset_tight(r.e_d.value));
    add_refined(b, "non_ruled_refined_wide_e", Rational(2) * h - refined_offset_wide(r.e_d.value));
    if (b.equality) {
      b.annotations.emplace_back("either phi_|D| is birational onto a surface of degree " +
                                 std::to_string(2 * deg_d - 2) + " birational to a K3 surface");
      b.annotations.emplace_back("or phi_|D| is a double cover onto a normal rational surface of degree " +
                                 std::to_string(deg_d - 1) + " (see catalog --d " + std::to_string(deg_d) + ")");
      b.annotations.emplace_back("if X is not that surface, a (-1)-curve E contracted by phi_|D| has PE = 0 and NE > 0");
    }
    r.bounds.push_back(std::move(b));
  }
  return r;
}

}  // namespace noether
