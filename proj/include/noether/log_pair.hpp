#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noether/invariants.hpp"
#include "noether/zariski.hpp"

namespace noether {

struct DeltaEntry {
  std::size_t index = 0;
  Rational a;
};

enum class LogPairStepKind { Single, Rebalance };

inline std::string_view name(LogPairStepKind k) { return k == LogPairStepKind::Single ? "single" : "rebalance"; }

struct LogPairStep {
  LogPairStepKind kind = LogPairStepKind::Single;
  std::size_t trigger = 0;  // component with (K + Δ^(k))·E < 0
  std::vector<std::pair<std::size_t, Rational>> increments;
};

struct ComponentCheck {
  std::size_t index = 0;
  Rational a;
  Rational alpha;
  Rational self_intersection;
  Rational genus;
  bool alpha_le_a = false;
  bool alpha_times_e_le_2a = false;
  bool alpha_times_e_eq_2a = false;
  bool genus_zero = false;
};

struct LogPairResult {
  std::vector<Rational> alphas;  // per Δ entry, in input order
  std::vector<LogPairStep> steps;
  DivisorClass negative_part;
  std::vector<ComponentCheck> checks;  // components with α > 0
  bool matches_zariski = false;
  std::int64_t n = 1;
  Rational e_zero_scaled;  // 𝔢₀ of n·N
  Rational e_sup_scaled;   // 𝔢 of n·N
  bool e_bound_holds = false;  // 𝔢 ≤ 𝔢₀ ≤ 2n
};

namespace detail {

inline DivisorClass delta_class(const IntersectionLattice& lattice, const std::vector<DeltaEntry>& delta) {
  std::vector<Rational> c(lattice.rank());
  for (const auto& d : delta) c[d.index] = d.a;
  return DivisorClass(lattice, std::move(c));
}

inline void validate_delta(const IntersectionLattice& lattice, const std::vector<DeltaEntry>& delta) {
  std::vector<bool> seen(lattice.rank(), false);
  for (const auto& d : delta) {
    lattice.check_index(d.index);
    if (seen[d.index]) throw Error(Errc::ValidationError, "boundary lists " + lattice.name(d.index) + " twice");
    seen[d.index] = true;
    if (d.a.sign() <= 0 || d.a > Rational(1))
      throw Error(Errc::ValidationError, "boundary coefficient of " + lattice.name(d.index) + " is " + d.a.str() +
                                             ", outside (0, 1]");
  }
}

}  // namespace detail

/// Peels the negative part of K + Δ off the boundary one curve at a time.
///
/// A component met negatively for the first time is removed with
/// α = ((K + Δ^(k))·E)/E². A component that is met negatively again after
/// later steps triggers a joint solve on every component peeled so far, which
/// makes all of them orthogonal to K + Δ^(k+1). Each single step adds a new
/// component and rebalances only follow single steps, so there are at most
/// 2|Δ| steps.
inline LogPairResult log_pair_iterate(const IntersectionLattice& lattice, const DivisorClass& k,
                                      const std::vector<DeltaEntry>& delta, std::int64_t n,
                                      std::size_t max_support = kDefaultSupportCap) {
  if (!(k.lattice() == lattice)) throw Error(Errc::LatticeMismatch, "K lives on a different lattice");
  if (n < 1) throw Error(Errc::ValidationError, "multiple n must be positive");
  detail::validate_delta(lattice, delta);

  const DivisorClass kd = k + detail::delta_class(lattice, delta);
  const Rational nn(static_cast<long>(n));
  if (!(nn * kd).is_integral())
    throw Error(Errc::NonIntegralMultiple, std::to_string(n) + "(K + Delta) is not integral");

  std::vector<std::optional<std::size_t>> slot(lattice.rank());
  for (std::size_t j = 0; j < delta.size(); ++j) slot[delta[j].index] = j;

  LogPairResult out{std::vector<Rational>(delta.size()), {}, lattice.zero()};
  out.n = n;
  DivisorClass current = kd;
  std::vector<std::size_t> peeled;
  const std::size_t cap = 2 * delta.size() + 1;

  for (;;) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < lattice.rank() && !hit; ++i)
      if (pair_with_basis(current, i).sign() < 0) hit = i;
    if (!hit) break;
    const std::size_t i = *hit;
    if (!slot[i])
      throw Error(Errc::BoundaryHypothesisViolated,
                  "(K + Delta)." + lattice.name(i) + " < 0 but " + lattice.name(i) + " is not a boundary component");
    if (out.steps.size() >= cap)
      throw Error(Errc::IterationDiverged, "no termination after " + std::to_string(cap) + " steps");

    LogPairStep step;
    step.trigger = i;
    const bool fresh = std::find(peeled.begin(), peeled.end(), i) == peeled.end();
    if (fresh) {
      const Rational e2(static_cast<long>(lattice.gram(i, i)));
      if (e2.sign() >= 0)
        throw Error(Errc::IterationDiverged, lattice.name(i) + " has non-negative self-intersection but is met negatively");
      const Rational alpha = pair_with_basis(current, i) / e2;
      step.kind = LogPairStepKind::Single;
      step.increments.emplace_back(i, alpha);
      peeled.push_back(i);
      std::sort(peeled.begin(), peeled.end());
    } else {
      const SupportSet t(peeled);
      if (!is_negative_definite(lattice, t))
        throw Error(Errc::IterationDiverged, "peeled components are not negative definite");
      auto x = solve_against_gram(lattice, t, pairings_on(current, t));
      step.kind = LogPairStepKind::Rebalance;
      for (auto j : t) {
        if (x[j].sign() < 0)
          throw Error(Errc::IterationDiverged, "rebalance would add " + lattice.name(j) + " back to the boundary");
        if (!x[j].is_zero()) step.increments.emplace_back(j, x[j]);
      }
    }
    for (const auto& [j, inc] : step.increments) {
      std::vector<Rational> c(lattice.rank());
      c[j] = inc;
      current -= lattice.make(std::move(c));
      out.alphas[*slot[j]] += inc;
    }
    out.steps.push_back(std::move(step));
  }

  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (out.alphas[j].is_zero()) continue;
    const std::size_t i = delta[j].index;
    ComponentCheck c;
    c.index = i;
    c.a = delta[j].a;
    c.alpha = out.alphas[j];
    c.self_intersection = Rational(static_cast<long>(lattice.gram(i, i)));
    c.genus = arithmetic_genus(lattice, k, i);
    c.alpha_le_a = c.alpha <= c.a;
    c.alpha_times_e_le_2a = c.alpha * -c.self_intersection <= Rational(2) * c.a;
    c.alpha_times_e_eq_2a = c.alpha * -c.self_intersection == Rational(2) * c.a;
    c.genus_zero = c.genus.is_zero();
    if (!c.genus_zero)
      throw Error(Errc::GenusCheckFailed, lattice.name(i) + " has arithmetic genus " + c.genus.str());
    if (!c.alpha_le_a)
      throw Error(Errc::CoefficientCheckFailed, "alpha on " + lattice.name(i) + " is " + c.alpha.str() + " > a = " + c.a.str());
    if (!c.alpha_times_e_le_2a)
      throw Error(Errc::CoefficientCheckFailed, "alpha(-C^2) on " + lattice.name(i) + " exceeds 2a");
    out.checks.push_back(c);
  }

  std::vector<Rational> neg(lattice.rank());
  for (std::size_t j = 0; j < delta.size(); ++j) neg[delta[j].index] = out.alphas[j];
  out.negative_part = lattice.make(std::move(neg));

  auto zd = zariski_decompose(lattice, kd);
  out.matches_zariski = zd.negative == out.negative_part;
  if (!out.matches_zariski)
    throw Error(Errc::CoefficientCheckFailed, "peeled negative part differs from the Zariski negative part");

  const NegativePart scaled = zd.negative_part().scaled(nn);
  out.e_zero_scaled = e_zero(scaled);
  out.e_sup_scaled = e_sup(scaled, max_support).value;
  out.e_bound_holds = out.e_sup_scaled <= out.e_zero_scaled && out.e_zero_scaled <= Rational(2) * nn;
  return out;
}

}  // namespace noether
