#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noether/invariants.hpp"
#include "noether/lattice.hpp"
#include "noether/zariski.hpp"

namespace noether {

/// Hirzebruch-Jung continuant [e_1, ..., e_r], the determinant of the
/// tridiagonal matrix with diagonal e_i and off-diagonal -1.
/// [] = 1, [e_r] = e_r, [e_1, ..., e_r] = e_1 [e_2, ..., e_r] - [e_3, ..., e_r].
/// Any integers are accepted; chain_spec() is where e_i ≥ 2 is enforced.
/// The recursion is cross-checked against the Bareiss determinant.
inline Integer hj_determinant(const std::vector<std::int64_t>& e) {
  Integer next = 0;  // [e_{i+2}, ...]
  Integer cur = 1;   // [e_{i+1}, ...]
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    Integer v = Integer(static_cast<long>(*it)) * cur - next;
    next = cur;
    cur = v;
  }
  if (!e.empty()) {
    const std::size_t r = e.size();
    std::vector<std::vector<Integer>> m(r, std::vector<Integer>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      m[i][i] = static_cast<long>(e[i]);
      if (i + 1 < r) m[i][i + 1] = m[i + 1][i] = -1;
    }
    if (exact_determinant(std::move(m)) != cur)
      throw Error(Errc::InvalidChain, "continuant recursion disagrees with the determinant");
  }
  return cur;
}

/// Tridiagonal chain Gram: -e_i on the diagonal, 1 between neighbours.
inline std::vector<std::vector<std::int64_t>> chain_gram(const std::vector<std::int64_t>& e) {
  const std::size_t r = e.size();
  std::vector<std::vector<std::int64_t>> g(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    g[i][i] = -e[i];
    if (i + 1 < r) g[i][i + 1] = g[i + 1][i] = 1;
  }
  return g;
}

struct ChainSpec {
  std::vector<std::int64_t> e_seq;
  Integer n;                     // [e_1, ..., e_r]
  std::vector<Integer> lambdas;  // λ_i = [e_{i+1}, ..., e_r], λ_r = 1
  std::vector<Rational> gamma;   // γ_i = λ_i / n

  std::size_t length() const { return e_seq.size(); }
};

/// Fills n, λ and γ and cross-checks γ against the linear solve
/// N·Γ_1 = -1, N·Γ_i = 0 (i ≥ 2) on the chain lattice.
inline ChainSpec chain_spec(const std::vector<std::int64_t>& e_seq) {
  if (e_seq.empty()) throw Error(Errc::InvalidChain, "a chain needs at least one curve");
  for (auto x : e_seq)
    if (x < 2) throw Error(Errc::InvalidChain, "self-intersection -" + std::to_string(x) + " is not at most -2");
  ChainSpec spec;
  spec.e_seq = e_seq;
  spec.n = hj_determinant(e_seq);
  for (std::size_t i = 0; i < e_seq.size(); ++i)
    spec.lambdas.push_back(hj_determinant(std::vector<std::int64_t>(e_seq.begin() + static_cast<long>(i) + 1, e_seq.end())));
  Integer prev = spec.n;
  for (const auto& l : spec.lambdas) {
    if (!(l < prev)) throw Error(Errc::InvalidChain, "continuants are not strictly decreasing");
    prev = l;
  }
  if (spec.lambdas.back() != 1) throw Error(Errc::InvalidChain, "last continuant is not 1");
  for (const auto& l : spec.lambdas) spec.gamma.emplace_back(l, spec.n);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < e_seq.size(); ++i) names.push_back("G" + std::to_string(i + 1));
  auto lattice = IntersectionLattice::build(std::move(names), chain_gram(e_seq));
  const auto all = SupportSet::all(e_seq.size());
  if (!is_negative_definite(lattice, all)) throw Error(Errc::InvalidChain, "chain Gram is not negative definite");
  std::vector<Rational> targets(e_seq.size());
  targets[0] = Rational(-1);
  auto solved = solve_against_gram(lattice, all, targets);
  for (std::size_t i = 0; i < e_seq.size(); ++i)
    if (solved[i] != spec.gamma[i])
      throw Error(Errc::InvalidChain, "continued-fraction coefficient disagrees with the linear solve");
  return spec;
}

/// The chain Θ on its own lattice with N(Θ) = Σ γ_i Γ_i.
inline NegativePart chain_negative_part(const ChainSpec& spec, const std::string& prefix = "G") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < spec.length(); ++i) names.push_back(prefix + std::to_string(i + 1));
  auto lattice = IntersectionLattice::build(std::move(names), chain_gram(spec.e_seq));
  return NegativePart(lattice, SupportSet::all(spec.length()), spec.gamma);
}

/// E_A(Θ) for A·Γ_i = pattern_i.
inline ExceptionalSolution chain_exceptional(const ChainSpec& spec, const Pattern& pattern) {
  return exceptional_solution(chain_negative_part(spec), pattern, true);
}

enum class ChainEquality { Strict, CaseI, CaseII };

inline std::string_view name(ChainEquality k) {
  switch (k) {
    case ChainEquality::Strict: return "strict";
    case ChainEquality::CaseI: return "case_i";
    case ChainEquality::CaseII: return "case_ii";
  }
  return "strict";
}

struct ChainEqualityCase {
  ChainEquality kind = ChainEquality::Strict;
  Rational slack;  // (E_A(Θ) - N(Θ))·A
};

/// Slack (E_A(Θ) - N(Θ))·A ≥ 0 with equality exactly when the pattern is
/// all zero (E_A = 0) or supported on Γ_1 alone (E_A = N(Θ)).
inline ChainEqualityCase classify_chain_equality(const ChainSpec& spec, const Pattern& pattern) {
  auto sol = chain_exceptional(spec, pattern);
  Rational an;
  for (std::size_t i = 0; i < spec.length(); ++i) an += spec.gamma[i] * pattern[i];
  ChainEqualityCase out;
  out.slack = sol.pair_with_pattern() - an;

  bool tail_zero = true;
  for (std::size_t i = 1; i < pattern.size(); ++i)
    if (!pattern[i].is_zero()) tail_zero = false;
  if (tail_zero && pattern[0].is_zero())
    out.kind = ChainEquality::CaseI;
  else if (tail_zero)
    out.kind = ChainEquality::CaseII;

  if (out.slack.sign() < 0)
    throw Error(Errc::CoefficientCheckFailed, "negative chain slack " + out.slack.str());
  if (out.slack.is_zero() != (out.kind != ChainEquality::Strict))
    throw Error(Errc::CoefficientCheckFailed, "chain slack " + out.slack.str() + " disagrees with its case");
  return out;
}

struct FoliationNegativePart {
  IntersectionLattice lattice;
  NegativePart negative;
  std::vector<std::size_t> offsets;  // first basis index of each chain
};

/// Block-diagonal lattice of disjoint chains, labelled C<j>G<i>, with
/// N = Σ_j N(Θ_j).
inline FoliationNegativePart foliation_negative_part(const std::vector<ChainSpec>& chains) {
  if (chains.empty()) throw Error(Errc::InvalidChain, "at least one chain is required");
  std::size_t total = 0;
  for (const auto& c : chains) total += c.length();
  std::vector<std::string> names;
  std::vector<std::vector<std::int64_t>> gram(total, std::vector<std::int64_t>(total, 0));
  std::vector<Rational> gamma;
  std::vector<std::size_t> offsets;
  std::size_t at = 0;
  for (std::size_t j = 0; j < chains.size(); ++j) {
    offsets.push_back(at);
    const auto g = chain_gram(chains[j].e_seq);
    for (std::size_t a = 0; a < chains[j].length(); ++a) {
      names.push_back(chains.size() == 1 ? "G" + std::to_string(a + 1)
                                         : "C" + std::to_string(j + 1) + "G" + std::to_string(a + 1));
      for (std::size_t b = 0; b < chains[j].length(); ++b) gram[at + a][at + b] = g[a][b];
      gamma.push_back(chains[j].gamma[a]);
    }
    at += chains[j].length();
  }
  auto lattice = IntersectionLattice::build(std::move(names), std::move(gram));
  NegativePart n(lattice, SupportSet::all(total), std::move(gamma));
  return FoliationNegativePart{lattice, std::move(n), std::move(offsets)};
}

struct FoliationE {
  Rational value;        // 𝔢(m K_F)
  Rational unit_value;   // 𝔢(K_F)
  EInvariantResult detail;
  bool scaling_holds = false;  // value = m · unit_value
  bool capped_by_m = false;    // value ≤ m
};

/// 𝔢 of the assembled negative part scaled by m.
inline FoliationE foliation_e(const std::vector<ChainSpec>& chains, std::int64_t m,
                              std::size_t max_support = kDefaultSupportCap) {
  if (m < 1) throw Error(Errc::ValidationError, "scale m must be at least 1");
  auto assembled = foliation_negative_part(chains);
  const Rational mm(static_cast<long>(m));
  FoliationE out;
  out.detail = e_sup(assembled.negative.scaled(mm), max_support);
  out.value = out.detail.value;
  out.unit_value = e_sup(assembled.negative, max_support).value;
  out.scaling_holds = out.value == mm * out.unit_value;
  out.capped_by_m = out.value <= mm;
  return out;
}

}  // namespace noether
