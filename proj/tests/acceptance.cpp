// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli_runner.hpp"
#include "noether/audit.hpp"
#include "noether/bounds.hpp"
#include "noether/catalog.hpp"
#include "noether/chains.hpp"
#include "noether/identities.hpp"
#include "noether/log_pair.hpp"
#include "noether/workspace.hpp"
#include "support.hpp"

using namespace noether;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no runtime limit
  std::function<Outcome()> run;
};

#define REQUIRE(cond, msg)                 \
  do {                                     \
    if (!(cond)) return Outcome{false, msg}; \
  } while (0)

std::string str(std::size_t n) { return std::to_string(n); }

/// Configurations of the criterion-1 family that decompose, with their oracle candidates.
struct Config {
  oracle::IntMat gram;
  std::vector<std::int64_t> d;
};

std::vector<Config> zariski_family(std::size_t want) {
  std::mt19937_64 rng(1001);
  std::vector<Config> out;
  for (int trial = 0; trial < 20000 && out.size() < want; ++trial) {
    const std::size_t r = 1 + rng() % 5;
    Config c{oracle::random_gram(rng, r, -4, 1, 2), oracle::random_ints(rng, r, -3, 3)};
    auto l = lattice_of(c.gram);
    try {
      zariski_decompose(l, class_of(l, c.d));
      out.push_back(std::move(c));
    } catch (const Error&) {
    }
  }
  return out;
}

Outcome criterion1() {
  auto family = zariski_family(400);
  REQUIRE(family.size() >= 200, "only " + str(family.size()) + " configurations decomposed");
  std::size_t nonempty = 0;
  for (const auto& c : family) {
    auto l = lattice_of(c.gram);
    auto z = zariski_decompose(l, class_of(l, c.d));
    auto cands = oracle::zariski_candidates(c.gram, to_q(c.d));
    REQUIRE(cands.size() == 1, str(cands.size()) + " oracle candidates");
    REQUIRE(to_q(z.negative.coeffs()) == cands[0].negative, "negative part differs from the oracle");
    REQUIRE(to_q(z.positive.coeffs()) == cands[0].positive, "positive part differs from the oracle");
    REQUIRE(z.support.indices() == cands[0].support, "support differs from the oracle");
    if (!z.support.empty()) ++nonempty;
  }
  return {true, str(family.size()) + " configurations, " + str(nonempty) + " with N != 0"};
}

Outcome criterion2() {
  const auto seqs = all_sequences(2, 5, 6);
  for (const auto& e : seqs) {
    ChainSpec s;
    try {
      s = chain_spec(e);
    } catch (const Error& err) {
      return {false, err.what()};
    }
    std::vector<oracle::Q> rhs(e.size(), 0);
    rhs[0] = -1;
    auto x = oracle::solve(oracle::to_q(chain_gram(e), oracle::iota(e.size())), rhs);
    REQUIRE(x && to_q(s.gamma) == *x, "gamma mismatch");
  }
  std::size_t up_to_5 = 0;
  for (const auto& e : seqs) up_to_5 += e.size() <= 5;
  return {true, str(seqs.size()) + " chains of length <= 6 (" + str(up_to_5) + " of length <= 5)"};
}

Outcome criterion3() {
  std::size_t patterns = 0, zero = 0;
  for (const auto& e : all_sequences(2, 5, 4)) {
    auto s = chain_spec(e);
    for (const auto& t : all_sequences(0, 3, e.size())) {
      if (t.size() != e.size()) continue;
      ChainEqualityCase c;
      try {
        c = classify_chain_equality(s, make_pattern(t));
      } catch (const Error& err) {
        return {false, err.what()};
      }
      REQUIRE(c.slack.raw() == oracle::chain_slack(e, to_q(t)), "slack differs from the oracle");
      bool tail_zero = true;
      for (std::size_t i = 1; i < t.size(); ++i) tail_zero = tail_zero && t[i] == 0;
      REQUIRE(c.slack.sign() >= 0, "negative slack");
      REQUIRE(c.slack.is_zero() == tail_zero, "zero slack off the equality cases");
      ++patterns;
      zero += c.slack.is_zero();
    }
  }
  return {true, str(patterns) + " (chain, pattern) pairs, " + str(zero) + " equality cases"};
}

Outcome criterion4() {
  std::mt19937_64 rng(1004);
  const auto pool = all_sequences(2, 5, 3);
  std::size_t assemblies = 0;
  for (; assemblies < 60; ++assemblies) {
    std::vector<ChainSpec> chains;
    const std::size_t count = 2 + rng() % 2;
    for (std::size_t j = 0; j < count; ++j) chains.push_back(chain_spec(pool[rng() % pool.size()]));
    const Rational unit = foliation_e(chains, 1).value;
    for (std::int64_t m = 1; m <= 5; ++m) {
      auto f = foliation_e(chains, m);
      REQUIRE(f.value == Rational(static_cast<long>(m)) * unit, "scaling fails");
      REQUIRE(f.value <= Rational(static_cast<long>(m)), "exceeds m");
    }
  }
  const auto singles = all_sequences(2, 5, 6);
  for (const auto& e : singles) REQUIRE(foliation_e({chain_spec(e)}, 1).value == Rational(1), "single chain e != 1");
  return {true, str(assemblies) + " assemblies x m in 1..5, " + str(singles.size()) + " single chains"};
}

Outcome criterion5() {
  auto family = zariski_family(400);
  std::size_t singles = 0, nonempty = 0;
  for (const auto& c : family) {
    auto l = lattice_of(c.gram);
    auto z = zariski_decompose(l, class_of(l, c.d));
    auto np = z.negative_part();
    auto r = e_sup(np);
    REQUIRE(r.value <= e_zero(np), "e exceeds e_0");
    if (np.size() == 1) {
      REQUIRE(r.value == e_zero(np), "no equality on a single curve");
      ++singles;
    }
    nonempty += !np.empty();
  }
  return {true, str(family.size()) + " configurations, " + str(nonempty) + " with N != 0, " + str(singles) +
                    " single-curve equalities"};
}

Outcome criterion6() {
  std::mt19937_64 rng(1006);
  std::size_t pairs = 0, scaled = 0;
  for (; pairs < 600; ++pairs) {
    const std::size_t k = 1 + rng() % 4;
    auto g = oracle::random_negative_support(rng, k);
    auto t = oracle::random_ints(rng, k, 0, 6);
    // Class 0 is A, class 1 is a fibre F with A = nF against the support.
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 3);
    oracle::IntMat full(k + 2, std::vector<std::int64_t>(k + 2, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) full[i + 2][j + 2] = g[i][j];
      full[0][i + 2] = full[i + 2][0] = n * t[i];
      full[1][i + 2] = full[i + 2][1] = t[i];
    }
    auto l = lattice_of(full);
    std::vector<std::size_t> idx;
    std::vector<Rational> gamma;
    for (std::size_t i = 0; i < k; ++i) {
      idx.push_back(i + 2);
      gamma.emplace_back(1 + static_cast<long>(rng() % 6), 1 + static_cast<long>(rng() % 4));
    }
    NegativePart np(l, SupportSet(idx), gamma);
    EInequalityReport r;
    try {
      r = verify_e_inequality(np, l.basis(0), FibreData{n, l.basis(1)});
    } catch (const Error& e) {
      return {false, e.what()};
    }
    REQUIRE(r.slack.sign() >= 0, "negative slack");
    REQUIRE(r.scaled_slack && r.scaled_slack->sign() >= 0, "negative scaled slack");
    ++scaled;
  }
  return {true, str(pairs) + " (N, A) pairs, " + str(scaled) + " with the fibre form"};
}

Outcome criterion7() {
  std::mt19937_64 rng(1007);
  std::size_t splits = 0;
  for (int trial = 0; trial < 50000 && splits < 250; ++trial) {
    const std::size_t r = 2 + rng() % 3;
    auto g = oracle::random_gram(rng, r, -4, 1, 2);
    if (!oracle::hyperbolic(g)) continue;
    auto l = lattice_of(g);
    auto m = class_of(l, oracle::random_ints(rng, r, 0, 3));
    if (!is_nef_on(l, m) || pair(m, m).sign() <= 0) continue;
    auto z = class_of(l, oracle::random_ints(rng, r, 0, 2));
    std::optional<IdentityReport> found;
    try {
      found = decomposition_identities(l, m + z, m, z);
    } catch (const Error& e) {
      return {false, e.what()};
    }
    const auto& rep = *found;
    const auto& st = rep.star;
    REQUIRE(st.z_geq_zstar && st.zstar_nonneg, "Z >= Z* >= 0 fails");
    REQUIRE(st.mstar_geq_mlower && st.mlower_geq_m, "M* >= M + sum >= M fails");
    REQUIRE(st.mstar_equals_m == st.mn_zero, "M = M* iff MN = 0 fails");
    REQUIRE(st.chain_holds, "P^2 >= (M*)^2 >= ... >= M^2 fails");
    REQUIRE(rep.gap && rep.gap->holds, "volume gap inequality fails");
    REQUIRE(rep.equivalence.all_equal(), "equivalence triple not all-equal");
    ++splits;
  }
  REQUIRE(splits >= 200, "only " + str(splits) + " splits generated");
  return {true, str(splits) + " splits on hyperbolic lattices"};
}

Outcome criterion8() {
  REQUIRE(pencil_bound(5, Rational(2)) == Rational(8, 3), "pencil_bound(5, 2) != 8/3");
  for (long lam = 1; lam <= 10; ++lam) {
    REQUIRE(ps_index_bound(lam) == Rational(1, lam * lam * (1 + lam)), "ps-index bound");
    REQUIRE(ps_index_bound(lam) == foliation_bounds(2, lam, true, std::nullopt), "pencil route");
  }
  auto l = build_lattice({"K", "C"}, {{1, 0}, {0, -2}});
  auto lp = log_pair_iterate(l, l.basis("K"), {{1, Rational(1, 2)}}, 2);
  REQUIRE(lp.alphas == std::vector<Rational>{Rational(1, 2)}, "alpha != 1/2");
  REQUIRE(lp.e_zero_scaled == Rational(2), "e_0 != 2");
  REQUIRE(lp.e_sup_scaled <= lp.e_zero_scaled && lp.e_zero_scaled <= Rational(4) && lp.e_bound_holds, "e <= e_0 <= 2n");
  std::size_t entries = 0;
  for (std::int64_t d = 2; d <= 50; ++d)
    for (const auto& c : catalog_degree_dminus1(d)) {
      REQUIRE(c.m0_squared == Rational(static_cast<long>(d - 1)), "catalog square");
      ++entries;
    }
  return {true, "8/3, ps-index for lambda <= 10, log pair alpha = 1/2 and e_0 = 2, " + str(entries) +
                    " catalog entries"};
}

Outcome criterion9() {
  auto ws = parse_config(cli::fixture("audit.json"));
  const auto& l = ws.lattice;
  auto r = surface_audit(l, ws.divisor("D"), ws.divisor("M"), ws.divisor("Z"), *ws.scenario);
  REQUIRE(r.decomposition.negative == l.make({Rational(0), Rational(0), Rational(1, 2)}), "N != (1/2)G2");
  REQUIRE(r.volume == Rational(13, 2), "P^2 != 13/2");
  REQUIRE(r.e_m && *r.e_m == Rational(0), "e_M != 0");
  auto id = decomposition_identities(l, ws.divisor("D"), ws.divisor("M"), ws.divisor("Z"));
  REQUIRE(id.gap && id.gap->equality, "volume gap inequality is not an equality");
  REQUIRE(!id.equivalence.p2_equals_m2 && !id.equivalence.mz_zero && !id.equivalence.m_is_p_and_z_is_n,
          "triple is not (false, false, false)");
  auto j = Json::parse(cli::run("--json " + cli::with_config("audit.json", "audit --divisor D --m M --z Z")).out);
  REQUIRE(j["volume"] == "13/2", "CLI volume");
  return {true, "N = (1/2)G2, P^2 = 13/2, e_M = 0, gap inequality is an equality"};
}

Outcome criterion10() {
  std::size_t runs = 0;
  for (const auto& c : cli::report_cases()) {
    const auto args = "--json " + cli::args_of(c);
    auto a = cli::run(args);
    auto b = cli::run(args);
    REQUIRE(a.status == 0, "exit " + std::to_string(a.status) + " for " + args);
    REQUIRE(a.out == b.out, "non-deterministic output for " + args);
    REQUIRE(Json::parse(a.out).dump(2) + "\n" == a.out, "JSON does not round-trip for " + args);
    runs += 2;
  }
  for (const auto& f : cli::valid_fixtures()) {
    auto first = cli::run("--json " + cli::with_config(f, "config"));
    REQUIRE(first.status == 0, "config failed on " + f);
    const auto path = std::filesystem::temp_directory_path() / ("noether_acceptance_" + f);
    cli::write_file(path.string(), first.out);
    auto second = cli::run("--json --config " + path.string() + " config");
    std::filesystem::remove(path);
    REQUIRE(first.out == second.out, "config does not round-trip for " + f);
    runs += 2;
  }
  for (const auto& c : cli::exit_cases()) {
    const int got = cli::run(c.args).status;
    REQUIRE(got == c.expected, "exit " + std::to_string(got) + " (want " + std::to_string(c.expected) + ") for " + c.args);
    ++runs;
  }
  return {true, str(runs) + " CLI runs, " + str(cli::exit_cases().size()) + " exit codes checked"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Zariski decomposition matches the subset oracle", 10, criterion1},
      {2, "chain coefficients from continuants match the linear solve", 5, criterion2},
      {3, "chain slack is non-negative and zero exactly on the two equality cases", 30, criterion3},
      {4, "foliation invariant scales with m and is 1 on a single chain", 0, criterion4},
      {5, "e <= e_0 with equality on a single curve", 0, criterion5},
      {6, "e-inequality slack is non-negative", 0, criterion6},
      {7, "star-lift, volume-gap and equivalence identities on random splits", 0, criterion7},
      {8, "closed-form values", 0, criterion8},
      {9, "worked audit fixture", 0, criterion9},
      {10, "CLI round-trip, determinism and exit codes", 0, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    std::printf("%s %2d  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
