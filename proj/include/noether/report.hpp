#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "noether/audit.hpp"
#include "noether/bounds.hpp"
#include "noether/catalog.hpp"
#include "noether/chains.hpp"
#include "noether/log_pair.hpp"
#include "noether/workspace.hpp"

namespace noether {

/// Bad command-line usage (missing flag, unknown command). Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::optional<std::string> divisor, m, z, fibre;
  std::optional<std::int64_t> fibre_mult, scale, h0, pm, mm, lambda, d;
  std::vector<std::string> e;  // comma lists for chain/foliation, one rational for bounds
  std::optional<std::string> einv;
  std::optional<std::string> family;  // log | foliation
  bool pencil = false;
  std::optional<bool> kappa_nonneg;
  std::optional<bool> ruled;
  std::size_t max_support = kDefaultSupportCap;
};

inline std::string class_expr(const DivisorClass& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Rational& c = d[i];
    if (c.is_zero()) continue;
    const Rational a = abs(c);
    if (out.empty())
      out += c.sign() < 0 ? "-" : "";
    else
      out += c.sign() < 0 ? " - " : " + ";
    if (a != Rational(1)) out += a.is_integer() ? a.str() : "(" + a.str() + ")";
    out += d.lattice().name(i);
  }
  return out.empty() ? "0" : out;
}

inline Json class_json(const DivisorClass& d) { return Json{{"expr", class_expr(d)}, {"coeffs", rational_array(d.coeffs())}}; }

inline Json labels_json(const IntersectionLattice& l, const SupportSet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(l.name(i));
  return a;
}

inline Json checks_json(const std::vector<Check>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(Json{{"name", c.name}, {"holds", c.holds}});
  return a;
}

inline Json e_json(const NegativePart& n, const EInvariantResult& r) {
  Json j;
  j["e"] = r.value.str();
  j["attained"] = r.attained;
  j["witness_pattern"] = r.witness_pattern;
  j["ray"] = r.ray ? Json(n.lattice().name(n.support()[*r.ray])) : Json(nullptr);
  j["e_zero"] = r.e_zero.str();
  return j;
}

inline Json zariski_json(const ZariskiDecomposition& z) {
  Json j;
  j["positive"] = class_json(z.positive);
  j["negative"] = class_json(z.negative);
  j["support"] = labels_json(z.positive.lattice(), z.support);
  j["gamma"] = rational_array(z.gamma);
  j["volume"] = pair(z.positive, z.positive).str();
  j["big"] = pair(z.positive, z.positive).sign() > 0;
  j["iterations"] = z.iterations;
  return j;
}

inline Json chain_json(const ChainSpec& c, std::size_t max_support) {
  Json j;
  j["e"] = c.e_seq;
  j["n"] = c.n.get_str();
  Json l = Json::array();
  for (const auto& x : c.lambdas) l.push_back(x.get_str());
  j["lambdas"] = std::move(l);
  j["gamma"] = rational_array(c.gamma);
  auto np = chain_negative_part(c);
  auto r = e_sup(np, max_support);
  j["e_inv"] = r.value.str();
  j["attained"] = r.attained;
  j["witness_pattern"] = r.witness_pattern;
  j["e_zero"] = r.e_zero.str();
  return j;
}

inline Json bound_json(const BoundReport& b) {
  Json j;
  j["label"] = b.label;
  j["bound"] = b.bound.str();
  j["volume"] = b.volume.str();
  j["satisfied"] = b.satisfied;
  j["equality"] = b.equality;
  Json refined = Json::array();
  for (const auto& r : b.refined)
    refined.push_back(Json{{"label", r.label}, {"bound", r.bound.str()}, {"applies", r.applies}, {"satisfied", r.satisfied}});
  j["refined"] = std::move(refined);
  j["equality_conditions"] = checks_json(b.equality_conditions);
  j["consistent"] = b.consistent;
  j["annotations"] = b.annotations;
  return j;
}

inline Json audit_json(const AuditReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["decomposition"] = zariski_json(r.decomposition);
  j["volume"] = r.volume.str();
  j["m_squared"] = r.m2.str();
  j["e_M"] = r.e_m ? Json(r.e_m->str()) : Json(nullptr);
  j["e_D"] = e_json(r.decomposition.negative_part(), r.e_d);
  if (r.pencil) {
    const auto& p = *r.pencil;
    Json pj;
    pj["n"] = p.n;
    pj["equivalence"] = std::string(name(p.equivalence));
    pj["FZ_star"] = p.fz_star.str();
    pj["PZ"] = p.pz.str();
    pj["DF_lattice"] = p.df_lattice.str();
    pj["DF_scenario"] = p.df_scenario ? Json(*p.df_scenario) : Json(nullptr);
    pj["DF_used"] = p.df_used.str();
    pj["DF_agree"] = p.df_agree;
    pj["identity_rhs"] = p.identity_rhs.str();
    pj["P2_vs_identity_rhs"] = std::string(name(p.p2_vs_rhs));
    j["pencil"] = std::move(pj);
  }
  Json bounds = Json::array();
  for (const auto& b : r.bounds) bounds.push_back(bound_json(b));
  j["bounds"] = std::move(bounds);
  j["checks"] = checks_json(r.checks);
  j["contracted_candidates"] = r.contracted_candidates;
  j["annotations"] = r.annotations;
  j["assumptions"] = r.assumptions;
  j["warnings"] = r.warnings;
  return j;
}

inline Json log_pair_json(const IntersectionLattice& l, const std::vector<DeltaEntry>& delta, const LogPairResult& r) {
  Json j;
  j["n"] = r.n;
  Json alphas = Json::array();
  for (std::size_t k = 0; k < delta.size(); ++k)
    alphas.push_back(Json{{"curve", l.name(delta[k].index)}, {"a", delta[k].a.str()}, {"alpha", r.alphas[k].str()}});
  j["alphas"] = std::move(alphas);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json inc = Json::array();
    for (const auto& [i, amount] : s.increments) inc.push_back(Json{{"curve", l.name(i)}, {"amount", amount.str()}});
    steps.push_back(Json{{"kind", std::string(name(s.kind))}, {"trigger", l.name(s.trigger)}, {"increments", std::move(inc)}});
  }
  j["steps"] = std::move(steps);
  j["negative_part"] = class_json(r.negative_part);
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"curve", l.name(c.index)},
                          {"alpha", c.alpha.str()},
                          {"a", c.a.str()},
                          {"self_intersection", c.self_intersection.str()},
                          {"arithmetic_genus", c.genus.str()},
                          {"alpha_le_a", c.alpha_le_a},
                          {"alpha_times_e_le_2a", c.alpha_times_e_le_2a},
                          {"alpha_times_e_eq_2a", c.alpha_times_e_eq_2a},
                          {"genus_zero", c.genus_zero}});
  j["checks"] = std::move(checks);
  j["matches_zariski"] = r.matches_zariski;
  j["e_zero_scaled"] = r.e_zero_scaled.str();
  j["e_sup_scaled"] = r.e_sup_scaled.str();
  j["two_n"] = 2 * r.n;
  j["e_bound_holds"] = r.e_bound_holds;
  return j;
}

namespace detail {

inline void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("'" + s + "' is not a comma-separated integer list");
    }
  }
  if (out.empty()) throw UsageError("empty list for --e");
  return out;
}

inline const Workspace& need_workspace(const std::optional<Workspace>& ws, const std::string& command) {
  if (!ws) throw UsageError(command + " needs --config");
  return *ws;
}

inline const std::string& need(const std::optional<std::string>& v, const char* flag, const std::string& command) {
  if (!v) throw UsageError(command + " needs " + flag);
  return *v;
}

inline std::int64_t need(const std::optional<std::int64_t>& v, const char* flag, const std::string& command) {
  if (!v) throw UsageError(command + " needs " + flag);
  return *v;
}

inline std::vector<ChainSpec> chains_from(const std::optional<Workspace>& ws, const Options& o) {
  std::vector<ChainSpec> chains;
  for (const auto& list : o.e) chains.push_back(chain_spec(parse_int_list(list)));
  if (chains.empty()) {
    if (!ws) throw UsageError(o.command + " needs --e or --config with a chains section");
    if (!ws->chains) throw Error(Errc::MissingSection, "workspace has no chains section");
    chains = *ws->chains;
  }
  return chains;
}

inline Json cmd_bounds(const Options& o) {
  Json j;
  j["command"] = "bounds";
  if (o.lambda) {
    j["family"] = "ps_index";
    j["lambda"] = *o.lambda;
    j["bound"] = ps_index_bound(*o.lambda).str();
    j["pencil_route"] = (pencil_bound(2, Rational(static_cast<long>(*o.lambda))) /
                         Rational(static_cast<long>(*o.lambda * *o.lambda))).str();
    return j;
  }
  if (o.pm) {
    const std::int64_t m = need(o.mm, "--mm", "bounds");
    const std::string fam = o.family.value_or("log");
    if (fam != "log" && fam != "foliation") throw UsageError("--family must be log or foliation");
    j["family"] = fam;
    j["pm"] = *o.pm;
    j["m"] = m;
    j["pencil"] = o.pencil;
    j["kappa_nonneg"] = o.kappa_nonneg ? Json(*o.kappa_nonneg) : Json(nullptr);
    j["bound"] = (fam == "log" ? log_pair_bounds(*o.pm, m, o.pencil, o.kappa_nonneg.value_or(false))
                               : foliation_bounds(*o.pm, m, o.pencil, o.kappa_nonneg))
                     .str();
    return j;
  }
  const std::int64_t h0 = need(o.h0, "--h0 (or --pm/--lambda)", "bounds");
  if (o.einv && !o.e.empty()) throw UsageError("give the invariant once, with --einv or --e");
  if (o.e.size() > 1) throw UsageError("bounds takes a single --e");
  const std::string e_text = o.einv ? *o.einv : (o.e.empty() ? std::string("0") : o.e.front());
  Rational e;
  try {
    e = Rational::parse(e_text);
  } catch (const Error&) {
    throw UsageError("'" + e_text + "' is not a rational");
  }
  j["h0"] = h0;
  j["e"] = e.str();
  if (o.pencil) {
    j["family"] = "pencil";
    j["bound"] = pencil_bound(h0, e).str();
    return j;
  }
  auto b = surface_bounds(h0, e, o.kappa_nonneg, o.ruled);
  j["family"] = "surface";
  j["base"] = b.base.str();
  j["refined"] = b.refined.str();
  j["non_ruled_applies"] = b.non_ruled_applies;
  auto opt = [](const std::optional<Rational>& r) { return r ? Json(r->str()) : Json(nullptr); };
  j["non_ruled_base"] = opt(b.non_ruled_base);
  j["non_ruled_refined_wide"] = opt(b.non_ruled_refined_wide);
  j["non_ruled_refined_tight"] = opt(b.non_ruled_refined_tight);
  return j;
}

}  // namespace detail

/// Dispatches one command. Throws UsageError, Error, or propagates module errors.
inline Json run_command(const std::optional<Workspace>& ws, const Options& o) {
  const std::string& cmd = o.command;
  Json j;
  if (cmd == "zariski" || cmd == "volume") {
    const auto& w = detail::need_workspace(ws, cmd);
    const auto& label = detail::need(o.divisor, "--divisor", cmd);
    auto zd = zariski_decompose(w.lattice, w.divisor(label));
    j["command"] = cmd;
    j["divisor"] = label;
    if (cmd == "volume") {
      const Rational v = pair(zd.positive, zd.positive);
      j["volume"] = v.str();
      j["big"] = v.sign() > 0;
      return j;
    }
    detail::merge(j, zariski_json(zd));
    return j;
  }
  if (cmd == "einv") {
    const auto& w = detail::need_workspace(ws, cmd);
    const auto& label = detail::need(o.divisor, "--divisor", cmd);
    auto zd = zariski_decompose(w.lattice, w.divisor(label));
    auto np = zd.negative_part();
    j["command"] = cmd;
    j["divisor"] = label;
    j["support"] = labels_json(w.lattice, zd.support);
    j["gamma"] = rational_array(zd.gamma);
    detail::merge(j, e_json(np, e_sup(np, o.max_support)));
    if (o.m) {
      const auto& a = w.divisor(*o.m);
      std::optional<FibreData> fibre;
      if (o.fibre) fibre = FibreData{o.fibre_mult.value_or(1), w.divisor(*o.fibre)};
      auto rep = verify_e_inequality(np, a, fibre);
      Json aj;
      aj["label"] = *o.m;
      aj["pattern"] = rational_array(np.pattern_of(a));
      aj["e_A"] = rep.e_a.str();
      aj["E_A"] = class_json(exceptional_solution(np, np.pattern_of(a), true).as_class(np));
      aj["a_dot_n"] = rep.a_dot_n.str();
      aj["a_dot_uncapped"] = rep.a_dot_uncapped.str();
      aj["slack"] = rep.slack.str();
      aj["holds"] = rep.holds;
      aj["scaled_slack"] = rep.scaled_slack ? Json(rep.scaled_slack->str()) : Json(nullptr);
      aj["scaled_holds"] = rep.scaled_holds ? Json(*rep.scaled_holds) : Json(nullptr);
      j["a"] = std::move(aj);
    }
    return j;
  }
  if (cmd == "chain") {
    j["command"] = cmd;
    Json arr = Json::array();
    for (const auto& c : detail::chains_from(ws, o)) arr.push_back(chain_json(c, o.max_support));
    j["chains"] = std::move(arr);
    return j;
  }
  if (cmd == "foliation") {
    auto chains = detail::chains_from(ws, o);
    const std::int64_t m = o.scale.value_or(1);
    auto f = foliation_e(chains, m, o.max_support);
    j["command"] = cmd;
    Json cj = Json::array();
    for (const auto& c : chains) cj.push_back(c.e_seq);
    j["chains"] = std::move(cj);
    j["m"] = m;
    j["e"] = f.value.str();
    j["unit_e"] = f.unit_value.str();
    j["scaling_holds"] = f.scaling_holds;
    j["capped_by_m"] = f.capped_by_m;
    j["attained"] = f.detail.attained;
    j["witness_pattern"] = f.detail.witness_pattern;
    return j;
  }
  if (cmd == "logpair") {
    const auto& w = detail::need_workspace(ws, cmd);
    if (!w.log_pair) throw Error(Errc::MissingSection, "workspace has no log_pair section");
    std::vector<DeltaEntry> delta;
    for (const auto& [curve, a] : w.log_pair->delta) delta.push_back({w.lattice.index_of(curve), a});
    auto r = log_pair_iterate(w.lattice, w.divisor(w.log_pair->k_label), delta, w.log_pair->n, o.max_support);
    j["command"] = cmd;
    detail::merge(j, log_pair_json(w.lattice, delta, r));
    return j;
  }
  if (cmd == "bounds") return detail::cmd_bounds(o);
  if (cmd == "audit") {
    const auto& w = detail::need_workspace(ws, cmd);
    if (!w.scenario) throw Error(Errc::MissingSection, "workspace has no scenario section");
    const auto& dl = detail::need(o.divisor, "--divisor", cmd);
    const auto& ml = detail::need(o.m, "--m", cmd);
    const auto& zl = detail::need(o.z, "--z", cmd);
    const auto& d = w.divisor(dl);
    const auto& m = w.divisor(ml);
    const auto& z = w.divisor(zl);
    AuditReport r = [&] {
      if (w.scenario->pencil) {
        const auto& fl = detail::need(o.fibre, "--fibre", cmd);
        const auto n = detail::need(o.fibre_mult, "--fibre-mult", cmd);
        return pencil_audit(w.lattice, d, m, z, *w.scenario, FibreData{n, w.divisor(fl)}, o.max_support);
      }
      return surface_audit(w.lattice, d, m, z, *w.scenario, o.max_support);
    }();
    j["command"] = cmd;
    j["divisor"] = dl;
    j["m"] = ml;
    j["z"] = zl;
    detail::merge(j, audit_json(r));
    return j;
  }
  if (cmd == "catalog") {
    const std::int64_t d = detail::need(o.d, "--d", cmd);
    j["command"] = cmd;
    j["d"] = d;
    Json entries = Json::array();
    for (const auto& e : catalog_degree_dminus1(d))
      entries.push_back(Json{{"case", e.case_id},
                             {"surface", e.surface},
                             {"e", e.e ? Json(*e.e) : Json(nullptr)},
                             {"M0", e.m0},
                             {"M0_squared", e.m0_squared.str()}});
    j["entries"] = std::move(entries);
    return j;
  }
  if (cmd == "config") return dump_config(detail::need_workspace(ws, cmd));
  throw UsageError("unknown command '" + cmd + "'");
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline bool is_flat(const Json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& x : v)
    if (x.is_array() || x.is_object()) return false;
  return true;
}

inline std::string flat_text(const Json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
  return s + "]";
}

inline void render(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        os << pad << k << ": " << flat_text(v) << "\n";
      } else if (v.is_array() && v.size() > 0 && v.front().is_array() && is_flat(v.front())) {
        os << pad << k << ":\n";
        for (const auto& x : v) os << pad << "  " << flat_text(x) << "\n";
      } else {
        os << pad << k << ":\n";
        render(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (is_flat(x)) {
        os << pad << "- " << flat_text(x) << "\n";
      } else {
        std::ostringstream inner;
        render(x, inner, indent + 2);
        std::string s = inner.str();
        if (s.size() >= static_cast<std::size_t>(indent) + 2) s.replace(static_cast<std::size_t>(indent), 2, "- ");
        os << s;
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace detail

/// Human-readable rendering of a report: the JSON tree as indented text.
inline std::string render_text(const Json& j) {
  std::ostringstream os;
  detail::render(j, os, 0);
  return os.str();
}

}  // namespace noether
