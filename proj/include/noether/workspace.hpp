#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "noether/audit.hpp"
#include "noether/chains.hpp"
#include "noether/lattice.hpp"

namespace noether {

using Json = nlohmann::ordered_json;

struct LogPairSection {
  std::string k_label;
  std::vector<std::pair<std::string, Rational>> delta;  // curve label, coefficient
  std::int64_t n = 1;

  friend bool operator==(const LogPairSection&, const LogPairSection&) = default;
};

struct Workspace {
  IntersectionLattice lattice;
  std::map<std::string, DivisorClass> divisors;
  std::optional<Scenario> scenario;
  std::optional<std::vector<ChainSpec>> chains;
  std::optional<LogPairSection> log_pair;

  const DivisorClass& divisor(const std::string& label) const {
    auto it = divisors.find(label);
    if (it == divisors.end()) throw Error(Errc::UnknownLabel, "no divisor named '" + label + "'");
    return it->second;
  }
};

inline bool operator==(const Scenario& a, const Scenario& b) {
  return a.h0 == b.h0 && a.pencil == b.pencil && a.df == b.df && a.kappa_nonneg == b.kappa_nonneg &&
         a.ruled == b.ruled && a.minus_one_classes == b.minus_one_classes && a.base_genus == b.base_genus;
}

inline bool operator==(const Workspace& a, const Workspace& b) {
  if (!(a.lattice == b.lattice) || a.divisors.size() != b.divisors.size()) return false;
  for (const auto& [label, d] : a.divisors) {
    auto it = b.divisors.find(label);
    if (it == b.divisors.end() || !(it->second == d)) return false;
  }
  if (a.chains.has_value() != b.chains.has_value()) return false;
  if (a.chains) {
    if (a.chains->size() != b.chains->size()) return false;
    for (std::size_t i = 0; i < a.chains->size(); ++i)
      if ((*a.chains)[i].e_seq != (*b.chains)[i].e_seq) return false;
  }
  return a.scenario == b.scenario && a.log_pair == b.log_pair;
}

namespace detail {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(Errc code, const std::string& path, const std::string& msg) const {
    throw Error(code, source_ + ": " + path + ": " + msg);
  }

  const Json& object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) const {
    if (!j.is_object()) fail(Errc::ParseError, path, "expected an object");
    for (const auto& [key, _] : j.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail(Errc::ParseError, path.empty() ? key : path + "." + key, "unknown key");
    }
    return j;
  }

  std::int64_t integer(const Json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(Errc::ParseError, path, "expected an integer, got " + j.dump());
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      fail(Errc::ParseError, path, "integer out of range");
    return j.get<std::int64_t>();
  }

  Rational rational(const Json& j, const std::string& path) const {
    if (j.is_number_integer()) return Rational(static_cast<long>(integer(j, path)));
    if (!j.is_string()) fail(Errc::ParseError, path, "expected a rational string, got " + j.dump());
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      fail(Errc::ParseError, path, "invalid rational \"" + j.get<std::string>() + "\"");
    }
  }

  std::string string(const Json& j, const std::string& path) const {
    if (!j.is_string()) fail(Errc::ParseError, path, "expected a string, got " + j.dump());
    return j.get<std::string>();
  }

  bool boolean(const Json& j, const std::string& path) const {
    if (!j.is_boolean()) fail(Errc::ParseError, path, "expected true or false, got " + j.dump());
    return j.get<bool>();
  }

  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(Errc::ParseError, path, "expected an array");
    return j;
  }

  template <class F>
  auto optional(const Json& parent, const char* key, const std::string& path, F read) const
      -> std::optional<decltype(read(parent, path))> {
    if (!parent.contains(key) || parent.at(key).is_null()) return std::nullopt;
    return read(parent.at(key), path + "." + key);
  }

  template <class F>
  auto rethrow(const std::string& path, F body) const -> decltype(body()) {
    try {
      return body();
    } catch (const Error& e) {
      if (e.code() == Errc::ParseError) throw;
      fail(e.code(), path, e.message());
    }
  }

 private:
  std::string source_;
};

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses a workspace from JSON text. `source` only labels diagnostics.
inline Workspace parse_config_text(const std::string& text, const std::string& source = "<config>") {
  detail::Reader rd(source);
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, source + ": " + detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1) +
                                      ": malformed JSON");
  }
  rd.object(root, "", {"lattice", "divisors", "scenario", "chains", "log_pair"});
  if (!root.contains("lattice")) throw Error(Errc::MissingSection, source + ": missing section 'lattice'");

  const Json& lj = rd.object(root.at("lattice"), "lattice", {"curves", "gram"});
  if (!lj.contains("curves")) rd.fail(Errc::ParseError, "lattice.curves", "missing");
  if (!lj.contains("gram")) rd.fail(Errc::ParseError, "lattice.gram", "missing");
  std::vector<std::string> curves;
  const Json& cj = rd.array(lj.at("curves"), "lattice.curves");
  for (std::size_t i = 0; i < cj.size(); ++i) curves.push_back(rd.string(cj[i], "lattice.curves[" + std::to_string(i) + "]"));
  std::vector<std::vector<std::int64_t>> gram;
  const Json& gj = rd.array(lj.at("gram"), "lattice.gram");
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const std::string row_path = "lattice.gram[" + std::to_string(i) + "]";
    const Json& row = rd.array(gj[i], row_path);
    std::vector<std::int64_t> r;
    for (std::size_t j = 0; j < row.size(); ++j) r.push_back(rd.integer(row[j], row_path + "[" + std::to_string(j) + "]"));
    gram.push_back(std::move(r));
  }
  auto lattice = rd.rethrow("lattice", [&] { return IntersectionLattice::build(curves, gram); });

  Workspace ws{lattice, {}, std::nullopt, std::nullopt, std::nullopt};

  if (root.contains("divisors")) {
    const Json& dj = root.at("divisors");
    if (!dj.is_object()) rd.fail(Errc::ParseError, "divisors", "expected an object");
    for (const auto& [label, vec] : dj.items()) {
      const std::string path = "divisors." + label;
      const Json& arr = rd.array(vec, path);
      std::vector<Rational> coeffs;
      for (std::size_t i = 0; i < arr.size(); ++i) coeffs.push_back(rd.rational(arr[i], path + "[" + std::to_string(i) + "]"));
      if (coeffs.size() != lattice.rank())
        rd.fail(Errc::ValidationError, path,
                "has " + std::to_string(coeffs.size()) + " coefficients for a lattice of rank " + std::to_string(lattice.rank()));
      ws.divisors.emplace(label, DivisorClass(lattice, std::move(coeffs)));
    }
  }

  if (root.contains("scenario") && !root.at("scenario").is_null()) {
    const Json& sj = rd.object(root.at("scenario"), "scenario",
                               {"h0", "pencil", "DF", "kappa_nonneg", "ruled", "minus_one_classes", "base_genus"});
    Scenario s;
    if (!sj.contains("h0")) rd.fail(Errc::ParseError, "scenario.h0", "missing");
    s.h0 = rd.integer(sj.at("h0"), "scenario.h0");
    auto as_int = [&](const Json& j, const std::string& p) { return rd.integer(j, p); };
    auto as_bool = [&](const Json& j, const std::string& p) { return rd.boolean(j, p); };
    s.pencil = rd.optional(sj, "pencil", "scenario", as_bool).value_or(false);
    s.df = rd.optional(sj, "DF", "scenario", as_int);
    s.kappa_nonneg = rd.optional(sj, "kappa_nonneg", "scenario", as_bool);
    s.ruled = rd.optional(sj, "ruled", "scenario", as_bool);
    s.base_genus = rd.optional(sj, "base_genus", "scenario", as_int);
    if (sj.contains("minus_one_classes") && !sj.at("minus_one_classes").is_null()) {
      const Json& mj = rd.array(sj.at("minus_one_classes"), "scenario.minus_one_classes");
      for (std::size_t i = 0; i < mj.size(); ++i)
        s.minus_one_classes.push_back(rd.string(mj[i], "scenario.minus_one_classes[" + std::to_string(i) + "]"));
    }
    rd.rethrow("scenario", [&] { s.validate(lattice); });
    ws.scenario = std::move(s);
  }

  if (root.contains("chains") && !root.at("chains").is_null()) {
    const Json& chj = rd.array(root.at("chains"), "chains");
    std::vector<ChainSpec> chains;
    for (std::size_t c = 0; c < chj.size(); ++c) {
      const std::string path = "chains[" + std::to_string(c) + "]";
      const Json& one = rd.object(chj[c], path, {"e"});
      if (!one.contains("e")) rd.fail(Errc::ParseError, path + ".e", "missing");
      const Json& ej = rd.array(one.at("e"), path + ".e");
      std::vector<std::int64_t> e;
      for (std::size_t i = 0; i < ej.size(); ++i) e.push_back(rd.integer(ej[i], path + ".e[" + std::to_string(i) + "]"));
      chains.push_back(rd.rethrow(path, [&] { return chain_spec(e); }));
    }
    ws.chains = std::move(chains);
  }

  if (root.contains("log_pair") && !root.at("log_pair").is_null()) {
    const Json& pj = rd.object(root.at("log_pair"), "log_pair", {"K", "delta", "n"});
    LogPairSection lp;
    if (!pj.contains("K")) rd.fail(Errc::ParseError, "log_pair.K", "missing");
    lp.k_label = rd.string(pj.at("K"), "log_pair.K");
    if (!ws.divisors.count(lp.k_label)) rd.fail(Errc::UnknownLabel, "log_pair.K", "no divisor named '" + lp.k_label + "'");
    lp.n = pj.contains("n") ? rd.integer(pj.at("n"), "log_pair.n") : 1;
    if (lp.n < 1) rd.fail(Errc::ValidationError, "log_pair.n", "must be positive");
    if (pj.contains("delta")) {
      const Json& dj = rd.array(pj.at("delta"), "log_pair.delta");
      for (std::size_t i = 0; i < dj.size(); ++i) {
        const std::string path = "log_pair.delta[" + std::to_string(i) + "]";
        const Json& e = rd.object(dj[i], path, {"curve", "a"});
        if (!e.contains("curve")) rd.fail(Errc::ParseError, path + ".curve", "missing");
        if (!e.contains("a")) rd.fail(Errc::ParseError, path + ".a", "missing");
        const std::string curve = rd.string(e.at("curve"), path + ".curve");
        rd.rethrow(path + ".curve", [&] { return lattice.index_of(curve); });
        lp.delta.emplace_back(curve, rd.rational(e.at("a"), path + ".a"));
      }
    }
    ws.log_pair = std::move(lp);
  }
  return ws;
}

inline Workspace parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

inline Json rational_array(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

/// Canonical form: fixed key order, divisors sorted by label, every optional
/// scenario field written out.
inline Json dump_config(const Workspace& ws) {
  Json j;
  j["lattice"]["curves"] = ws.lattice.names();
  j["lattice"]["gram"] = ws.lattice.gram_matrix();
  j["divisors"] = Json::object();
  for (const auto& [label, d] : ws.divisors) j["divisors"][label] = rational_array(d.coeffs());
  if (ws.scenario) {
    const auto& s = *ws.scenario;
    Json sj;
    sj["h0"] = s.h0;
    sj["pencil"] = s.pencil;
    sj["DF"] = s.df ? Json(*s.df) : Json(nullptr);
    sj["kappa_nonneg"] = s.kappa_nonneg ? Json(*s.kappa_nonneg) : Json(nullptr);
    sj["ruled"] = s.ruled ? Json(*s.ruled) : Json(nullptr);
    sj["minus_one_classes"] = s.minus_one_classes;
    sj["base_genus"] = s.base_genus ? Json(*s.base_genus) : Json(nullptr);
    j["scenario"] = std::move(sj);
  }
  if (ws.chains) {
    Json cj = Json::array();
    for (const auto& c : *ws.chains) cj.push_back(Json{{"e", c.e_seq}});
    j["chains"] = std::move(cj);
  }
  if (ws.log_pair) {
    Json pj;
    pj["K"] = ws.log_pair->k_label;
    pj["delta"] = Json::array();
    for (const auto& [curve, a] : ws.log_pair->delta) pj["delta"].push_back(Json{{"curve", curve}, {"a", a.str()}});
    pj["n"] = ws.log_pair->n;
    j["log_pair"] = std::move(pj);
  }
  return j;
}

}  // namespace noether
