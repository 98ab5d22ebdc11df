#include <gtest/gtest.h>

#include <filesystem>

#include "cli_runner.hpp"
#include "noether/report.hpp"
#include "noether/workspace.hpp"

using namespace noether;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ValidationError;
}

Json run_json(const std::string& args) {
  auto r = cli::run("--json " + args);
  EXPECT_EQ(r.status, 0) << args;
  return Json::parse(r.out);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("noether_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Workspace, Minimal) {
  auto ws = parse_config(cli::fixture("minimal.json"));
  EXPECT_EQ(ws.lattice.rank(), 1U);
  EXPECT_EQ(ws.divisor("D")[0], Rational(2));
  EXPECT_FALSE(ws.scenario);
  EXPECT_FALSE(ws.chains);
}

TEST(Workspace, ChainFixture) {
  auto ws = parse_config(cli::fixture("chain_2_2.json"));
  ASSERT_TRUE(ws.chains);
  ASSERT_EQ(ws.chains->size(), 1U);
  EXPECT_EQ((*ws.chains)[0].gamma, (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));
}

TEST(Workspace, Errors) {
  EXPECT_EQ(code_of([] { parse_config(cli::fixture("bad_rational.json")); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_config(cli::fixture("malformed.json")); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_config(cli::fixture("unknown_key.json")); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_config_text(R"({"divisors": {}})"); }), Errc::MissingSection);
  EXPECT_EQ(code_of([] {
              parse_config_text(R"({"lattice": {"curves": ["H"], "gram": [[1]]}, "divisors": {"D": ["1", "2"]}})");
            }),
            Errc::ValidationError);
  EXPECT_EQ(code_of([] {
              parse_config_text(R"({"lattice": {"curves": ["H"], "gram": [[1]], "extra": 1}})");
            }),
            Errc::ParseError);
  EXPECT_EQ(code_of([] {
              parse_config_text(R"({"lattice": {"curves": ["H", "G"], "gram": [[1, 0], [1, -2]]}})");
            }),
            Errc::AsymmetricGram);
  EXPECT_EQ(code_of([] {
              parse_config_text(R"({"lattice": {"curves": ["H"], "gram": [[1]]},
                                    "log_pair": {"K": "K", "delta": [], "n": 1}})");
            }),
            Errc::UnknownLabel);
}

TEST(Workspace, MalformedReportsPosition) {
  try {
    parse_config(cli::fixture("malformed.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Workspace, DumpParsesBackEqual) {
  for (const auto& f : cli::valid_fixtures()) {
    auto ws = parse_config(cli::fixture(f));
    auto dumped = dump_config(ws).dump(2);
    auto again = parse_config_text(dumped);
    EXPECT_TRUE(again == ws) << f;
    EXPECT_EQ(dump_config(again).dump(2), dumped) << f;
  }
}

TEST(Report, ClassExpression) {
  auto l = IntersectionLattice::build({"H", "G1", "G2"}, {{1, 0, 0}, {0, -2, 1}, {0, 1, -2}});
  EXPECT_EQ(class_expr(l.make({Rational(2), Rational(1), Rational(1, 2)})), "2H + G1 + (1/2)G2");
  EXPECT_EQ(class_expr(l.zero()), "0");
}

TEST(Cli, ZariskiFixture) {
  auto j = run_json(cli::with_config("three_h_gamma.json", "zariski --divisor D"));
  EXPECT_EQ(j["positive"]["expr"], "3H");
  EXPECT_EQ(j["negative"]["expr"], "G");
  EXPECT_EQ(j["volume"], "9");
}

TEST(Cli, Chain) {
  auto j = run_json("chain --e 2,2");
  const auto& c = j["chains"][0];
  EXPECT_EQ(c["n"], "3");
  EXPECT_EQ(c["gamma"], Json::parse(R"(["2/3", "1/3"])"));
  EXPECT_EQ(c["e_inv"], "1");
}

TEST(Cli, PencilBound) {
  auto j = run_json("bounds --pencil --h0 5 --e 2");
  EXPECT_EQ(j["family"], "pencil");
  EXPECT_EQ(j["bound"], "8/3");
}

TEST(Cli, TextOutputMentionsValues) {
  auto r = cli::run(cli::with_config("three_h_gamma.json", "volume --divisor D"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("volume: 9"), std::string::npos) << r.out;
}

TEST(Cli, ErrorJson) {
  auto r = cli::run("--json " + cli::with_config("not_pseudoeffective.json", "zariski --divisor D"));
  EXPECT_EQ(r.status, 3);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "NotPseudoEffectiveInConfiguration");
  EXPECT_EQ(j["error"]["exit_code"], 3);
}

TEST(Cli, ExitCodes) {
  for (const auto& c : cli::exit_cases()) EXPECT_EQ(cli::run(c.args).status, c.expected) << c.args;
}

TEST(Cli, ReportsAreDeterministicAndRoundTrip) {
  for (const auto& c : cli::report_cases()) {
    const auto args = "--json " + cli::args_of(c);
    auto a = cli::run(args);
    auto b = cli::run(args);
    ASSERT_EQ(a.status, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(Json::parse(a.out).dump(2) + "\n", a.out) << args;
    auto ta = cli::run(cli::args_of(c));
    auto tb = cli::run(cli::args_of(c));
    EXPECT_EQ(ta.out, tb.out) << args;
  }
}

TEST(Cli, ConfigRoundTrip) {
  for (const auto& f : cli::valid_fixtures()) {
    auto first = cli::run("--json " + cli::with_config(f, "config"));
    ASSERT_EQ(first.status, 0) << f;
    const auto path = temp_path(f);
    cli::write_file(path.string(), first.out);
    auto second = cli::run("--json --config " + path.string() + " config");
    std::filesystem::remove(path);
    EXPECT_EQ(first.out, second.out) << f;
  }
}
