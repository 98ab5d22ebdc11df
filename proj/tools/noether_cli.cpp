#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "noether/report.hpp"

namespace {

int fail(int code, const std::string& kind, const std::string& message, bool json) {
  if (json) {
    noether::Json j;
    j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << "error: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zariski decompositions, the invariant e, and Noether-type volume bounds on intersection lattices"};
  app.set_version_flag("--version", "noether 1.0");

  noether::Options o;
  std::optional<std::string> config;
  bool json = false;
  bool ruled = false, not_ruled = false, kappa = false;

  app.add_option("command", o.command,
                 "zariski | volume | einv | chain | foliation | logpair | bounds | audit | catalog | config")
      ->required();
  app.add_option("--config", config, "workspace JSON file");
  app.add_flag("--json", json, "emit JSON instead of text");
  app.add_option("--divisor", o.divisor, "divisor label");
  app.add_option("--m", o.m, "moving part label (audit) or the class A (einv)");
  app.add_option("--z", o.z, "fixed part label");
  app.add_option("--fibre", o.fibre, "fibre class label");
  app.add_option("--fibre-mult", o.fibre_mult, "n with M = nF");
  app.add_option("--e", o.e, "chain as comma list (repeatable), or the invariant for bounds")->allow_extra_args(false);
  app.add_option("--scale", o.scale, "foliation multiple m");
  app.add_option("--h0", o.h0, "h0(D)");
  app.add_option("--einv", o.einv, "the invariant e for bounds, as a rational");
  app.add_option("--pm", o.pm, "plurigenus p_m or P_m");
  app.add_option("--mm", o.mm, "the multiple m for --pm");
  app.add_option("--family", o.family, "log | foliation, for --pm bounds");
  app.add_option("--lambda", o.lambda, "ps-index");
  app.add_option("--d", o.d, "projective dimension for the catalog");
  app.add_flag("--pencil", o.pencil, "|D| is composed with a pencil");
  app.add_flag("--kappa-nonneg", kappa, "kappa >= 0");
  app.add_flag("--ruled", ruled, "the surface is ruled");
  app.add_flag("--not-ruled", not_ruled, "the surface is not ruled");
  app.add_option("--max-support", o.max_support, "cap on |Supp N| for the invariant e")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return static_cast<int>(noether::ErrorCategory::Usage);
  }
  if (ruled && not_ruled) return fail(1, "UsageError", "--ruled and --not-ruled exclude each other", json);
  if (ruled) o.ruled = true;
  if (not_ruled) o.ruled = false;
  if (kappa) o.kappa_nonneg = true;

  try {
    std::optional<noether::Workspace> ws;
    if (config) ws = noether::parse_config(*config);
    const noether::Json report = noether::run_command(ws, o);
    if (json)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << noether::render_text(report);
    return 0;
  } catch (const noether::UsageError& e) {
    return fail(static_cast<int>(noether::ErrorCategory::Usage), "UsageError", e.what(), json);
  } catch (const noether::Error& e) {
    return fail(static_cast<int>(noether::category(e.code())), std::string(noether::name(e.code())), e.what(), json);
  }
}
