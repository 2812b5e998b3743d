// Command line front end for the noncommutative calculus engine.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncg/workbench.hpp"
#include "ncg/workbench_json.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) ncg::fail(ncg::Err::ConfigError, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact pseudo-Riemannian calculus over noncommutative algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, format, q_mode = "formal", expr;
  bool check_all = false;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--format", format, "text | latex | json");
  app.add_option("--q", q_mode, "formal | one")->check(CLI::IsMember({"formal", "one"}));
  app.add_flag("--check-all", check_all, "run every stage the config supports");

  const char* names[] = {"validate",   "levi-civita", "curvature",      "laplacian",
                         "hom-check",  "embed",       "alpha",          "gauss-check",
                         "mean-curvature", "minimal"};
  const char* briefs[] = {
      "check algebra, derivation and metric axioms",
      "construct the Levi-Civita connection and verify it",
      "print the nonzero curvature components",
      "apply the Laplace operator to an expression",
      "validate the homomorphism triple and print its module map",
      "print the induced metric and embedding certificates",
      "print the second fundamental form, shape and normal maps",
      "verify Gauss' equation for every index tuple",
      "print the mean curvature against the normal basis",
      "decide minimality; exits 1 with obstructions when not minimal"};
  for (size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], briefs[i]);
    if (std::string(names[i]) == "laplacian")
      sub->add_option("expression", expr, "element of the configured algebra")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ncg::WorkbenchConfig cfg = ncg::parse_workbench_config(slurp(config_path));
    if (format.empty()) format = cfg.format;
    ncg::Workbench wb = ncg::build_workbench(cfg);
    const std::string command = app.get_subcommands().front()->get_name();
    ncg::RunResult rr =
        ncg::run_workbench(wb, command, expr, format, q_mode == "one", check_all);
    if (format == "json")
      std::cout << ncg::render_run_json(rr);
    else
      std::cout << ncg::render_run_text(rr);
    return rr.exit_code;
  } catch (const ncg::EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
