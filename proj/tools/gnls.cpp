#include <CLI11.hpp>

#include <iostream>

#include "gnls/cli.hpp"
#include "gnls/error.hpp"

int main(int argc, char** argv) {
  using namespace gnls;
  CLI::App app{"Boosted ground states of dispersion-generalized NLS: solve, verify, rearrange, sweep"};
  app.footer(exit_code_help());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  CliOverrides over;
  int jobs = 1;
  app.add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", over.out, "Output directory (overrides [run] out)");
  app.add_option("--seed", over.seed, "Seed for randomized suites");
  app.add_option("--jobs", jobs, "Concurrent solves for sweep")->check(CLI::PositiveNumber);
  app.add_option("--tol", over.tol, "Solver tolerance");

  auto* solve = app.add_subcommand("solve", "Minimize the Weinstein quotient; writes Q.gnf, trace.csv, report.txt");

  std::string field;
  auto* verify = app.add_subcommand("verify", "Symmetry, support and phase checks on a field; writes symmetry.csv");
  verify->add_option("field", field, "GNF1 field file")->required();

  std::string mode;
  auto* rearr = app.add_subcommand("rearrange", "Apply a rearrangement to a field; writes rearranged.gnf");
  rearr->add_option("field", field, "GNF1 field file")->required();
  rearr->add_option("--mode", mode, "sharp, sharp_e, bullet, schwarz or steiner")
      ->required()
      ->check(CLI::IsMember({"sharp", "sharp_e", "bullet", "schwarz", "steiner"}));

  std::optional<std::string> param;
  std::optional<double> from, to;
  std::optional<int> count;
  auto* sweep = app.add_subcommand("sweep", "Solve across a range of v or omega; writes sweep.csv");
  sweep->add_option("--param", param, "v or omega")->check(CLI::IsMember({"v", "omega"}));
  sweep->add_option("--from", from, "First value");
  sweep->add_option("--to", to, "Last value");
  sweep->add_option("--count", count, "Number of values");

  std::string suite = "all";
  auto* props = app.add_subcommand("props", "Run randomized property suites");
  props->add_option("--suite", suite, "rearrange, convolution, setops or all")
      ->check(CLI::IsMember({"rearrange", "convolution", "setops", "all"}));

  auto* sigma = app.add_subcommand("sigma", "Print Sigma_v = inf (p(xi) - v.xi)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    apply_overrides(cfg, over);
    if (param) cfg.sweep.param = *param;
    if (from) cfg.sweep.from = *from;
    if (to) cfg.sweep.to = *to;
    if (count) cfg.sweep.count = *count;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (solve->parsed()) return cmd_solve(cfg, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(cfg, field, std::cout, std::cerr);
  if (rearr->parsed()) return cmd_rearrange(cfg, field, mode, std::cout, std::cerr);
  if (sweep->parsed()) return cmd_sweep(cfg, jobs, std::cout, std::cerr);
  if (props->parsed()) return cmd_props(cfg.seed, suite, std::cout, std::cerr);
  if (sigma->parsed()) return cmd_sigma(cfg, std::cout, std::cerr);
  return kExitConfig;
}
