// Command-line front end: argv parsing and dispatch only; the command
// logic lives in curvlab/cli.hpp so it stays testable in-process.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "curvlab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"curvlab — numerical laboratory for the curvature algebra of "
               "almost Hermitian spaces"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "check the structural invariants of a tensor file");
  validate->add_option("path", validate_path, "tensor document (JSON)")->required();

  std::string analyze_path;
  curvlab::cli::AnalyzeCommandOptions analyze_options;
  CLI::App* analyze =
      app.add_subcommand("analyze", "residuals, constancy sweeps, model fit and verdicts");
  analyze->add_option("path", analyze_path, "tensor document (JSON)")->required();
  analyze->add_option("--tol", analyze_options.tol,
                      "relative tolerance for verdicts (default 1e-8)");
  analyze->add_option("--samples", analyze_options.samples,
                      "random planes / trials per check (default 200)");
  analyze->add_option("--seed", analyze_options.seed, "random seed (default 0)");
  analyze->add_flag("--json", analyze_options.json, "emit the JSON report");

  std::string fit_path;
  CLI::App* fit = app.add_subcommand(
      "fit", "least-squares parameters (K, c) of the nearest model tensor");
  fit->add_option("path", fit_path, "tensor document (JSON)")->required();

  curvlab::cli::GenerateCommandOptions generate_options;
  CLI::App* generate = app.add_subcommand("generate", "write a named example tensor");
  generate->add_option("--kind", generate_options.kind, "one of: space-form, "
                       "complex-space-form, model, random, random-rk, kernel-31, "
                       "kernel-38, perturbed")
      ->required();
  generate->add_option("--m", generate_options.m, "half dimension, >= 2 (default 2)");
  generate->add_option("--K", generate_options.K, "antiholomorphic sectional curvature");
  generate->add_option("--c", generate_options.c, "holomorphic sectional curvature");
  generate->add_option("--seed", generate_options.seed, "random seed (default 0)");
  generate->add_option("--eps", generate_options.eps, "perturbation size (kind perturbed)");
  generate->add_option("--out", generate_options.out_path,
                       "output path (omit to print the document to stdout)");

  curvlab::cli::VerifyCommandOptions verify_options;
  CLI::App* verify = app.add_subcommand(
      "verify", "run one of the built-in verifiers on randomized instances");
  verify->add_option("--lemma", verify_options.lemma, "statement to check: 1, 3, 4 or A")
      ->required();
  verify->add_option("--m", verify_options.m, "half dimension, >= 2 (default 2)");
  verify->add_option("--trials", verify_options.trials,
                     "random elements / planes per batch (default 20; statement A "
                     "raises this to the subspace dimension)");
  verify->add_option("--seed", verify_options.seed, "random seed (default 0)");
  verify->add_flag("--json", verify_options.json, "emit the verdict as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return curvlab::cli::exit_usage;
  }

  if (validate->parsed())
    return curvlab::cli::cmd_validate(validate_path, std::cout, std::cerr);
  if (analyze->parsed())
    return curvlab::cli::cmd_analyze(analyze_path, analyze_options, std::cout, std::cerr);
  if (fit->parsed()) return curvlab::cli::cmd_fit(fit_path, std::cout, std::cerr);
  if (generate->parsed())
    return curvlab::cli::cmd_generate(generate_options, std::cout, std::cerr);
  if (verify->parsed())
    return curvlab::cli::cmd_verify(verify_options, std::cout, std::cerr);
  return curvlab::cli::exit_usage;  // unreachable with require_subcommand(1)
}
