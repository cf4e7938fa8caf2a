#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conerate/commands.hpp"
#include "conerate/errors.hpp"
#include "conerate/io.hpp"

namespace {

void emit(const conerate::CommandResult& r, const std::string& json_out, const std::string& csv_out) {
  const std::string text = conerate::dump_report(r.report);
  if (json_out.empty())
    std::cout << text;
  else
    conerate::write_file_atomically(json_out, text);
  if (!csv_out.empty()) {
    if (!r.csv) throw conerate::ValidationError("--csv-out is only produced by simulate");
    conerate::write_file_atomically(csv_out, *r.csv);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contraction rates of Markov operators on cones"};
  app.require_subcommand(1);
  app.fallthrough();

  conerate::CommandOptions opts;
  std::string json_out, csv_out, x0;
  app.add_option("--seed", opts.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", opts.tol, "Convergence and certification tolerance")->capture_default_str();
  app.add_option("--restarts", opts.restarts, "Multi-start count")->capture_default_str();
  app.add_option("--json-out", json_out, "Write the report here instead of stdout");
  app.add_option("--csv-out", csv_out, "Trajectory CSV (simulate)");

  std::string path;
  auto* stochastic = app.add_subcommand("analyze-stochastic", "Ergodicity coefficients of a stochastic matrix");
  auto* kraus = app.add_subcommand("analyze-kraus", "Contraction estimate and zero-error check for a Kraus map");
  auto* certify = app.add_subcommand("certify", "Subspace convergence certificate for a Kraus map");
  auto* simulate = app.add_subcommand("simulate", "Consensus and Markov orbits with bound verification");
  for (auto* sub : {stochastic, kraus, certify, simulate})
    sub->add_option("path", path, "Matrix file (JSON)")->required();
  certify->add_flag("--require-decision", opts.require_decision, "Exit with 3 when the verdict is INCONCLUSIVE");
  certify->add_flag("--exhaustive", opts.exhaustive, "Also search from a fixed grid of start pairs (n <= 3)");
  simulate->add_option("--x0", x0, "Initial state file (vector or hermitian); barycenter if omitted");
  simulate->add_option("--steps", opts.steps, "Number of steps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : conerate::kExitValidation;
  }
  if (!x0.empty()) opts.x0_path = x0;

  try {
    conerate::CommandResult r;
    if (stochastic->parsed())
      r = conerate::cmd_analyze_stochastic(path, opts);
    else if (kraus->parsed())
      r = conerate::cmd_analyze_kraus(path, opts);
    else if (certify->parsed())
      r = conerate::cmd_certify(path, opts);
    else
      r = conerate::cmd_simulate(path, opts);
    emit(r, json_out, csv_out);
    return r.exit_code;
  } catch (const conerate::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return conerate::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return conerate::kExitFailure;
  }
}
