// Command-line front end: spectrum | state | evolve | scan-alpha | verify.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdcs/commands.hpp"
#include "fdcs/errors.hpp"
#include "fdcs/run_config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Flags {
  std::string model = "morse";
  std::optional<int> n_bound;
  std::optional<int> s;
  std::optional<double> lambda;
  std::optional<double> omega;
  std::optional<double> a;
  std::optional<double> mu;
  std::optional<double> hbar;
  std::string kind = "docs";
  std::optional<double> alpha_abs;
  double alpha_phase = 0.0;
  std::optional<double> target_mean_n;
  std::optional<double> t_max;
  std::size_t t_steps = 4096;
  std::optional<double> alpha_max;
  std::size_t alpha_steps = 101;
  std::size_t levels = 8;
  std::string truncation;
  bool no_renormalize = false;
  std::string output;
  std::string format = "csv";
  std::string config_file;
};

void add_shared_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--model", f.model, "harmonic | morse | mpt | tpt")
      ->check(CLI::IsMember({"harmonic", "morse", "mpt", "tpt"}));
  cmd.add_option("--n-bound", f.n_bound, "Morse bound-state count N");
  cmd.add_option("--s", f.s, "modified Poschl-Teller depth index s");
  cmd.add_option("--lambda", f.lambda, "trigonometric Poschl-Teller lambda");
  cmd.add_option("--omega", f.omega, "reference frequency Omega");
  cmd.add_option("--a", f.a, "Poschl-Teller range parameter a");
  cmd.add_option("--mu", f.mu, "mass");
  cmd.add_option("--hbar", f.hbar, "action unit");
  cmd.add_option("--kind", f.kind, "aocs | docs")->check(CLI::IsMember({"aocs", "docs"}));
  cmd.add_option("--alpha-abs", f.alpha_abs, "|alpha|");
  cmd.add_option("--alpha-phase", f.alpha_phase, "arg(alpha) in radians");
  cmd.add_option("--target-mean-n", f.target_mean_n, "choose |alpha| so that <n> matches");
  cmd.add_option("--t-max", f.t_max, "end of the time grid");
  cmd.add_option("--t-steps", f.t_steps, "number of time points");
  cmd.add_option("--alpha-max", f.alpha_max, "end of the |alpha| scan");
  cmd.add_option("--alpha-steps", f.alpha_steps, "number of scan points");
  cmd.add_option("--levels", f.levels, "spectrum rows for unbounded models");
  cmd.add_option("--truncation", f.truncation, "bound | block | adaptive")
      ->check(CLI::IsMember({"bound", "block", "adaptive"}));
  cmd.add_flag("--no-renormalize", f.no_renormalize, "keep the truncated state unnormalized");
  cmd.add_option("--output", f.output, "output file (stdout when omitted)");
  cmd.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--config", f.config_file, "JSON run config; its keys override the flags");
}

fdcs::RunConfig to_config(const std::string& task, const Flags& f) {
  fdcs::RunConfig c;
  c.task = task;
  c.model.variant = f.model;
  if (f.n_bound) c.model.n_bound = *f.n_bound;
  if (f.s) c.model.s = *f.s;
  if (f.lambda) c.model.lambda = *f.lambda;
  c.model.omega = f.omega;
  if (f.a) c.model.a = *f.a;
  if (f.mu) c.model.mu = *f.mu;
  if (f.hbar) c.model.hbar = *f.hbar;
  c.state.kind = f.kind;
  c.state.alpha_abs = f.alpha_abs;
  c.state.alpha_phase = f.alpha_phase;
  c.state.target_mean_n = f.target_mean_n;
  c.state.truncation = f.truncation;
  c.state.renormalize = !f.no_renormalize;
  c.grid.t_max = f.t_max;
  c.grid.t_steps = f.t_steps;
  c.grid.alpha_max = f.alpha_max;
  c.grid.alpha_steps = f.alpha_steps;
  c.grid.levels = f.levels;
  c.output.path = f.output;
  c.output.format = f.format;
  if (f.config_file.empty()) return c;

  std::ifstream in(f.config_file);
  if (!in) throw fdcs::DomainError("cannot read config file " + f.config_file);
  nlohmann::json merged = c;
  merged.merge_patch(nlohmann::json::parse(in));
  merged["task"] = task;
  return merged.get<fdcs::RunConfig>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed-oscillator coherent states: spectra, states, dynamics and oracle checks"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "algebraic levels next to the finite-difference spectrum"},
      {"state", "occupation distribution of a coherent state"},
      {"evolve", "quadrature means and variances over a time grid"},
      {"scan-alpha", "t=0 variances and uncertainty product versus |alpha|"},
      {"verify", "run the numerical self-checks; exit 3 if any fails"},
  };
  for (const auto& [name, help] : commands) {
    add_shared_options(*app.add_subcommand(name, help), flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const fdcs::RunConfig config = to_config(app.get_subcommands().front()->get_name(), flags);
    const fdcs::Table table = fdcs::run_task(config);
    fdcs::write_output(table, config);
    return table.ok ? 0 : kExitNumeric;
  } catch (const fdcs::ConvergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::range_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}
