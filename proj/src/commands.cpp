#include "fdcs/commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fdcs/coherent_states.hpp"
#include "fdcs/dynamics.hpp"
#include "fdcs/errors.hpp"
#include "fdcs/fd_oracle.hpp"
#include "fdcs/morse_observables.hpp"
#include "fdcs/mpt_observables.hpp"

namespace fdcs {

namespace {

// Default |alpha| scan end for the su(2)-like models, as a fraction of the
// displacement pole. Beyond roughly 0.3 the truncated commutator <[x_D, p_D]>
// of the Morse observables passes through zero.
constexpr double kScanPoleFraction = 0.28;

std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string format_cell(const Cell& c, int precision) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d, precision);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::json json_cell(const Cell& c, int precision) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::strtod(format_double(*d, precision).c_str(), nullptr);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string truncation_label(const RunConfig& config) {
  return config.state.truncation.empty() ? "default" : config.state.truncation;
}

std::string num(double v) { return format_double(v, 12); }

Complex config_alpha(const RunConfig& config, const ModelParams& model, const Truncation& trunc) {
  const auto kind = make_state_kind(config.state);
  const double mag = config.state.target_mean_n
                         ? invert_alpha(model, kind, *config.state.target_mean_n, trunc, config.state.renormalize)
                         : config.state.alpha_abs.value_or(0.0);
  return std::polar(mag, config.state.alpha_phase);
}

CoherentStateSpec config_state(const RunConfig& config, const ModelParams& model) {
  const Truncation trunc = make_truncation(config.state, model);
  return {make_state_kind(config.state), model, config_alpha(config, model, trunc), trunc, config.state.renormalize};
}

struct CheckList {
  Table table;

  void add(const std::string& name, double residual, double tolerance, bool lower_bound = false) {
    const bool pass = lower_bound ? residual >= tolerance : (std::isfinite(residual) && residual < tolerance);
    table.rows.push_back({name, residual, tolerance, std::string(pass ? "PASS" : "FAIL")});
    table.ok = table.ok && pass;
  }
};

}  // namespace

std::pair<QuadOperator, QuadOperator> observables_for(const ModelParams& model, std::size_t state_dim) {
  switch (model.kind()) {
    case ModelKind::Harmonic:
      return {harmonic_x_matrix(state_dim + 1), harmonic_p_matrix(state_dim + 1)};
    case ModelKind::Morse:
      return {morse_x_matrix(model), morse_p_matrix(model)};
    case ModelKind::ModifiedPT: {
      const MptObservables obs(model);
      return {obs.x_matrix(), obs.p_matrix()};
    }
    case ModelKind::TrigPT:
      break;
  }
  throw DomainError("no deformed coordinate/momentum observables are defined for the trigonometric well");
}

Table cmd_spectrum(const RunConfig& config) {
  const ModelParams model = make_model(config.model);
  const std::size_t levels = bound_dim(model).value_or(config.grid.levels);
  const Potential pot = potential_for(model);
  const Eigen::VectorXd fd = fd_spectrum(pot, levels);
  Table t;
  t.columns = {"n", "E_n", "E_n_fd", "rel_err"};
  for (std::size_t n = 0; n < levels; ++n) {
    const double e = energy(model, n);
    const double ef = fd(static_cast<Eigen::Index>(n));
    t.rows.push_back({static_cast<long long>(n), e, ef, std::abs(ef - e) / std::abs(e)});
  }
  t.meta = {{"model", model.id()}, {"potential", pot.describe()}};
  return t;
}

Table cmd_state(const RunConfig& config) {
  const ModelParams model = make_model(config.model);
  const CoherentStateSpec spec = config_state(config, model);
  const BuiltState built = build_state(spec);
  Table t;
  t.columns = {"n", "P_n"};
  const auto p = occupation_distribution(built.state);
  for (std::size_t n = 0; n < p.size(); ++n) t.rows.push_back({static_cast<long long>(n), p[n]});
  t.meta = {{"model", model.id()},
            {"alpha_abs", num(std::abs(spec.alpha))},
            {"alpha_phase", num(std::arg(spec.alpha))},
            {"mean_n", num(mean_occupation(built.state))},
            {"norm", num(std::sqrt(built.state.norm_squared()))},
            {"retained_norm2", num(built.retained_norm2)}};
  return t;
}

Table cmd_evolve(const RunConfig& config) {
  const ModelParams model = make_model(config.model);
  const CoherentStateSpec spec = config_state(config, model);
  const BuiltState built = build_state(spec);
  const auto [x, p] = observables_for(model, built.state.dim());
  const TimeGrid grid = config.grid.t_max ? TimeGrid::span(*config.grid.t_max, config.grid.t_steps)
                                          : default_time_grid(model, config.grid.t_steps);
  const TimeSeries ts = trajectory(built.state, model, x, p, grid);
  Table t;
  t.columns = {"t", "x_mean", "p_mean", "var_x", "var_p", "delta_xp"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t.rows.push_back({ts.t[i], ts.x_mean[i], ts.p_mean[i], ts.var_x[i], ts.var_p[i], ts.delta_xp[i]});
  }
  t.meta = {{"model", model.id()},
            {"alpha_abs", num(std::abs(spec.alpha))},
            {"mean_n", num(mean_occupation(built.state))}};
  return t;
}

Table cmd_scan_alpha(const RunConfig& config) {
  const ModelParams model = make_model(config.model);
  const Truncation trunc = make_truncation(config.state, model);
  const StateKind kind = make_state_kind(config.state);
  const double pole = docs_alpha_pole(model);
  const double alpha_max = config.grid.alpha_max.value_or(std::isfinite(pole) ? kScanPoleFraction * pole : 3.0);
  if (kind == StateKind::Docs && alpha_max >= pole) {
    throw RangeError("alpha-max " + num(alpha_max) + " reaches the displacement pole at " + num(pole));
  }
  const std::size_t steps = config.grid.alpha_steps;
  Table t;
  t.columns = {"alpha_abs", "var_x0", "var_p0", "delta_xp0"};
  for (std::size_t i = 0; i < steps; ++i) {
    const double mag = alpha_max * static_cast<double>(i) / static_cast<double>(steps - 1);
    const CoherentStateSpec spec{kind, model, std::polar(mag, config.state.alpha_phase), trunc,
                                 config.state.renormalize};
    const FockVector psi = build_state(spec).state;
    const auto [x, p] = observables_for(model, psi.dim());
    const auto r = uncertainty_report(psi, x, p);
    t.rows.push_back({mag, r.x.variance, r.p.variance, r.delta_xp.value_or(std::nan(""))});
  }
  t.meta = {{"model", model.id()}};
  return t;
}

Table cmd_verify(const RunConfig& config) {
  const ModelParams model = make_model(config.model);
  CheckList checks;
  checks.table.columns = {"check", "residual", "tolerance", "status"};

  // Algebraic spectrum against the finite-difference well.
  {
    std::size_t top = 7;
    double tol = 1e-4;
    if (model.kind() == ModelKind::Morse) {
      top = 10;
      tol = 1e-3;
    } else if (model.kind() == ModelKind::Harmonic) {
      tol = 1e-8;
    }
    if (const auto bd = bound_dim(model)) top = std::min(top, *bd - 1);
    const Eigen::VectorXd fd = fd_spectrum(potential_for(model), top + 1);
    double worst = 0.0;
    for (std::size_t n = 0; n <= top; ++n) {
      const double e = energy(model, n);
      worst = std::max(worst, std::abs(fd(static_cast<Eigen::Index>(n)) - e) / std::abs(e));
    }
    checks.add("spectrum_vs_fd(n<=" + std::to_string(top) + ")", worst, tol);
  }

  // Closed-form DOCS against the dense exponential.
  for (const double mag : {0.1, 0.5, 1.0, 2.0}) {
    if (mag >= docs_alpha_pole(model)) continue;
    const Complex alpha(mag, 0.0);
    const auto block = invariant_dim(model);
    auto spec = CoherentStateSpec::docs(model, alpha);
    spec.truncation = block ? Truncation::full_block() : Truncation::adaptive();
    spec.renormalize = false;
    const FockVector closed = build_docs(spec);
    const std::size_t dim = block ? *block : 2 * closed.dim() + 20;
    const FockVector oracle = docs_exponential_oracle(model, alpha, dim);
    const FockVector a = closed.resized(dim);
    checks.add("docs_vs_expm(|alpha|=" + num(mag) + ")", (a.amplitudes() - oracle.amplitudes()).cwiseAbs().maxCoeff(),
               1e-8);
  }

  // AOCS eigen-equation on every row except the cut one.
  {
    const Complex alpha(1.0, 0.0);
    auto spec = CoherentStateSpec::aocs(model, alpha);
    spec.truncation = invariant_dim(model) ? Truncation::full_block() : Truncation::adaptive();
    const FockVector psi = build_aocs(spec);
    const auto d = static_cast<Eigen::Index>(psi.dim());
    const Eigen::VectorXcd r = ladder_down_matrix(model, psi.dim()).cast<Complex>() * psi.amplitudes() - alpha * psi.amplitudes();
    checks.add("aocs_eigen_residual(|alpha|=1)", r.head(d - 1).norm(), 1e-12);
  }

  if (model.kind() != ModelKind::TrigPT) {
    const double mag = config.state.alpha_abs.value_or(0.5);
    auto spec = CoherentStateSpec::docs(model, Complex(mag, 0.0));
    if (config.state.target_mean_n) spec.alpha = invert_alpha(model, StateKind::Docs, *config.state.target_mean_n);
    const FockVector psi = build_state(spec).state;
    const auto [x, p] = observables_for(model, psi.dim());
    checks.add("hermiticity_x", x.hermiticity_defect(), 1e-12);
    checks.add("hermiticity_p", p.hermiticity_defect(), 1e-12);

    const TimeGrid grid = default_time_grid(model, 512);
    const TimeSeries ts = trajectory(psi, model, x, p, grid);
    double norm_drift = 0.0;
    double n_drift = 0.0;
    double min_delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      norm_drift = std::max(norm_drift, std::abs(ts.norm[i] - ts.norm[0]));
      n_drift = std::max(n_drift, std::abs(ts.mean_n[i] - ts.mean_n[0]));
      if (!std::isnan(ts.delta_xp[i])) min_delta = std::min(min_delta, ts.delta_xp[i]);
    }
    checks.add("norm_drift", norm_drift, 1e-12);
    checks.add("mean_n_drift", n_drift, 1e-12);
    checks.add("robertson_min_delta_xp", min_delta, 1.0 - 1e-8, true);

    if (model.kind() == ModelKind::Morse) {
      const double revival = std::numbers::pi / (model.omega() * model.deformation_scale());
      double heis = 0.0;
      double rev = 0.0;
      for (std::size_t i = 0; i < grid.count; i += 8) {
        const double t = grid.at(i);
        heis = std::max(heis, heisenberg_ladder_check(model, psi, t));
        rev = std::max(rev, std::abs(std::abs(ladder_expectation_schrodinger(model, psi, t + revival)) -
                                     std::abs(ladder_expectation_schrodinger(model, psi, t))));
      }
      checks.add("heisenberg_vs_schrodinger", heis, 1e-10);
      checks.add("ladder_revival", rev, 1e-10);
    }

    if (model.kind() == ModelKind::Harmonic) {
      const double nbar = mag * mag;
      double worst = 0.0;
      const auto pn = occupation_distribution(psi);
      for (std::size_t n = 0; n < pn.size(); ++n) {
        const double poisson = std::exp(-nbar + static_cast<double>(n) * std::log(std::max(nbar, 1e-300)) -
                                        std::lgamma(static_cast<double>(n) + 1.0));
        worst = std::max(worst, std::abs(pn[n] - (n == 0 && nbar == 0.0 ? 1.0 : poisson)));
      }
      checks.add("poisson_distribution", worst, 1e-10);
      checks.add("delta_xp_minus_one", std::abs(uncertainty_report(psi, x, p).delta_xp.value_or(0.0) - 1.0), 1e-10);
    }
  }

  if (model.kind() == ModelKind::ModifiedPT) {
    const MptObservables obs(model);
    const std::size_t levels = obs.levels();
    const Potential pot = potential_for(model);
    GridSpec grid = default_grid(pot, levels);
    grid.nodes = 6001;
    const auto fd = fd_element_tables(pot, levels, grid);
    double diff = 0.0;
    double parity = 0.0;
    for (std::size_t m = 0; m < levels; ++m) {
      for (std::size_t n = 0; n < levels; ++n) {
        const auto i = static_cast<Eigen::Index>(m);
        const auto j = static_cast<Eigen::Index>(n);
        diff = std::max({diff, std::abs(fd.x(i, j) - obs.x_element(m, n)), std::abs(fd.p(i, j) - obs.p_element(m, n))});
        if ((m + n) % 2 == 0) parity = std::max({parity, std::abs(fd.x(i, j)), m == n ? 0.0 : std::abs(fd.p(i, j))});
      }
    }
    checks.add("elements_quadrature_vs_fd", diff, 1e-5);
    checks.add("fd_parity_zeros", parity, 1e-8);
  }

  checks.table.meta = {{"model", model.id()}, {"result", checks.table.ok ? "PASS" : "FAIL"}};
  return checks.table;
}

Table run_task(const RunConfig& config) {
  config.validate();
  if (config.task == "spectrum") return cmd_spectrum(config);
  if (config.task == "state") return cmd_state(config);
  if (config.task == "evolve") return cmd_evolve(config);
  if (config.task == "scan-alpha") return cmd_scan_alpha(config);
  return cmd_verify(config);
}

std::string render(const Table& table, const RunConfig& config) {
  const int prec = config.output.precision;
  const std::string hash = config_hash(config);
  const std::string renorm = config.state.renormalize ? "true" : "false";
  std::ostringstream os;
  if (config.output.format == "json") {
    nlohmann::json j;
    j["task"] = config.task;
    j["config_hash"] = hash;
    j["truncation"] = truncation_label(config);
    j["renormalize"] = config.state.renormalize;
    j["columns"] = table.columns;
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : table.meta) meta[k] = v;
    j["meta"] = meta;
    nlohmann::json data = nlohmann::json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      nlohmann::json col = nlohmann::json::array();
      for (const auto& row : table.rows) col.push_back(json_cell(row[c], prec));
      data[table.columns[c]] = col;
    }
    j["data"] = data;
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# fdcs " << config.task << '\n';
  os << "# config_hash=" << hash << " truncation=" << truncation_label(config) << " renormalize=" << renorm << '\n';
  for (const auto& [k, v] : table.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_cell(row[c], prec);
    os << '\n';
  }
  return os.str();
}

void write_output(const Table& table, const RunConfig& config) {
  const std::string text = render(table, config);
  if (config.output.path.empty()) {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(config.output.path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DomainError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DomainError("cannot move output into place at " + target.string());
  }
}

}  // namespace fdcs
