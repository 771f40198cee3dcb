#include "fdcs/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fdcs/errors.hpp"

namespace fdcs {

FockVector evolve(const FockVector& state, const ModelParams& model, double t) {
  FockVector out(state.dim());
  for (std::size_t n = 0; n < state.dim(); ++n) {
    const Complex c = state[n];
    if (c == Complex(0.0, 0.0)) continue;
    const double phase = -energy(model, n) * t / model.hbar();
    out[n] = c * std::polar(1.0, phase);
  }
  return out;
}

TimeGrid TimeGrid::span(double t_max, std::size_t count) {
  if (count == 0) throw DomainError("time grid needs at least one point");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("time grid end must be finite and >= 0");
  const double dt = count > 1 ? t_max / static_cast<double>(count - 1) : 0.0;
  return {0.0, dt, count};
}

TimeGrid default_time_grid(const ModelParams& model, std::size_t count) {
  constexpr double pi = std::numbers::pi;
  double t_max = 0.0;
  switch (model.kind()) {
    case ModelKind::Harmonic:
      t_max = 2.0 * pi / model.omega();
      break;
    case ModelKind::Morse:
      t_max = 2.0 * pi / (model.omega() * model.deformation_scale());
      break;
    case ModelKind::ModifiedPT: {
      const auto& m = model.as<ModifiedPT>();
      t_max = 16.0 * pi * m.mu / (model.hbar() * m.a * m.a);
      break;
    }
    case ModelKind::TrigPT: {
      const auto& m = model.as<TrigPT>();
      t_max = 4.0 * pi * m.mu / (model.hbar() * m.a * m.a);
      break;
    }
  }
  return TimeGrid::span(t_max, count);
}

TimeSeries trajectory(const FockVector& initial, const ModelParams& model, const QuadOperator& x,
                      const QuadOperator& p, const TimeGrid& grid) {
  TimeSeries ts;
  ts.model_id = model.id();
  ts.grid = grid;
  for (auto* col : {&ts.t, &ts.x_mean, &ts.p_mean, &ts.var_x, &ts.var_p, &ts.delta_xp, &ts.norm, &ts.mean_n}) {
    col->resize(grid.count);
  }
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    const FockVector psi = evolve(initial, model, t);
    const auto report = uncertainty_report(psi, x, p);
    ts.t[i] = t;
    ts.x_mean[i] = report.x.mean;
    ts.p_mean[i] = report.p.mean;
    ts.var_x[i] = report.x.variance;
    ts.var_p[i] = report.p.variance;
    ts.delta_xp[i] = report.delta_xp.value_or(std::numeric_limits<double>::quiet_NaN());
    ts.norm[i] = std::sqrt(psi.norm_squared());
    ts.mean_n[i] = mean_occupation(psi);
  }
  return ts;
}

TimeSeries trajectory(const CoherentStateSpec& spec, const QuadOperator& x, const QuadOperator& p,
                      const TimeGrid& grid) {
  TimeSeries ts = trajectory(build_state(spec).state, spec.model, x, p, grid);
  ts.state_label = std::string(spec.kind == StateKind::Aocs ? "aocs" : "docs") + "(|alpha|=" +
                   std::to_string(std::abs(spec.alpha)) + ",arg=" + std::to_string(std::arg(spec.alpha)) + ")";
  return ts;
}

Complex ladder_expectation_schrodinger(const ModelParams& model, const FockVector& initial, double t) {
  const FockVector psi = evolve(initial, model, t);
  const Eigen::MatrixXd a = ladder_down_matrix(model, psi.dim());
  return psi.amplitudes().dot(a.cast<Complex>() * psi.amplitudes());
}

Complex ladder_expectation_heisenberg(const ModelParams& model, const FockVector& initial, double t) {
  if (model.kind() != ModelKind::Morse) throw DomainError("closed Heisenberg form is implemented for Morse only");
  const double omega = model.omega();
  const double chi = model.deformation_scale();
  const Eigen::MatrixXd a = ladder_down_matrix(model, initial.dim());
  Eigen::VectorXcd v = a.cast<Complex>() * initial.amplitudes();
  for (Eigen::Index m = 0; m < v.size(); ++m) {
    v(m) *= std::polar(1.0, 2.0 * omega * chi * t * static_cast<double>(m));
  }
  return std::polar(1.0, -omega * t * (1.0 - 2.0 * chi)) * initial.amplitudes().dot(v);
}

double heisenberg_ladder_check(const ModelParams& model, const FockVector& initial, double t) {
  return std::abs(ladder_expectation_schrodinger(model, initial, t) - ladder_expectation_heisenberg(model, initial, t));
}

}  // namespace fdcs
