#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fdcs/coherent_states.hpp"
#include "fdcs/fock_vector.hpp"
#include "fdcs/model.hpp"
#include "fdcs/operators.hpp"

namespace fdcs {

/// c_n(t) = exp(-i E_n t / hbar) c_n(0). Throws DomainError if a level with
/// nonzero amplitude has no bound energy.
FockVector evolve(const FockVector& state, const ModelParams& model, double t);

struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  /// count points spanning [0, t_max] inclusive.
  static TimeGrid span(double t_max, std::size_t count);
};

/// Morse: [0, 2 pi / (Omega chi)]; modified PT: [0, 16 pi mu / (hbar a^2)];
/// harmonic: [0, 2 pi / Omega]; trigonometric PT: [0, 4 pi mu / (hbar a^2)].
TimeGrid default_time_grid(const ModelParams& model, std::size_t count = 4096);

struct TimeSeries {
  std::string model_id;
  std::string state_label;
  TimeGrid grid;
  std::vector<double> t;
  std::vector<double> x_mean;
  std::vector<double> p_mean;
  std::vector<double> var_x;
  std::vector<double> var_p;
  /// NaN where the commutator expectation vanishes.
  std::vector<double> delta_xp;
  std::vector<double> norm;
  std::vector<double> mean_n;

  std::size_t size() const { return t.size(); }
};

TimeSeries trajectory(const FockVector& initial, const ModelParams& model, const QuadOperator& x,
                      const QuadOperator& p, const TimeGrid& grid);
TimeSeries trajectory(const CoherentStateSpec& spec, const QuadOperator& x, const QuadOperator& p,
                      const TimeGrid& grid);

/// <A>(t) from the evolved state.
Complex ladder_expectation_schrodinger(const ModelParams& model, const FockVector& initial, double t);

/// <A>(t) = <psi| exp(-i Omega t (1 - 2 chi)) exp(2 i Omega chi t n) A |psi> for Morse.
Complex ladder_expectation_heisenberg(const ModelParams& model, const FockVector& initial, double t);

/// |Schrodinger - Heisenberg| for <A>(t).
double heisenberg_ladder_check(const ModelParams& model, const FockVector& initial, double t);

}  // namespace fdcs
