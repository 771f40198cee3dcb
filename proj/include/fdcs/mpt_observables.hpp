#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fdcs/model.hpp"
#include "fdcs/operators.hpp"

namespace fdcs {

/// Bound eigenfunction of U0 tanh^2(ax):
///   psi_n(y) = N (1 - y^2)^{eps/2} F(-n, eps+s+1; eps+1; (1-y)/2),  y = tanh(ax), eps = s - n.
/// The terminating series equals n!/(2l)_n C_n^l(y), l = eps + 1/2, and is evaluated
/// by the Gegenbauer recurrence in y, which avoids cancellation for deep wells.
/// N > 0, so psi_n is positive as x -> +inf; normalized over x by Gauss-Legendre
/// quadrature in y, where the norm integrand is a polynomial for integer s.
class MptEigenfunction {
 public:
  MptEigenfunction(int n, int s, double a);

  int level() const { return n_; }
  int decay_exponent() const { return s_ - n_; }
  double normalization() const { return norm_; }

  /// Value at y = tanh(ax).
  double value_at_tanh(double y) const;
  double operator()(double x) const;
  /// d psi / dx by the chain rule dy/dx = a (1 - y^2).
  double derivative(double x) const;

  /// Integral of psi^2 over x with an m-point Gauss-Legendre rule in y.
  double norm_squared(std::size_t nodes) const;

 private:
  double polynomial(double y) const;
  double polynomial_derivative(double y) const;
  double raw_norm_squared(std::size_t nodes) const;

  int n_;
  int s_;
  double a_;
  double norm_ = 1.0;
};

enum class MatrixElementKind { X, P };

/// <m|x|n> (real) or the real coefficient c of <m|p|n> = i c, in physical units.
/// Parity-forbidden elements (m - n even) are exactly zero.
double mpt_matrix_element(MatrixElementKind kind, std::size_t m, std::size_t n, const ModelParams& model);

/// Frequency used to scale the deformed observables and units of the output
/// matrices. oscillator_units = true reports x in sqrt(hbar/mu omega) and p in
/// sqrt(hbar mu omega), i.e. the hbar = mu = omega = 1 form of the expansion.
struct MptFrame {
  double omega = 1.0;
  bool oscillator_units = true;
};

/// omega = (E_1 - E_0)/hbar = hbar a^2 (2s - 1) / (2 mu), oscillator units.
MptFrame default_mpt_frame(const ModelParams& model);

struct MptCoefficients {
  double F = 0.0;
  double G = 0.0;
  double R = 0.0;
  double S = 0.0;
};

/// Quadrature tables of the bound-state x and p elements, the F/G/R/S
/// coefficient functions, and the third-order X_D / P_D built from them.
/// Immutable after construction.
class MptObservables {
 public:
  /// Tabulates levels 0..levels-1 (default: all s bound levels).
  explicit MptObservables(const ModelParams& model, std::optional<MptFrame> frame = std::nullopt,
                          std::optional<std::size_t> levels = std::nullopt);

  const ModelParams& model() const { return model_; }
  const MptFrame& frame() const { return frame_; }
  std::size_t levels() const { return levels_; }
  std::size_t quadrature_nodes() const { return nodes_; }

  double x_element(std::size_t m, std::size_t n) const;
  /// Real c with <m|p|n> = i c.
  double p_element(std::size_t m, std::size_t n) const;

  /// F(n), G(n), R(n), S(n); zero where the required lower level does not
  /// exist (n < 1 for F, R; n < 3 for G, S) or the level n is not tabulated.
  MptCoefficients coefficients(std::size_t n) const;

  /// Hermitian X_D / P_D with bandwidth 3; dim <= levels + 3.
  QuadOperator x_matrix(std::optional<std::size_t> dim = std::nullopt) const;
  QuadOperator p_matrix(std::optional<std::size_t> dim = std::nullopt) const;

  /// max over columns n of max_{|m-n| >= 5} |<m|x|n>| / |<n-1|x|n>|: size of the
  /// true coordinate elements the third-order expansion discards.
  double discarded_element_ratio() const;

  /// Phase flips applied to enforce <n-1|x|n> > 0 (all false for the raw convention).
  const std::vector<bool>& sign_flips() const { return flips_; }

 private:
  double f(std::size_t n) const;

  ModelParams model_;
  MptFrame frame_;
  std::size_t levels_;
  std::size_t nodes_ = 0;
  Eigen::MatrixXd x_;  // physical units
  Eigen::MatrixXd p_;  // real coefficient of i
  std::vector<bool> flips_;
};

/// Coefficient functions with omega as the scaling frequency (physical formulas).
MptCoefficients mpt_coefficients(const ModelParams& model, std::size_t n, double omega);

QuadOperator mpt_x_matrix(const ModelParams& model, std::optional<std::size_t> dim = std::nullopt,
                          std::optional<MptFrame> frame = std::nullopt);
QuadOperator mpt_p_matrix(const ModelParams& model, std::optional<std::size_t> dim = std::nullopt,
                          std::optional<MptFrame> frame = std::nullopt);

}  // namespace fdcs
