#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdcs/model.hpp"

namespace fdcs {

/// Physical one-dimensional potential for the finite-difference solver.
struct Potential {
  enum class Kind { Harmonic, Morse, ModifiedPT, TrigPT };

  Kind kind = Kind::Harmonic;
  double mu = 1.0;
  double hbar = 1.0;
  double omega = 1.0;   ///< harmonic frequency
  double depth = 0.0;   ///< Morse D or Poschl-Teller U0
  double range = 1.0;   ///< Morse beta or Poschl-Teller a
  double offset = 0.0;  ///< constant added to V
  /// Number of bound levels for wells, nullopt when the spectrum is unbounded.
  std::optional<std::size_t> bound_levels;

  static Potential harmonic(double omega, double mu = 1.0, double hbar = 1.0);
  /// D (1 - exp(-beta x))^2 + offset.
  static Potential morse(double depth, double beta, double mu = 1.0, double hbar = 1.0, double offset = 0.0);
  /// U0 tanh^2(a x).
  static Potential modified_pt(double depth, double a, double mu = 1.0, double hbar = 1.0);
  /// U0 tan^2(a x) on one period.
  static Potential trig_pt(double depth, double a, double mu = 1.0, double hbar = 1.0);

  double operator()(double x) const;
  std::string describe() const;
};

/// Potential whose spectrum the model's algebraic formula should reproduce.
///
/// Morse: D = hbar Omega (2N+1)/4, beta = Omega / sqrt(2 D / mu), shifted by
/// -hbar Omega chi / 4 so the zero of energy matches. Poschl-Teller: U0 from
/// s(s+1) (resp. lambda(lambda-1)) = 2 mu U0 / (hbar a)^2. Harmonic and Morse
/// use mu = 1.
Potential potential_for(const ModelParams& model);

/// Uniform grid including both Dirichlet end points.
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t nodes = 3001;

  double spacing() const { return (x_max - x_min) / static_cast<double>(nodes - 1); }
};

/// Grid wide enough for the lowest `count` levels of the potential.
GridSpec default_grid(const Potential& potential, std::size_t count);

struct FdSolution {
  GridSpec grid;  ///< grid actually used after any expansion
  Eigen::VectorXd x;         ///< interior nodes
  Eigen::VectorXd energies;  ///< lowest levels, ascending
  /// Columns are eigenfunctions on the interior nodes, normalized so that
  /// h * sum psi^2 = 1, positive at the outermost significant node on the right,
  /// then flipped so that <n-1|x|n> > 0.
  Eigen::MatrixXd vectors;
};

/// Single-resolution three-point solve. Non-periodic wells whose eigenfunctions
/// do not decay below 1e-8 (relative) at an edge get that edge pushed out by
/// half the width, at most six times.
FdSolution fd_solve(const Potential& potential, const GridSpec& grid, std::size_t count);

/// Lowest `count` eigenvalues, Richardson-extrapolated from grids with M and 2M-1 nodes.
Eigen::VectorXd fd_spectrum(const Potential& potential, std::size_t count, std::optional<GridSpec> grid = std::nullopt);

enum class FdElementKind { X, P };

/// <m|x|n>, or the real c in <m|p|n> = i c, from the finite-difference
/// eigenvectors with the same extrapolation as fd_spectrum.
double fd_matrix_element(FdElementKind kind, std::size_t m, std::size_t n, const Potential& potential,
                         std::optional<GridSpec> grid = std::nullopt);

/// Element tables for levels 0..levels-1 in one pass.
struct FdElementTables {
  Eigen::MatrixXd x;
  Eigen::MatrixXd p;
};
FdElementTables fd_element_tables(const Potential& potential, std::size_t levels,
                                  std::optional<GridSpec> grid = std::nullopt);

}  // namespace fdcs
