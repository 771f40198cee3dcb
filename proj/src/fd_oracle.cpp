#include "fdcs/fd_oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

constexpr double kEdgeTolerance = 1e-8;
constexpr int kMaxExpansions = 6;

struct RawSolve {
  Eigen::VectorXd x;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
};

RawSolve solve_once(const Potential& pot, const GridSpec& grid, std::size_t count) {
  if (grid.nodes < 500) throw DomainError("finite-difference grid needs at least 500 nodes");
  if (!(grid.x_max > grid.x_min)) throw DomainError("finite-difference grid has empty extent");
  const auto n = static_cast<lapack_int>(grid.nodes - 2);
  if (static_cast<std::size_t>(n) < count) throw DomainError("more levels requested than interior nodes");
  const double h = grid.spacing();
  const double kinetic = pot.hbar * pot.hbar / (2.0 * pot.mu * h * h);

  RawSolve out;
  out.x.resize(n);
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off(static_cast<std::size_t>(n), -kinetic);
  for (lapack_int i = 0; i < n; ++i) {
    out.x(i) = grid.x_min + h * static_cast<double>(i + 1);
    diag[static_cast<std::size_t>(i)] = 2.0 * kinetic + pot(out.x(i));
  }

  const auto want = static_cast<lapack_int>(count);
  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * count);
  std::vector<lapack_int> support(2 * count);
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, want,
                                         0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != want) {
    throw ConvergenceError("tridiagonal eigensolver failed (info=" + std::to_string(info) + ")");
  }
  out.energies = Eigen::Map<Eigen::VectorXd>(w.data(), want);
  out.vectors = Eigen::Map<Eigen::MatrixXd>(z.data(), n, want) / std::sqrt(h);
  return out;
}

// Which edges still carry amplitude: bit 0 left, bit 1 right.
int leaky_edges(const RawSolve& s) {
  int mask = 0;
  for (Eigen::Index k = 0; k < s.vectors.cols(); ++k) {
    const auto col = s.vectors.col(k);
    const double peak = col.cwiseAbs().maxCoeff();
    if (std::abs(col(0)) > kEdgeTolerance * peak) mask |= 1;
    if (std::abs(col(col.size() - 1)) > kEdgeTolerance * peak) mask |= 2;
  }
  return mask;
}

void align_phases(RawSolve& s, double h) {
  const Eigen::Index cols = s.vectors.cols();
  for (Eigen::Index k = 0; k < cols; ++k) {
    auto col = s.vectors.col(k);
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = col.size() - 1; i >= 0; --i) {
      if (std::abs(col(i)) > 1e-3 * peak) {
        if (col(i) < 0.0) col *= -1.0;
        break;
      }
    }
  }
  for (Eigen::Index k = 1; k < cols; ++k) {
    const double xe = h * (s.vectors.col(k - 1).array() * s.x.array() * s.vectors.col(k).array()).sum();
    if (xe < 0.0) s.vectors.col(k) *= -1.0;
  }
}

double x_element(const FdSolution& s, std::size_t m, std::size_t n) {
  const double h = s.grid.spacing();
  const auto a = s.vectors.col(static_cast<Eigen::Index>(m));
  const auto b = s.vectors.col(static_cast<Eigen::Index>(n));
  return h * (a.array() * s.x.array() * b.array()).sum();
}

double p_element(const FdSolution& s, std::size_t m, std::size_t n, double hbar) {
  const auto a = s.vectors.col(static_cast<Eigen::Index>(m));
  const auto b = s.vectors.col(static_cast<Eigen::Index>(n));
  const Eigen::Index len = a.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < len; ++i) {
    const double right = i + 1 < len ? b(i + 1) : 0.0;
    const double left = i > 0 ? b(i - 1) : 0.0;
    acc += a(i) * (right - left);
  }
  // h * sum a (b' ) with b' = (right - left) / 2h
  return -hbar * 0.5 * acc;
}

GridSpec refined(const GridSpec& g) { return {g.x_min, g.x_max, 2 * g.nodes - 1}; }

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

void check_count(const Potential& pot, std::size_t count) {
  if (count == 0) throw DomainError("at least one level must be requested");
  if (pot.bound_levels && count > *pot.bound_levels) {
    throw DomainError("requested " + std::to_string(count) + " levels but the well binds only " +
                      std::to_string(*pot.bound_levels));
  }
}

}  // namespace

Potential Potential::harmonic(double omega, double mu, double hbar) {
  Potential p;
  p.kind = Kind::Harmonic;
  p.omega = omega;
  p.mu = mu;
  p.hbar = hbar;
  return p;
}

Potential Potential::morse(double depth, double beta, double mu, double hbar, double offset) {
  Potential p;
  p.kind = Kind::Morse;
  p.depth = depth;
  p.range = beta;
  p.mu = mu;
  p.hbar = hbar;
  p.offset = offset;
  // Levels with n + 1/2 < sqrt(2 mu D) / (hbar beta).
  const double lam = std::sqrt(2.0 * mu * depth) / (hbar * beta);
  p.bound_levels = static_cast<std::size_t>(std::ceil(lam - 0.5));
  return p;
}

Potential Potential::modified_pt(double depth, double a, double mu, double hbar) {
  Potential p;
  p.kind = Kind::ModifiedPT;
  p.depth = depth;
  p.range = a;
  p.mu = mu;
  p.hbar = hbar;
  const double g = 2.0 * mu * depth / (hbar * hbar * a * a);
  const double s = 0.5 * (std::sqrt(1.0 + 4.0 * g) - 1.0);
  p.bound_levels = static_cast<std::size_t>(std::ceil(s));
  return p;
}

Potential Potential::trig_pt(double depth, double a, double mu, double hbar) {
  Potential p;
  p.kind = Kind::TrigPT;
  p.depth = depth;
  p.range = a;
  p.mu = mu;
  p.hbar = hbar;
  return p;
}

double Potential::operator()(double x) const {
  switch (kind) {
    case Kind::Harmonic:
      return 0.5 * mu * omega * omega * x * x + offset;
    case Kind::Morse: {
      const double u = -std::expm1(-range * x);
      return depth * u * u + offset;
    }
    case Kind::ModifiedPT: {
      const double t = std::tanh(range * x);
      return depth * t * t + offset;
    }
    case Kind::TrigPT: {
      const double t = std::tan(range * x);
      return depth * t * t + offset;
    }
  }
  return 0.0;
}

std::string Potential::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind) {
    case Kind::Harmonic:
      os << "harmonic(omega=" << omega;
      break;
    case Kind::Morse:
      os << "morse(D=" << depth << ",beta=" << range;
      break;
    case Kind::ModifiedPT:
      os << "U0*tanh^2(ax)(U0=" << depth << ",a=" << range;
      break;
    case Kind::TrigPT:
      os << "U0*tan^2(ax)(U0=" << depth << ",a=" << range;
      break;
  }
  os << ",mu=" << mu << ",hbar=" << hbar << ",offset=" << offset << ")";
  return os.str();
}

Potential potential_for(const ModelParams& model) {
  const double hbar = model.hbar();
  switch (model.kind()) {
    case ModelKind::Harmonic:
      return Potential::harmonic(model.omega(), 1.0, hbar);
    case ModelKind::Morse: {
      const auto& m = model.as<Morse>();
      const double depth = hbar * m.omega * (2.0 * m.n_bound + 1.0) / 4.0;
      const double beta = m.omega / std::sqrt(2.0 * depth);
      return Potential::morse(depth, beta, 1.0, hbar, -hbar * m.omega * m.anharmonicity() / 4.0);
    }
    case ModelKind::ModifiedPT: {
      const auto& m = model.as<ModifiedPT>();
      const double depth = m.s * (m.s + 1.0) * hbar * hbar * m.a * m.a / (2.0 * m.mu);
      auto p = Potential::modified_pt(depth, m.a, m.mu, hbar);
      p.bound_levels = static_cast<std::size_t>(m.s);
      return p;
    }
    case ModelKind::TrigPT: {
      const auto& m = model.as<TrigPT>();
      const double depth = m.lambda * (m.lambda - 1.0) * hbar * hbar * m.a * m.a / (2.0 * m.mu);
      return Potential::trig_pt(depth, m.a, m.mu, hbar);
    }
  }
  throw DomainError("unknown model kind");
}

GridSpec default_grid(const Potential& pot, std::size_t count) {
  GridSpec g;
  switch (pot.kind) {
    case Potential::Kind::Harmonic: {
      const double len = std::sqrt(pot.hbar / (pot.mu * pot.omega));
      const double half = (12.0 + 2.0 * std::sqrt(static_cast<double>(count))) * len;
      g.x_min = -half;
      g.x_max = half;
      break;
    }
    case Potential::Kind::Morse:
      g.x_min = -3.0 / pot.range;
      g.x_max = 20.0 / pot.range;
      break;
    case Potential::Kind::ModifiedPT: {
      const double levels = pot.bound_levels ? static_cast<double>(*pot.bound_levels) : static_cast<double>(count);
      const double eps_min = std::max(levels - static_cast<double>(count) + 1.0, 0.5);
      const double half = 25.0 / (pot.range * eps_min) + 2.0 / pot.range;
      g.x_min = -half;
      g.x_max = half;
      break;
    }
    case Potential::Kind::TrigPT: {
      const double period = std::numbers::pi / pot.range;
      const double clamp = 1e-6 * period;
      g.x_min = -0.5 * period + clamp;
      g.x_max = 0.5 * period - clamp;
      break;
    }
  }
  return g;
}

FdSolution fd_solve(const Potential& pot, const GridSpec& grid, std::size_t count) {
  check_count(pot, count);
  GridSpec g = grid;
  RawSolve raw = solve_once(pot, g, count);
  if (pot.kind != Potential::Kind::TrigPT) {
    for (int attempt = 0;; ++attempt) {
      const int mask = leaky_edges(raw);
      if (mask == 0) break;
      if (attempt == kMaxExpansions) {
        throw ConvergenceError("eigenfunctions of " + pot.describe() + " do not decay inside the grid");
      }
      const double h = g.spacing();
      const double push = 0.5 * (g.x_max - g.x_min);
      if (mask & 1) g.x_min -= push;
      if (mask & 2) g.x_max += push;
      g.nodes = static_cast<std::size_t>(std::llround((g.x_max - g.x_min) / h)) + 1;
      raw = solve_once(pot, g, count);
    }
  }
  align_phases(raw, g.spacing());
  return {g, std::move(raw.x), std::move(raw.energies), std::move(raw.vectors)};
}

Eigen::VectorXd fd_spectrum(const Potential& pot, std::size_t count, std::optional<GridSpec> grid) {
  const FdSolution coarse = fd_solve(pot, grid.value_or(default_grid(pot, count)), count);
  const FdSolution fine = fd_solve(pot, refined(coarse.grid), count);
  if (fine.grid.x_min != coarse.grid.x_min || fine.grid.x_max != coarse.grid.x_max) {
    throw ConvergenceError("refined grid needed a different extent; pass a wider grid");
  }
  return (4.0 * fine.energies - coarse.energies) / 3.0;
}

FdElementTables fd_element_tables(const Potential& pot, std::size_t levels, std::optional<GridSpec> grid) {
  const FdSolution coarse = fd_solve(pot, grid.value_or(default_grid(pot, levels)), levels);
  const FdSolution fine = fd_solve(pot, refined(coarse.grid), levels);
  const auto L = static_cast<Eigen::Index>(levels);
  FdElementTables t{Eigen::MatrixXd::Zero(L, L), Eigen::MatrixXd::Zero(L, L)};
  for (std::size_t m = 0; m < levels; ++m) {
    for (std::size_t n = 0; n < levels; ++n) {
      const auto i = static_cast<Eigen::Index>(m);
      const auto j = static_cast<Eigen::Index>(n);
      t.x(i, j) = richardson(x_element(coarse, m, n), x_element(fine, m, n));
      t.p(i, j) = richardson(p_element(coarse, m, n, pot.hbar), p_element(fine, m, n, pot.hbar));
    }
  }
  return t;
}

double fd_matrix_element(FdElementKind kind, std::size_t m, std::size_t n, const Potential& pot,
                         std::optional<GridSpec> grid) {
  const std::size_t levels = std::max(m, n) + 1;
  check_count(pot, levels);
  const auto t = fd_element_tables(pot, levels, grid);
  const auto i = static_cast<Eigen::Index>(m);
  const auto j = static_cast<Eigen::Index>(n);
  return kind == FdElementKind::X ? t.x(i, j) : t.p(i, j);
}

}  // namespace fdcs
