#include "fdcs/morse_observables.hpp"

#include <algorithm>
#include <cmath>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

double harmonic_number_limit_f0(double k) {
  // f0 = ln k - (H_{k-2} - gamma) = ln k - digamma(k - 1).
  if (k <= 1e4 && std::floor(k) == k) {
    double h = 0.0;
    for (long p = static_cast<long>(k) - 2; p >= 1; --p) h += 1.0 / static_cast<double>(p);
    return std::log(k) - (h - MorseCoefficients::kEulerGamma);
  }
  const double z = k - 1.0;
  const double z2 = z * z;
  return std::log1p(1.0 / z) + 1.0 / (2.0 * z) + 1.0 / (12.0 * z2) - 1.0 / (120.0 * z2 * z2) +
         1.0 / (252.0 * z2 * z2 * z2);
}

std::size_t checked_dim(const ModelParams& model, std::optional<std::size_t> dim) {
  if (model.kind() != ModelKind::Morse) throw DomainError("Morse observables need a Morse model, got " + model.id());
  const auto n_bound = static_cast<std::size_t>(model.as<Morse>().n_bound);
  const std::size_t d = dim.value_or(n_bound + 2);
  if (d == 0 || d > *invariant_dim(model)) {
    throw DomainError("Morse observable dimension " + std::to_string(d) + " outside 1.." +
                      std::to_string(*invariant_dim(model)));
  }
  return d;
}

QuadOperator empty_operator(OperatorLabel label, std::size_t dim, std::size_t bound_levels) {
  const std::size_t support = dim >= 2 ? std::min(bound_levels, dim - 2) : 0;
  return {label, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), support};
}

}  // namespace

MorseCoefficients::MorseCoefficients(double child_k) : k_(child_k), f0_(0.0) {
  if (!(child_k > 3.0) || !std::isfinite(child_k)) throw DomainError("Child's parameter must exceed 3");
  f0_ = harmonic_number_limit_f0(child_k);
}

double MorseCoefficients::f(std::size_t n) const {
  const double v = 1.0 - static_cast<double>(n) / k_;
  if (v < 0.0) throw DomainError("Morse deformation undefined at n=" + std::to_string(n));
  return std::sqrt(v);
}

double MorseCoefficients::f00(std::size_t n) const {
  const double x = static_cast<double>(n);
  if (!(k_ - 1.0 - 2.0 * x > 0.0)) {
    throw DomainError("f00 log argument not positive at n=" + std::to_string(n) + " (bound levels only)");
  }
  if (n == 0) return std::sqrt(k_) * f0_;
  const double log_term = std::log1p(-2.0 / k_) + std::log1p(-(x + 1.0) / k_) - std::log1p(-(2.0 * x + 1.0) / k_) -
                          std::log1p(-2.0 * x / k_);
  return std::sqrt(k_) * (f0_ + log_term);
}

double MorseCoefficients::f10(std::size_t n) const {
  const double x = static_cast<double>(n);
  return std::sqrt((k_ - 1.0) / k_) * (1.0 + x / (k_ - x));
}

double MorseCoefficients::f20(std::size_t n) const {
  const double x = static_cast<double>(n);
  return (k_ - 1.0) / (2.0 * k_ * std::sqrt(k_)) * (-1.0 / ((1.0 - (x - 1.0) / k_) * (1.0 - x / k_)));
}

double MorseCoefficients::g10(std::size_t n) const {
  const double x = static_cast<double>(n);
  return std::sqrt((k_ - 1.0) / k_) * ((k_ - 2.0 * x) / (k_ - x));
}

double MorseCoefficients::g20(std::size_t n) const {
  const double x = static_cast<double>(n);
  return -(k_ - 1.0) / (k_ * std::sqrt(k_)) *
         ((k_ - (2.0 * x - 1.0)) / (k_ * (1.0 - (x - 1.0) / k_) * (1.0 - x / k_)));
}

QuadOperator morse_x_matrix(const MorseCoefficients& c, std::size_t dim, std::size_t bound_levels,
                            const MorseUnits& units) {
  QuadOperator op = empty_operator(OperatorLabel::X, dim, bound_levels);
  const double pref = std::sqrt(units.hbar / (2.0 * units.mu * units.omega));
  auto& m = op.matrix;
  for (std::size_t n = 0; n < dim; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    if (n < bound_levels) m(i, i) = pref * c.f00(n);
    // f10(n) A^dagger : <n+1| . |n> = f10(n+1) sqrt(n+1) f(n+1);  A f01(n) : <n-1| . |n> = f01(n) sqrt(n) f(n)
    if (n + 1 < dim) {
      const double e = pref * c.f10(n + 1) * std::sqrt(static_cast<double>(n + 1)) * c.f(n + 1);
      m(i + 1, i) = e;
      m(i, i + 1) = pref * c.f01(n + 1) * std::sqrt(static_cast<double>(n + 1)) * c.f(n + 1);
    }
    if (n + 2 < dim) {
      const double ladder = std::sqrt(static_cast<double>((n + 1) * (n + 2))) * c.f(n + 1) * c.f(n + 2);
      m(i + 2, i) = pref * c.f20(n + 2) * ladder;
      m(i, i + 2) = pref * c.f02(n + 2) * ladder;
    }
  }
  return op;
}

QuadOperator morse_p_matrix(const MorseCoefficients& c, std::size_t dim, std::size_t bound_levels,
                            const MorseUnits& units) {
  QuadOperator op = empty_operator(OperatorLabel::P, dim, bound_levels);
  const Complex pref(0.0, std::sqrt(units.hbar * units.mu * units.omega / 2.0));
  auto& m = op.matrix;
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const double ladder1 = std::sqrt(static_cast<double>(n + 1)) * c.f(n + 1);
    m(i + 1, i) = pref * c.g10(n + 1) * ladder1;
    m(i, i + 1) = pref * c.g01(n + 1) * ladder1;
    if (n + 2 < dim) {
      const double ladder2 = std::sqrt(static_cast<double>((n + 1) * (n + 2))) * c.f(n + 1) * c.f(n + 2);
      m(i + 2, i) = pref * c.g20(n + 2) * ladder2;
      m(i, i + 2) = pref * c.g02(n + 2) * ladder2;
    }
  }
  return op;
}

QuadOperator morse_x_matrix(const ModelParams& model, std::optional<std::size_t> dim, double mu) {
  const std::size_t d = checked_dim(model, dim);
  const auto& morse = model.as<Morse>();
  return morse_x_matrix(MorseCoefficients(morse.child_parameter()), d, static_cast<std::size_t>(morse.n_bound),
                        {model.hbar(), mu, morse.omega});
}

QuadOperator morse_p_matrix(const ModelParams& model, std::optional<std::size_t> dim, double mu) {
  const std::size_t d = checked_dim(model, dim);
  const auto& morse = model.as<Morse>();
  return morse_p_matrix(MorseCoefficients(morse.child_parameter()), d, static_cast<std::size_t>(morse.n_bound),
                        {model.hbar(), mu, morse.omega});
}

}  // namespace fdcs
