#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace fdcs {

using Complex = std::complex<double>;

/// Complex amplitudes c_0..c_{dim-1} over a truncated number basis.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::size_t dim) : amps_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))) {}
  explicit FockVector(Eigen::VectorXcd amps) : amps_(std::move(amps)) {}

  /// |n> in a basis of size dim.
  static FockVector number_state(std::size_t n, std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  Complex operator[](std::size_t n) const { return amps_(static_cast<Eigen::Index>(n)); }
  Complex& operator[](std::size_t n) { return amps_(static_cast<Eigen::Index>(n)); }

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm_squared() const { return amps_.squaredNorm(); }
  FockVector normalized() const;

  /// Zero-padded (or truncated) copy of size dim.
  FockVector resized(std::size_t dim) const;

  /// Squared amplitude carried by components n >= from.
  double tail_weight(std::size_t from) const;

 private:
  Eigen::VectorXcd amps_;
};

/// P_n = |c_n|^2.
std::vector<double> occupation_distribution(const FockVector& state);

/// Sum n P_n divided by the norm (identical to Sum n P_n for normalized input).
double mean_occupation(const FockVector& state);

/// <a|b> = Sum conj(a_n) b_n with the shorter vector zero-padded.
Complex overlap(const FockVector& a, const FockVector& b);

}  // namespace fdcs
