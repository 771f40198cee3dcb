#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "fdcs/fock_vector.hpp"

namespace fdcs {

enum class OperatorLabel { X, P, XSquared, PSquared, Commutator };

std::string to_string(OperatorLabel label);

/// Dense observable in a truncated number basis.
///
/// `support` is the number of leading basis states on which the matrix is a
/// faithful representation: columns 0..support-1 carry their full image, the
/// remaining rows exist so that M|psi> is not clipped for states living there.
struct QuadOperator {
  OperatorLabel label = OperatorLabel::X;
  Eigen::MatrixXcd matrix;
  std::size_t support = 0;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  /// max |M - M^dagger|.
  double hermiticity_defect() const;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// <M> and <M^2> - <M>^2 computed as ||M psi||^2 - <M>^2. The state is
/// zero-padded to the operator basis; amplitude beyond `support` above 1e-10
/// raises DomainError.
Moments moments(const QuadOperator& op, const FockVector& state);

/// <[x, p]> evaluated as <x psi|p psi> - <p psi|x psi>.
Complex commutator_expectation(const QuadOperator& x, const QuadOperator& p, const FockVector& state);

struct UncertaintyReport {
  Moments x;
  Moments p;
  Complex commutator;
  /// 4 var_x var_p / |<[x,p]>|^2; empty when the commutator expectation vanishes.
  std::optional<double> delta_xp;
};

UncertaintyReport uncertainty_report(const FockVector& state, const QuadOperator& x, const QuadOperator& p);

/// Delta_xp, or nullopt ("undefined normalization") if |<[x,p]>| < 1e-14.
std::optional<double> normalized_uncertainty(const FockVector& state, const QuadOperator& x, const QuadOperator& p);

/// x p - p x as a labelled operator. For Hermitian x its expectation over states
/// inside the common support equals commutator_expectation().
QuadOperator commutator(const QuadOperator& x, const QuadOperator& p);

/// sqrt(1/2)(a + a^dagger) and i sqrt(1/2)(a^dagger - a) in units hbar = mu = Omega = 1.
QuadOperator harmonic_x_matrix(std::size_t dim);
QuadOperator harmonic_p_matrix(std::size_t dim);

}  // namespace fdcs
