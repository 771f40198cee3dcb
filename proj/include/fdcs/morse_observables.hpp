#pragma once

#include <cstddef>
#include <optional>

#include "fdcs/model.hpp"
#include "fdcs/operators.hpp"

namespace fdcs {

/// Number-operator coefficient functions of the second-order deformed Morse
/// coordinate and momentum, parametrized by Child's parameter k = 2N + 1.
///
/// Non-integer or very large k is accepted so the chi_a -> 0 limit can be
/// probed; f0 uses the exact harmonic sum for k <= 1e4 and the digamma
/// asymptotic series above.
class MorseCoefficients {
 public:
  static constexpr double kEulerGamma = 0.5772156649015329;

  explicit MorseCoefficients(double child_k);

  double k() const { return k_; }
  double f0() const { return f0_; }

  /// sqrt(k) [f0 + ln((k-2)(k-n-1) / ((k-1-2n)(k-2n))) (1 - delta_{n,0})]; n < (k-1)/2.
  double f00(std::size_t n) const;
  double f10(std::size_t n) const;
  double f01(std::size_t n) const { return f10(n); }
  double f20(std::size_t n) const;
  double f02(std::size_t n) const { return f20(n); }
  double g10(std::size_t n) const;
  double g01(std::size_t n) const { return -g10(n); }
  double g20(std::size_t n) const;
  double g02(std::size_t n) const { return -g20(n); }

  /// Deformation f(n) = sqrt(1 - n/k).
  double f(std::size_t n) const;

 private:
  double k_;
  double f0_;
};

/// Unit scales for the deformed observables (x in sqrt(hbar/2 mu Omega), p in sqrt(hbar mu Omega/2)).
struct MorseUnits {
  double hbar = 1.0;
  double mu = 1.0;
  double omega = 1.0;
};

/// Second-order deformed coordinate x_D. Default dim is N + 2: the two padding
/// rows keep x_D|psi> unclipped for states on the N bound levels. Diagonal
/// entries beyond the bound levels are left at zero; they never enter moments
/// of states supported on the bound block.
QuadOperator morse_x_matrix(const ModelParams& model, std::optional<std::size_t> dim = std::nullopt, double mu = 1.0);
QuadOperator morse_p_matrix(const ModelParams& model, std::optional<std::size_t> dim = std::nullopt, double mu = 1.0);

/// Same construction directly from the coefficients; used for large-k surrogates.
/// `bound_levels` is the number of levels carrying a diagonal (f00) entry.
QuadOperator morse_x_matrix(const MorseCoefficients& coeffs, std::size_t dim, std::size_t bound_levels,
                            const MorseUnits& units = {});
QuadOperator morse_p_matrix(const MorseCoefficients& coeffs, std::size_t dim, std::size_t bound_levels,
                            const MorseUnits& units = {});

}  // namespace fdcs
