#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace fdcs {

/// Undeformed oscillator, f(n) = 1.
struct Harmonic {
  double omega = 1.0;
};

/// Morse oscillator with N bound states: f^2(n) = 1 - chi_a n, chi_a = 1/(2N+1).
struct Morse {
  int n_bound = 22;
  double omega = 1.0;

  double anharmonicity() const { return 1.0 / (2.0 * n_bound + 1.0); }
  /// Child's parameter k = 2N + 1.
  int child_parameter() const { return 2 * n_bound + 1; }
};

/// Modified Poschl-Teller well U0 tanh^2(ax); s bound states (levels 0..s-1).
struct ModifiedPT {
  int s = 10;
  double a = 1.0;
  double mu = 1.0;
  double omega = 0.0;  ///< reference frequency of the deformation function
};

/// Trigonometric Poschl-Teller well U0 tan^2(ax); infinitely many bound states.
struct TrigPT {
  double lambda = 2.0;
  double a = 1.0;
  double mu = 1.0;
  double omega = 0.0;
};

enum class ModelKind { Harmonic, Morse, ModifiedPT, TrigPT };

/// Immutable, validated oscillator model plus the action unit hbar.
///
/// For the Poschl-Teller models the reference frequency Omega only rescales
/// f^2 and cancels in the Hamiltonian. When it is not supplied the defaults
/// are Omega = hbar a^2 (2s+1) / (2 mu) for the modified well, which makes
/// f^2(0) = 1, and Omega = hbar a^2 lambda / mu for the trigonometric well,
/// which makes chi = 1/(2 lambda).
class ModelParams {
 public:
  using Variant = std::variant<Harmonic, Morse, ModifiedPT, TrigPT>;

  static ModelParams harmonic(double omega = 1.0, double hbar = 1.0);
  static ModelParams morse(int n_bound, double omega = 1.0, double hbar = 1.0);
  static ModelParams modified_pt(int s, double a = 1.0, double mu = 1.0,
                                 std::optional<double> omega = std::nullopt, double hbar = 1.0);
  static ModelParams trig_pt(double lambda, double a = 1.0, double mu = 1.0,
                             std::optional<double> omega = std::nullopt, double hbar = 1.0);

  const Variant& variant() const { return variant_; }
  ModelKind kind() const;
  double hbar() const { return hbar_; }
  double omega() const;

  /// Coefficient chi multiplying n in f^2: chi_a for Morse, hbar a^2/(2 mu Omega)
  /// for the Poschl-Teller models, 0 for the harmonic oscillator.
  double deformation_scale() const;

  /// Short identifier, e.g. "morse(N=22,omega=1,hbar=1)".
  std::string id() const;

  template <class T>
  const T& as() const { return std::get<T>(variant_); }

 private:
  ModelParams(Variant v, double hbar) : variant_(v), hbar_(hbar) {}

  Variant variant_;
  double hbar_ = 1.0;
};

std::string to_string(ModelKind kind);

/// Deformation function squared. Negative values are legal outputs.
double f_squared(const ModelParams& model, std::size_t n);

/// Size of the exactly invariant block {0..d-1}; nullopt when unbounded.
std::optional<std::size_t> invariant_dim(const ModelParams& model);

/// Number of bound levels; nullopt when unbounded.
std::optional<std::size_t> bound_dim(const ModelParams& model);

/// Closed-form spectrum. Throws DomainError above the dissociation limit.
double energy(const ModelParams& model, std::size_t n);

/// (hbar Omega / 2) [n f^2(n) + (n+1) f^2(n+1)].
double generic_energy(const ModelParams& model, std::size_t n);

/// Coefficient of |n-1> in A|n>: sqrt(n f^2(n)).
double ladder_down_element(const ModelParams& model, std::size_t n);

/// Coefficient of |n+1> in A^dagger|n>: sqrt((n+1) f^2(n+1)).
double ladder_up_element(const ModelParams& model, std::size_t n);

/// Eigenvalue of [A, A^dagger] on |n>, closed form per model.
double commutator_eigenvalue(const ModelParams& model, std::size_t n);

/// Dense matrix of A in a basis of size dim. Couplings that would leave the
/// invariant block are zero, so any dim >= invariant_dim is exact there.
Eigen::MatrixXd ladder_down_matrix(const ModelParams& model, std::size_t dim);

}  // namespace fdcs
