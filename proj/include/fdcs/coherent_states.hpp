#pragma once

#include <cstddef>
#include <optional>

#include "fdcs/fock_vector.hpp"
#include "fdcs/model.hpp"

namespace fdcs {

enum class StateKind { Aocs, Docs };

/// How a coherent-state expansion is cut off.
struct Truncation {
  enum class Mode { BoundOnly, FullInvariantBlock, Adaptive };

  Mode mode = Mode::BoundOnly;
  /// Adaptive only: stop once three consecutive terms each carry less than
  /// epsilon times the accumulated squared norm.
  double epsilon = 1e-16;

  static Truncation bound_only() { return {Mode::BoundOnly, 1e-16}; }
  static Truncation full_block() { return {Mode::FullInvariantBlock, 1e-16}; }
  static Truncation adaptive(double eps = 1e-16) { return {Mode::Adaptive, eps}; }
};

/// BoundOnly for Morse / modified PT, Adaptive(1e-16) otherwise.
Truncation default_truncation(const ModelParams& model);

struct CoherentStateSpec {
  StateKind kind;
  ModelParams model;
  Complex alpha;
  Truncation truncation;
  bool renormalize = true;

  static CoherentStateSpec aocs(const ModelParams& model, Complex alpha);
  static CoherentStateSpec docs(const ModelParams& model, Complex alpha);
};

struct BuiltState {
  FockVector state;
  /// Squared norm kept by the truncation, relative to the untruncated state
  /// (the full invariant block for finite models).
  double retained_norm2 = 1.0;
};

BuiltState build_state(const CoherentStateSpec& spec);

/// Eigenstate of the deformed annihilation operator, c_n = alpha c_{n-1} / (sqrt(n) f(n)).
FockVector build_aocs(const CoherentStateSpec& spec);

/// exp(alpha A^dagger - alpha^* A)|0> from the disentangled closed forms.
FockVector build_docs(const CoherentStateSpec& spec);

/// Displacement parameter zeta(alpha): tan map for the su(2)-like models,
/// tanh map for the trigonometric well. Throws at or beyond the tangent pole.
Complex displacement_parameter(const ModelParams& model, Complex alpha);

/// Largest |alpha| admitted by the DOCS closed form (pi/2 / sqrt(chi) for the
/// su(2)-like models, +inf otherwise).
double docs_alpha_pole(const ModelParams& model);

/// Brute-force DOCS: dense exponential of alpha A^dagger - alpha^* A applied to |0>.
/// For unbounded models (or dim below the invariant block) the squared weight
/// in the top eighth of the basis must stay below tail_eps, else ConvergenceError.
FockVector docs_exponential_oracle(const ModelParams& model, Complex alpha, std::size_t dim,
                                   double tail_eps = 1e-12);

/// ||A psi - alpha psi|| / ||psi|| with A truncated to the state's basis.
double aocs_residual(const ModelParams& model, Complex alpha, const FockVector& state);

/// |alpha| such that <n> of the built state equals target_mean_n (to 1e-10),
/// by bisection on the monotone map |alpha| -> <n>.
double invert_alpha(const ModelParams& model, StateKind kind, double target_mean_n,
                    std::optional<Truncation> truncation = std::nullopt, bool renormalize = true);

}  // namespace fdcs
