#include "fdcs/coherent_states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

constexpr std::size_t kMaxAdaptiveTerms = std::size_t{1} << 20;

bool is_su2_like(const ModelParams& model) {
  return model.kind() == ModelKind::Morse || model.kind() == ModelKind::ModifiedPT;
}

/// Half-dimension j of the su(2)-like block {0..2j}.
double su2_index(const ModelParams& model) {
  return model.kind() == ModelKind::Morse ? model.as<Morse>().n_bound : model.as<ModifiedPT>().s;
}

/// Log-magnitudes of the expansion coefficients, generated term by term.
using LogTerm = std::function<double(std::size_t)>;

std::vector<double> collect_log_terms(const ModelParams& model, const Truncation& trunc, const LogTerm& log_term) {
  const auto block = invariant_dim(model);
  std::vector<double> logs;
  if (trunc.mode != Truncation::Mode::Adaptive) {
    if (!block) throw DomainError("truncation to bound levels needs a model with finitely many bound states");
    const std::size_t dim = trunc.mode == Truncation::Mode::BoundOnly ? *bound_dim(model) : *block;
    logs.reserve(dim);
    for (std::size_t n = 0; n < dim; ++n) logs.push_back(log_term(n));
    return logs;
  }
  if (!(trunc.epsilon > 0.0)) throw DomainError("adaptive truncation needs epsilon > 0");
  const std::size_t cap = block ? *block : kMaxAdaptiveTerms;
  double running_max = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;  // sum exp(2 (L_i - running_max))
  int quiet = 0;
  for (std::size_t n = 0; n < cap; ++n) {
    const double l = log_term(n);
    logs.push_back(l);
    if (l > running_max) {
      scaled_sum = scaled_sum * std::exp(2.0 * (running_max - l)) + 1.0;
      running_max = l;
      quiet = 0;
      continue;
    }
    const double term = std::exp(2.0 * (l - running_max));
    scaled_sum += term;
    quiet = term < trunc.epsilon * scaled_sum ? quiet + 1 : 0;
    if (quiet == 3) return logs;
  }
  if (!block) throw ConvergenceError("adaptive truncation did not converge within " + std::to_string(cap) + " terms");
  return logs;
}

/// Amplitudes exp(L_n - shift) e^{i n phase}.
FockVector assemble(const std::vector<double>& logs, double phase, double shift) {
  FockVector v(logs.size());
  for (std::size_t n = 0; n < logs.size(); ++n) {
    v[n] = std::polar(std::exp(logs[n] - shift), static_cast<double>(n) * phase);
  }
  return v;
}

double log_binomial(double top, double k) {
  return std::lgamma(top + 1.0) - std::lgamma(k + 1.0) - std::lgamma(top - k + 1.0);
}

BuiltState vacuum(const ModelParams& model, const Truncation& trunc) {
  std::size_t dim = 1;
  if (trunc.mode == Truncation::Mode::BoundOnly && bound_dim(model)) dim = *bound_dim(model);
  if (trunc.mode == Truncation::Mode::FullInvariantBlock && invariant_dim(model)) dim = *invariant_dim(model);
  return {FockVector::number_state(0, dim), 1.0};
}

BuiltState build_aocs_state(const CoherentStateSpec& spec) {
  const auto& model = spec.model;
  const double mag = std::abs(spec.alpha);
  if (mag == 0.0) return vacuum(model, spec.truncation);
  const double log_mag = std::log(mag);

  // c_n = alpha c_{n-1} / (sqrt(n) f(n)), accumulated in log space.
  std::vector<double> cache{0.0};
  const LogTerm log_term = [&](std::size_t n) {
    while (cache.size() <= n) {
      const std::size_t k = cache.size();
      const double fsq = f_squared(model, k);
      if (!(fsq > 0.0)) {
        throw DomainError("AOCS recurrence hits f(n)=0 at n=" + std::to_string(k) + " for " + model.id());
      }
      cache.push_back(cache.back() + log_mag - 0.5 * std::log(static_cast<double>(k)) - 0.5 * std::log(fsq));
    }
    return cache[n];
  };

  const auto logs = collect_log_terms(model, spec.truncation, log_term);
  const double peak = *std::max_element(logs.begin(), logs.end());
  FockVector v = assemble(logs, std::arg(spec.alpha), peak);

  // Reference normalization: the whole invariant block for finite models.
  double reference = v.norm_squared();
  if (const auto block = invariant_dim(model); block && spec.truncation.mode != Truncation::Mode::FullInvariantBlock) {
    reference = 0.0;
    for (std::size_t n = 0; n < *block; ++n) reference += std::exp(2.0 * (log_term(n) - peak));
  }
  const double kept = v.norm_squared();
  if (spec.renormalize) return {v.normalized(), kept / reference};
  v.amplitudes() /= std::sqrt(reference);
  return {v, kept / reference};
}

BuiltState build_docs_state(const CoherentStateSpec& spec) {
  const auto& model = spec.model;
  const double mag = std::abs(spec.alpha);
  const double phase = std::arg(spec.alpha);
  if (mag == 0.0) return vacuum(model, spec.truncation);

  LogTerm log_term;
  if (is_su2_like(model)) {
    const double j = su2_index(model);
    const double z = std::abs(displacement_parameter(model, spec.alpha));
    const double log_z = std::log(z);
    const double log_norm = -j * std::log1p(z * z);
    log_term = [=](std::size_t n) {
      const double x = static_cast<double>(n);
      return 0.5 * log_binomial(2.0 * j, x) + x * log_z + log_norm;
    };
  } else if (model.kind() == ModelKind::TrigPT) {
    const double lambda = model.as<TrigPT>().lambda;
    const double z = std::abs(displacement_parameter(model, spec.alpha));
    const double log_z = std::log(z);
    const double log_norm = lambda * std::log1p(-z * z);
    log_term = [=](std::size_t n) {
      const double x = static_cast<double>(n);
      return log_norm + x * log_z +
             0.5 * (std::lgamma(2.0 * lambda + x) - std::lgamma(x + 1.0) - std::lgamma(2.0 * lambda));
    };
  } else {
    const double log_a = std::log(mag);
    log_term = [=](std::size_t n) {
      const double x = static_cast<double>(n);
      return -0.5 * mag * mag + x * log_a - 0.5 * std::lgamma(x + 1.0);
    };
  }

  const auto logs = collect_log_terms(model, spec.truncation, log_term);
  const double peak = *std::max_element(logs.begin(), logs.end());
  FockVector v = assemble(logs, phase, peak);
  const double kept = v.norm_squared() * std::exp(2.0 * peak);
  if (spec.renormalize) return {v.normalized(), kept};
  v.amplitudes() *= std::exp(peak);
  return {v, kept};
}

}  // namespace

Truncation default_truncation(const ModelParams& model) {
  return is_su2_like(model) ? Truncation::bound_only() : Truncation::adaptive();
}

CoherentStateSpec CoherentStateSpec::aocs(const ModelParams& model, Complex alpha) {
  return {StateKind::Aocs, model, alpha, default_truncation(model), true};
}

CoherentStateSpec CoherentStateSpec::docs(const ModelParams& model, Complex alpha) {
  return {StateKind::Docs, model, alpha, default_truncation(model), true};
}

BuiltState build_state(const CoherentStateSpec& spec) {
  return spec.kind == StateKind::Aocs ? build_aocs_state(spec) : build_docs_state(spec);
}

FockVector build_aocs(const CoherentStateSpec& spec) {
  if (spec.kind != StateKind::Aocs) throw DomainError("build_aocs called with a DOCS spec");
  return build_aocs_state(spec).state;
}

FockVector build_docs(const CoherentStateSpec& spec) {
  if (spec.kind != StateKind::Docs) throw DomainError("build_docs called with an AOCS spec");
  return build_docs_state(spec).state;
}

double docs_alpha_pole(const ModelParams& model) {
  if (!is_su2_like(model)) return std::numeric_limits<double>::infinity();
  return 0.5 * std::numbers::pi / std::sqrt(model.deformation_scale());
}

Complex displacement_parameter(const ModelParams& model, Complex alpha) {
  const double mag = std::abs(alpha);
  const double phase = std::arg(alpha);
  const double root_chi = std::sqrt(model.deformation_scale());
  if (is_su2_like(model)) {
    if (mag * root_chi >= 0.5 * std::numbers::pi) {
      std::ostringstream os;
      os << "|alpha| sqrt(chi) = " << mag * root_chi << " reaches the tangent pole pi/2 (|alpha| < "
         << docs_alpha_pole(model) << " required)";
      throw DomainError(os.str());
    }
    return std::polar(std::tan(mag * root_chi), phase);
  }
  if (model.kind() == ModelKind::TrigPT) return std::polar(std::tanh(mag * root_chi), phase);
  throw DomainError("the harmonic oscillator has no deformed displacement parameter");
}

FockVector docs_exponential_oracle(const ModelParams& model, Complex alpha, std::size_t dim, double tail_eps) {
  if (dim == 0) throw DomainError("oracle dimension must be positive");
  const Eigen::MatrixXcd a = ladder_down_matrix(model, dim).cast<Complex>();
  const Eigen::MatrixXcd generator = alpha * a.adjoint() - std::conj(alpha) * a;
  const Eigen::MatrixXcd u = generator.exp();
  FockVector psi(Eigen::VectorXcd(u.col(0)));

  const auto block = invariant_dim(model);
  if (!block || dim < *block) {
    const std::size_t width = std::max<std::size_t>(2, dim / 8);
    const double tail = psi.tail_weight(dim > width ? dim - width : 0);
    if (tail > tail_eps) {
      std::ostringstream os;
      os << "oracle basis of size " << dim << " too small: tail weight " << tail << " exceeds " << tail_eps;
      throw ConvergenceError(os.str());
    }
  }
  return psi;
}

double aocs_residual(const ModelParams& model, Complex alpha, const FockVector& state) {
  const Eigen::MatrixXd a = ladder_down_matrix(model, state.dim());
  const Eigen::VectorXcd r = a.cast<Complex>() * state.amplitudes() - alpha * state.amplitudes();
  return r.norm() / state.amplitudes().norm();
}

double invert_alpha(const ModelParams& model, StateKind kind, double target_mean_n, std::optional<Truncation> truncation,
                    bool renormalize) {
  if (!(target_mean_n >= 0.0) || !std::isfinite(target_mean_n)) {
    throw DomainError("target mean occupation must be finite and non-negative");
  }
  if (target_mean_n == 0.0) return 0.0;
  const Truncation trunc = truncation.value_or(default_truncation(model));
  if (const auto bd = bound_dim(model); bd && target_mean_n >= static_cast<double>(*bd) - 1.0) {
    throw DomainError("target mean occupation must stay below bound_dim - 1 = " + std::to_string(*bd - 1));
  }

  const auto mean_at = [&](double mag) {
    const CoherentStateSpec spec{kind, model, Complex(mag, 0.0), trunc, renormalize};
    return mean_occupation(build_state(spec).state);
  };

  double lo = 0.0;
  double hi = 0.0;
  if (kind == StateKind::Docs && is_su2_like(model)) {
    hi = docs_alpha_pole(model) * (1.0 - 1e-9);
    const double sup = mean_at(hi);
    if (target_mean_n >= sup) {
      std::ostringstream os;
      os << "target <n> = " << target_mean_n << " unreachable below the tangent pole (supremum " << sup << ")";
      throw RangeError(os.str());
    }
  } else {
    hi = 1.0;
    while (mean_at(hi) < target_mean_n) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6) {
        std::ostringstream os;
        os << "target <n> = " << target_mean_n << " not reached for |alpha| up to 1e6 (reached " << mean_at(lo) << ")";
        throw RangeError(os.str());
      }
    }
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double m = mean_at(mid);
    if (std::abs(m - target_mean_n) < 1e-12) return mid;
    (m < target_mean_n ? lo : hi) = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fdcs
