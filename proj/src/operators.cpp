#include "fdcs/operators.hpp"

#include <cmath>
#include <sstream>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

Eigen::VectorXcd padded_amplitudes(const QuadOperator& op, const FockVector& state) {
  if (state.dim() > op.dim()) {
    const double beyond = state.tail_weight(op.dim());
    if (beyond > 1e-20) {
      throw DomainError("state of dimension " + std::to_string(state.dim()) + " exceeds operator basis " +
                        std::to_string(op.dim()));
    }
  }
  const double leak = std::sqrt(state.tail_weight(op.support));
  if (leak > 1e-10) {
    std::ostringstream os;
    os << to_string(op.label) << " is faithful on " << op.support << " levels but the state carries amplitude " << leak
       << " beyond them";
    throw DomainError(os.str());
  }
  return state.resized(op.dim()).amplitudes();
}

}  // namespace

std::string to_string(OperatorLabel label) {
  switch (label) {
    case OperatorLabel::X: return "x_D";
    case OperatorLabel::P: return "p_D";
    case OperatorLabel::XSquared: return "x_D^2";
    case OperatorLabel::PSquared: return "p_D^2";
    case OperatorLabel::Commutator: return "[x_D,p_D]";
  }
  return "operator";
}

double QuadOperator::hermiticity_defect() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

Moments moments(const QuadOperator& op, const FockVector& state) {
  const Eigen::VectorXcd psi = padded_amplitudes(op, state);
  const Eigen::VectorXcd image = op.matrix * psi;
  const double mean = psi.dot(image).real();
  return {mean, image.squaredNorm() - mean * mean};
}

Complex commutator_expectation(const QuadOperator& x, const QuadOperator& p, const FockVector& state) {
  if (x.dim() != p.dim()) throw DomainError("x and p operators must share a basis");
  const Eigen::VectorXcd psi = padded_amplitudes(x, state);
  const Eigen::VectorXcd xs = x.matrix * psi;
  const Eigen::VectorXcd ps = p.matrix * psi;
  const Complex xp = xs.dot(ps);  // <x psi | p psi>
  return xp - std::conj(xp);
}

UncertaintyReport uncertainty_report(const FockVector& state, const QuadOperator& x, const QuadOperator& p) {
  UncertaintyReport r;
  r.x = moments(x, state);
  r.p = moments(p, state);
  r.commutator = commutator_expectation(x, p, state);
  const double c2 = std::norm(r.commutator);
  if (std::sqrt(c2) >= 1e-14) r.delta_xp = 4.0 * r.x.variance * r.p.variance / c2;
  return r;
}

std::optional<double> normalized_uncertainty(const FockVector& state, const QuadOperator& x, const QuadOperator& p) {
  return uncertainty_report(state, x, p).delta_xp;
}

QuadOperator commutator(const QuadOperator& x, const QuadOperator& p) {
  if (x.dim() != p.dim()) throw DomainError("x and p operators must share a basis");
  QuadOperator c;
  c.label = OperatorLabel::Commutator;
  c.matrix = x.matrix * p.matrix - p.matrix * x.matrix;
  c.support = std::min(x.support, p.support);
  return c;
}

QuadOperator harmonic_x_matrix(std::size_t dim) {
  QuadOperator op{OperatorLabel::X, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
                  dim > 0 ? dim - 1 : 0};
  for (std::size_t n = 1; n < dim; ++n) {
    const double e = std::sqrt(0.5 * static_cast<double>(n));
    const auto i = static_cast<Eigen::Index>(n);
    op.matrix(i - 1, i) = e;
    op.matrix(i, i - 1) = e;
  }
  return op;
}

QuadOperator harmonic_p_matrix(std::size_t dim) {
  QuadOperator op{OperatorLabel::P, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
                  dim > 0 ? dim - 1 : 0};
  for (std::size_t n = 1; n < dim; ++n) {
    const double e = std::sqrt(0.5 * static_cast<double>(n));
    const auto i = static_cast<Eigen::Index>(n);
    op.matrix(i, i - 1) = Complex(0.0, e);
    op.matrix(i - 1, i) = Complex(0.0, -e);
  }
  return op;
}

}  // namespace fdcs
