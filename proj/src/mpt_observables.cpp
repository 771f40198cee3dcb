#include "fdcs/mpt_observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdcs/errors.hpp"
#include "fdcs/quadrature.hpp"

namespace fdcs {

namespace {

constexpr std::size_t kInitialNodes = 256;
constexpr std::size_t kMaxNodes = std::size_t{1} << 16;

// k!/(2l)_k C_k^l(y), which is 1 at y = 1.
double scaled_gegenbauer(int n, double l, double y) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = y;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * y * (k + l - 1.0) * cur - (k - 1.0) * prev) / (k + 2.0 * l - 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

const ModifiedPT& require_mpt(const ModelParams& model) {
  if (model.kind() != ModelKind::ModifiedPT) {
    throw DomainError("modified Poschl-Teller observables need an mpt model, got " + model.id());
  }
  return model.as<ModifiedPT>();
}

}  // namespace

MptEigenfunction::MptEigenfunction(int n, int s, double a) : n_(n), s_(s), a_(a) {
  if (n < 0 || n >= s) {
    throw DomainError("level " + std::to_string(n) + " is not bound for s=" + std::to_string(s));
  }
  double previous = raw_norm_squared(kInitialNodes);
  for (std::size_t nodes = 2 * kInitialNodes;; nodes *= 2) {
    const double current = raw_norm_squared(nodes);
    if (std::abs(current - previous) <= 1e-12 * current) {
      norm_ = 1.0 / std::sqrt(current);
      break;
    }
    if (nodes >= kMaxNodes) throw ConvergenceError("MPT eigenfunction norm did not stabilize");
    previous = current;
  }
}

double MptEigenfunction::polynomial(double y) const { return scaled_gegenbauer(n_, s_ - n_ + 0.5, y); }

double MptEigenfunction::polynomial_derivative(double y) const {
  if (n_ == 0) return 0.0;
  const double l = s_ - n_ + 0.5;
  return n_ * (2.0 * l + n_) / (2.0 * l + 1.0) * scaled_gegenbauer(n_ - 1, l + 1.0, y);
}

double MptEigenfunction::raw_norm_squared(std::size_t nodes) const {
  const auto rule = gauss_legendre(nodes);
  const double eps = s_ - n_;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const double y = rule->nodes[i];
    const double p = polynomial(y);
    acc += rule->weights[i] * std::pow(1.0 - y * y, eps - 1.0) * p * p;
  }
  return acc / a_;
}

double MptEigenfunction::norm_squared(std::size_t nodes) const {
  return norm_ * norm_ * raw_norm_squared(nodes);
}

double MptEigenfunction::value_at_tanh(double y) const {
  return norm_ * std::pow(1.0 - y * y, 0.5 * (s_ - n_)) * polynomial(y);
}

double MptEigenfunction::operator()(double x) const {
  const double sech = 1.0 / std::cosh(a_ * x);
  return norm_ * std::pow(sech, s_ - n_) * polynomial(std::tanh(a_ * x));
}

double MptEigenfunction::derivative(double x) const {
  const double sech = 1.0 / std::cosh(a_ * x);
  const double y = std::tanh(a_ * x);
  const double eps = s_ - n_;
  return a_ * norm_ * std::pow(sech, eps) * (-eps * y * polynomial(y) + sech * sech * polynomial_derivative(y));
}

MptFrame default_mpt_frame(const ModelParams& model) {
  const auto& m = require_mpt(model);
  return {model.hbar() * m.a * m.a * (2.0 * m.s - 1.0) / (2.0 * m.mu), true};
}

MptObservables::MptObservables(const ModelParams& model, std::optional<MptFrame> frame,
                               std::optional<std::size_t> levels)
    : model_(model), frame_(frame.value_or(default_mpt_frame(model))), levels_(0) {
  const auto& m = require_mpt(model);
  levels_ = levels.value_or(static_cast<std::size_t>(m.s));
  if (levels_ == 0 || levels_ > static_cast<std::size_t>(m.s)) {
    throw DomainError("MPT tables need 1 <= levels <= s");
  }
  if (!(frame_.omega > 0.0)) throw DomainError("MPT frame frequency must be positive");

  std::vector<MptEigenfunction> psi;
  psi.reserve(levels_);
  for (std::size_t n = 0; n < levels_; ++n) psi.emplace_back(static_cast<int>(n), m.s, m.a);

  // Slowest decay among products psi_m psi_n with m + n odd, plus the width of the low levels.
  const double slowest = levels_ >= 2 ? m.a * (2.0 * m.s - 2.0 * static_cast<double>(levels_) + 3.0) : 2.0 * m.a * m.s;
  const double half_width = 50.0 / slowest + 10.0 / (m.a * std::sqrt(2.0 * m.s));

  const auto L = static_cast<Eigen::Index>(levels_);
  const auto tabulate = [&](std::size_t nodes, Eigen::MatrixXd& xt, Eigen::MatrixXd& pt) {
    const auto rule = gauss_legendre(nodes);
    const auto q = static_cast<Eigen::Index>(nodes);
    Eigen::MatrixXd values(q, L);
    Eigen::MatrixXd slopes(q, L);
    Eigen::VectorXd xs(q);
    Eigen::VectorXd ws(q);
    for (Eigen::Index i = 0; i < q; ++i) {
      xs(i) = half_width * rule->nodes[static_cast<std::size_t>(i)];
      ws(i) = half_width * rule->weights[static_cast<std::size_t>(i)];
      for (Eigen::Index n = 0; n < L; ++n) {
        values(i, n) = psi[static_cast<std::size_t>(n)](xs(i));
        slopes(i, n) = psi[static_cast<std::size_t>(n)].derivative(xs(i));
      }
    }
    xt = Eigen::MatrixXd::Zero(L, L);
    pt = Eigen::MatrixXd::Zero(L, L);
    const Eigen::MatrixXd weighted = values.array().colwise() * ws.array();
    const Eigen::MatrixXd xw = weighted.array().colwise() * xs.array();
    for (Eigen::Index r = 0; r < L; ++r) {
      for (Eigen::Index c = 0; c < L; ++c) {
        if ((r + c) % 2 == 0) continue;  // parity-forbidden
        xt(r, c) = xw.col(r).dot(values.col(c));
        pt(r, c) = -model_.hbar() * weighted.col(r).dot(slopes.col(c));
      }
    }
  };

  Eigen::MatrixXd x_prev;
  Eigen::MatrixXd p_prev;
  tabulate(2 * kInitialNodes, x_prev, p_prev);
  for (std::size_t nodes = 4 * kInitialNodes;; nodes *= 2) {
    tabulate(nodes, x_, p_);
    const double dx = (x_ - x_prev).cwiseAbs().maxCoeff();
    const double dp = (p_ - p_prev).cwiseAbs().maxCoeff();
    const double sx = std::max(x_.cwiseAbs().maxCoeff(), 1e-300);
    const double sp = std::max(p_.cwiseAbs().maxCoeff(), 1e-300);
    if (dx <= 1e-11 * sx && dp <= 1e-11 * sp) {
      nodes_ = nodes;
      break;
    }
    if (nodes >= kMaxNodes) throw ConvergenceError("MPT matrix elements did not converge under node doubling");
    x_prev = x_;
    p_prev = p_;
  }

  // Phase convention: <n-1|x|n> > 0.
  flips_.assign(levels_, false);
  for (Eigen::Index n = 1; n < L; ++n) {
    if (x_(n - 1, n) < 0.0) {
      flips_[static_cast<std::size_t>(n)] = true;
      x_.row(n) *= -1.0;
      x_.col(n) *= -1.0;
      p_.row(n) *= -1.0;
      p_.col(n) *= -1.0;
    }
  }
}

double MptObservables::f(std::size_t n) const {
  const double fsq = f_squared(model_, n);
  if (!(fsq > 0.0)) throw DomainError("deformation function vanishes at n=" + std::to_string(n));
  return std::sqrt(fsq);
}

double MptObservables::x_element(std::size_t m, std::size_t n) const {
  if (m >= levels_ || n >= levels_) throw DomainError("x element index outside the tabulated bound levels");
  return x_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
}

double MptObservables::p_element(std::size_t m, std::size_t n) const {
  if (m >= levels_ || n >= levels_) throw DomainError("p element index outside the tabulated bound levels");
  return p_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
}

MptCoefficients MptObservables::coefficients(std::size_t n) const {
  MptCoefficients c;
  if (n == 0 || n >= levels_) return c;
  const auto& m = model_.as<ModifiedPT>();
  const double hbar = model_.hbar();
  const double w = frame_.omega;
  const double x_scale = std::sqrt(2.0 * m.mu * w / hbar);
  const double p_scale = std::sqrt(2.0 / (hbar * m.mu * w));
  const double dn = static_cast<double>(n);
  const double ladder1 = f(n) * std::sqrt(dn);
  c.F = x_scale * x_element(n - 1, n) / ladder1;
  c.R = -p_scale * p_element(n - 1, n) / ladder1;
  if (n >= 3) {
    const double ladder3 = f(n) * f(n - 1) * f(n - 2) * std::sqrt(dn * (dn - 1.0) * (dn - 2.0));
    c.G = x_scale * x_element(n - 3, n) / ladder3;
    c.S = -p_scale * p_element(n - 3, n) / ladder3;
  }
  return c;
}

QuadOperator MptObservables::x_matrix(std::optional<std::size_t> dim) const {
  const std::size_t d = dim.value_or(levels_);
  if (d == 0 || d > levels_ + 3) throw DomainError("X_D dimension must lie in 1..levels+3");
  const auto& m = model_.as<ModifiedPT>();
  const double pref =
      frame_.oscillator_units ? std::sqrt(0.5) : std::sqrt(model_.hbar() / (2.0 * m.mu * frame_.omega));
  QuadOperator op{OperatorLabel::X,
                  Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)),
                  std::min(d, levels_)};
  for (std::size_t n = 1; n < std::min(d, levels_); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const auto c = coefficients(n);
    const double dn = static_cast<double>(n);
    // A F(n) and F(n) A^dagger
    const double e1 = pref * c.F * std::sqrt(dn) * f(n);
    op.matrix(i - 1, i) = e1;
    op.matrix(i, i - 1) = e1;
    if (n >= 3) {
      // A^3 G(n) and G(n) A^dagger^3
      const double e3 = pref * c.G * std::sqrt(dn * (dn - 1.0) * (dn - 2.0)) * f(n) * f(n - 1) * f(n - 2);
      op.matrix(i - 3, i) = e3;
      op.matrix(i, i - 3) = e3;
    }
  }
  return op;
}

QuadOperator MptObservables::p_matrix(std::optional<std::size_t> dim) const {
  const std::size_t d = dim.value_or(levels_);
  if (d == 0 || d > levels_ + 3) throw DomainError("P_D dimension must lie in 1..levels+3");
  const auto& m = model_.as<ModifiedPT>();
  const double pref =
      frame_.oscillator_units ? std::sqrt(0.5) : std::sqrt(model_.hbar() * m.mu * frame_.omega / 2.0);
  QuadOperator op{OperatorLabel::P,
                  Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)),
                  std::min(d, levels_)};
  const Complex minus_i(0.0, -1.0);
  for (std::size_t n = 1; n < std::min(d, levels_); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const auto c = coefficients(n);
    const double dn = static_cast<double>(n);
    // -i (A R(n) - R(n) A^dagger)
    const double e1 = pref * c.R * std::sqrt(dn) * f(n);
    op.matrix(i - 1, i) = minus_i * e1;
    op.matrix(i, i - 1) = -minus_i * e1;
    if (n >= 3) {
      const double e3 = pref * c.S * std::sqrt(dn * (dn - 1.0) * (dn - 2.0)) * f(n) * f(n - 1) * f(n - 2);
      op.matrix(i - 3, i) = minus_i * e3;
      op.matrix(i, i - 3) = -minus_i * e3;
    }
  }
  return op;
}

double MptObservables::discarded_element_ratio() const {
  double worst = 0.0;
  for (std::size_t n = 1; n < levels_; ++n) {
    const double ref = std::abs(x_element(n - 1, n));
    for (std::size_t m = 0; m < levels_; ++m) {
      const std::size_t gap = m > n ? m - n : n - m;
      if (gap >= 5) worst = std::max(worst, std::abs(x_element(m, n)) / ref);
    }
  }
  return worst;
}

double mpt_matrix_element(MatrixElementKind kind, std::size_t m, std::size_t n, const ModelParams& model) {
  const auto& mpt = require_mpt(model);
  const auto s = static_cast<std::size_t>(mpt.s);
  if (m >= s || n >= s) {
    std::ostringstream os;
    os << "matrix element <" << m << "|.|" << n << "> needs both levels below s=" << s;
    throw DomainError(os.str());
  }
  if ((m + n) % 2 == 0) return 0.0;
  const MptObservables tables(model, std::nullopt, std::max(m, n) + 1);
  return kind == MatrixElementKind::X ? tables.x_element(m, n) : tables.p_element(m, n);
}

MptCoefficients mpt_coefficients(const ModelParams& model, std::size_t n, double omega) {
  const auto& mpt = require_mpt(model);
  if (n == 0 || n >= static_cast<std::size_t>(mpt.s)) {
    throw DomainError("coefficient functions need 1 <= n < s");
  }
  const MptObservables tables(model, MptFrame{omega, false}, n + 1);
  return tables.coefficients(n);
}

QuadOperator mpt_x_matrix(const ModelParams& model, std::optional<std::size_t> dim, std::optional<MptFrame> frame) {
  return MptObservables(model, frame).x_matrix(dim);
}

QuadOperator mpt_p_matrix(const ModelParams& model, std::optional<std::size_t> dim, std::optional<MptFrame> frame) {
  return MptObservables(model, frame).p_matrix(dim);
}

}  // namespace fdcs
