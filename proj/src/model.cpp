#include "fdcs/model.hpp"

#include <cmath>
#include <sstream>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ModelParams ModelParams::harmonic(double omega, double hbar) {
  require_positive(omega, "omega");
  require_positive(hbar, "hbar");
  return ModelParams(Harmonic{omega}, hbar);
}

ModelParams ModelParams::morse(int n_bound, double omega, double hbar) {
  if (n_bound < 1) throw DomainError("Morse model needs N >= 1 bound states");
  require_positive(omega, "omega");
  require_positive(hbar, "hbar");
  return ModelParams(Morse{n_bound, omega}, hbar);
}

ModelParams ModelParams::modified_pt(int s, double a, double mu, std::optional<double> omega, double hbar) {
  if (s < 1) throw DomainError("modified Poschl-Teller model needs integer s >= 1");
  require_positive(a, "a");
  require_positive(mu, "mu");
  require_positive(hbar, "hbar");
  const double om = omega.value_or(hbar * a * a * (2.0 * s + 1.0) / (2.0 * mu));
  require_positive(om, "omega");
  return ModelParams(ModifiedPT{s, a, mu, om}, hbar);
}

ModelParams ModelParams::trig_pt(double lambda, double a, double mu, std::optional<double> omega, double hbar) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw DomainError("trigonometric Poschl-Teller model needs lambda > 1");
  require_positive(a, "a");
  require_positive(mu, "mu");
  require_positive(hbar, "hbar");
  const double om = omega.value_or(hbar * a * a * lambda / mu);
  require_positive(om, "omega");
  return ModelParams(TrigPT{lambda, a, mu, om}, hbar);
}

ModelKind ModelParams::kind() const {
  return static_cast<ModelKind>(variant_.index());
}

double ModelParams::omega() const {
  return std::visit([](const auto& m) { return m.omega; }, variant_);
}

double ModelParams::deformation_scale() const {
  return std::visit(Overloaded{
                        [](const Harmonic&) { return 0.0; },
                        [](const Morse& m) { return m.anharmonicity(); },
                        [this](const ModifiedPT& m) { return hbar_ * m.a * m.a / (2.0 * m.mu * m.omega); },
                        [this](const TrigPT& m) { return hbar_ * m.a * m.a / (2.0 * m.mu * m.omega); },
                    },
                    variant_);
}

std::string ModelParams::id() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(Overloaded{
                 [&](const Harmonic& m) { os << "harmonic(omega=" << m.omega; },
                 [&](const Morse& m) { os << "morse(N=" << m.n_bound << ",omega=" << m.omega; },
                 [&](const ModifiedPT& m) {
                   os << "mpt(s=" << m.s << ",a=" << m.a << ",mu=" << m.mu << ",omega=" << m.omega;
                 },
                 [&](const TrigPT& m) {
                   os << "tpt(lambda=" << m.lambda << ",a=" << m.a << ",mu=" << m.mu << ",omega=" << m.omega;
                 },
             },
             variant_);
  os << ",hbar=" << hbar_ << ")";
  return os.str();
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Harmonic: return "harmonic";
    case ModelKind::Morse: return "morse";
    case ModelKind::ModifiedPT: return "mpt";
    case ModelKind::TrigPT: return "tpt";
  }
  return "unknown";
}

double f_squared(const ModelParams& model, std::size_t n) {
  const double x = static_cast<double>(n);
  const double chi = model.deformation_scale();
  return std::visit(Overloaded{
                        [](const Harmonic&) { return 1.0; },
                        [&](const Morse&) { return 1.0 - chi * x; },
                        [&](const ModifiedPT& m) { return chi * (2.0 * m.s + 1.0 - x); },
                        [&](const TrigPT& m) { return chi * (x + 2.0 * m.lambda - 1.0); },
                    },
                    model.variant());
}

std::optional<std::size_t> invariant_dim(const ModelParams& model) {
  return std::visit(Overloaded{
                        [](const Harmonic&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const Morse& m) -> std::optional<std::size_t> { return 2 * m.n_bound + 1; },
                        [](const ModifiedPT& m) -> std::optional<std::size_t> { return 2 * m.s + 1; },
                        [](const TrigPT&) -> std::optional<std::size_t> { return std::nullopt; },
                    },
                    model.variant());
}

std::optional<std::size_t> bound_dim(const ModelParams& model) {
  return std::visit(Overloaded{
                        [](const Harmonic&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const Morse& m) -> std::optional<std::size_t> { return m.n_bound; },
                        [](const ModifiedPT& m) -> std::optional<std::size_t> { return m.s; },
                        [](const TrigPT&) -> std::optional<std::size_t> { return std::nullopt; },
                    },
                    model.variant());
}

double energy(const ModelParams& model, std::size_t n) {
  if (const auto bd = bound_dim(model); bd && n >= *bd) {
    throw DomainError("energy: level " + std::to_string(n) + " lies above the dissociation limit of " + model.id() +
                      " (last bound level " + std::to_string(*bd - 1) + ")");
  }
  const double x = static_cast<double>(n);
  const double hbar = model.hbar();
  return std::visit(Overloaded{
                        [&](const Harmonic& m) { return hbar * m.omega * (x + 0.5); },
                        [&](const Morse& m) {
                          const double chi = m.anharmonicity();
                          const double y = x + 0.5;
                          return hbar * m.omega * (y - chi * y * y - chi / 4.0);
                        },
                        [&](const ModifiedPT& m) {
                          return hbar * hbar * m.a * m.a / (2.0 * m.mu) * (-x * x + 2.0 * m.s * x + m.s);
                        },
                        [&](const TrigPT& m) {
                          return hbar * hbar * m.a * m.a / (2.0 * m.mu) * (x * x + 2.0 * m.lambda * x + m.lambda);
                        },
                    },
                    model.variant());
}

double generic_energy(const ModelParams& model, std::size_t n) {
  const double x = static_cast<double>(n);
  return 0.5 * model.hbar() * model.omega() * (x * f_squared(model, n) + (x + 1.0) * f_squared(model, n + 1));
}

double ladder_down_element(const ModelParams& model, std::size_t n) {
  if (n == 0) return 0.0;
  const double fsq = f_squared(model, n);
  if (fsq < 0.0) {
    throw DomainError("ladder element at n=" + std::to_string(n) + " lies outside the invariant block of " + model.id());
  }
  return std::sqrt(static_cast<double>(n) * fsq);
}

double ladder_up_element(const ModelParams& model, std::size_t n) {
  return ladder_down_element(model, n + 1);
}

double commutator_eigenvalue(const ModelParams& model, std::size_t n) {
  const double x = static_cast<double>(n);
  const double chi = model.deformation_scale();
  return std::visit(Overloaded{
                        [](const Harmonic&) { return 1.0; },
                        [&](const Morse& m) { return 2.0 * (m.n_bound - x) / (2.0 * m.n_bound + 1.0); },
                        [&](const ModifiedPT& m) { return 2.0 * chi * (m.s - x); },
                        [&](const TrigPT& m) { return 2.0 * chi * (x + m.lambda); },
                    },
                    model.variant());
}

Eigen::MatrixXd ladder_down_matrix(const ModelParams& model, std::size_t dim) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto block = invariant_dim(model);
  for (std::size_t n = 1; n < dim; ++n) {
    if (block && n >= *block) break;
    a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = ladder_down_element(model, n);
  }
  return a;
}

}  // namespace fdcs
