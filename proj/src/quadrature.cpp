#include "fdcs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

/// (P_n(z), P_{n-1}(z)) by the three-term recurrence.
std::pair<double, double> legendre_pair(std::size_t n, double z) {
  double prev = 1.0;
  double cur = z;
  for (std::size_t j = 2; j <= n; ++j) {
    const double dj = static_cast<double>(j);
    const double next = ((2.0 * dj - 1.0) * z * cur - (dj - 1.0) * prev) / dj;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

GaussLegendreRule compute_rule(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  const auto derivative = [&](double z) {
    const auto [pn, pm] = legendre_pair(n, z);
    return dn * (z * pn - pm) / (z * z - 1.0);
  };
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const double dz = legendre_pair(n, z).first / derivative(z);
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = derivative(z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const GaussLegendreRule>(compute_rule(n));
  return slot;
}

}  // namespace fdcs
