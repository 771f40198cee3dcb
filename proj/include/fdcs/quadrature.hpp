#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace fdcs {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point rule, computed once per n and shared (thread-safe cache).
std::shared_ptr<const GaussLegendreRule> gauss_legendre(std::size_t n);

}  // namespace fdcs
