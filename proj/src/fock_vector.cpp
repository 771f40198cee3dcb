#include "fdcs/fock_vector.hpp"

#include <algorithm>

#include "fdcs/errors.hpp"

namespace fdcs {

FockVector FockVector::number_state(std::size_t n, std::size_t dim) {
  if (n >= dim) throw DomainError("number_state: level " + std::to_string(n) + " outside basis of size " + std::to_string(dim));
  FockVector v(dim);
  v[n] = 1.0;
  return v;
}

FockVector FockVector::normalized() const {
  const double nrm = amps_.norm();
  if (nrm == 0.0) throw DomainError("cannot normalize the zero vector");
  return FockVector(Eigen::VectorXcd(amps_ / nrm));
}

FockVector FockVector::resized(std::size_t dim) const {
  FockVector out(dim);
  const auto keep = static_cast<Eigen::Index>(std::min(dim, this->dim()));
  out.amps_.head(keep) = amps_.head(keep);
  return out;
}

double FockVector::tail_weight(std::size_t from) const {
  if (from >= dim()) return 0.0;
  return amps_.tail(static_cast<Eigen::Index>(dim() - from)).squaredNorm();
}

std::vector<double> occupation_distribution(const FockVector& state) {
  std::vector<double> p(state.dim());
  for (std::size_t n = 0; n < state.dim(); ++n) p[n] = std::norm(state[n]);
  return p;
}

double mean_occupation(const FockVector& state) {
  double weight = 0.0;
  double acc = 0.0;
  for (std::size_t n = 0; n < state.dim(); ++n) {
    const double pn = std::norm(state[n]);
    weight += pn;
    acc += static_cast<double>(n) * pn;
  }
  if (weight == 0.0) throw DomainError("mean_occupation of the zero vector");
  return acc / weight;
}

Complex overlap(const FockVector& a, const FockVector& b) {
  const std::size_t common = std::min(a.dim(), b.dim());
  Complex acc = 0.0;
  for (std::size_t n = 0; n < common; ++n) acc += std::conj(a[n]) * b[n];
  return acc;
}

}  // namespace fdcs
