#include <doctest.h>

#include <cmath>

#include "fdcs/errors.hpp"
#include "fdcs/model.hpp"

using namespace fdcs;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("deformation function values") {
  const auto h = ModelParams::harmonic();
  for (std::size_t n : {0u, 1u, 7u, 100u}) CHECK(f_squared(h, n) == 1.0);

  const auto morse = ModelParams::morse(22);
  CHECK(f_squared(morse, 1) == doctest::Approx(44.0 / 45.0).epsilon(1e-15));
  CHECK(morse.as<Morse>().child_parameter() == 45);
  CHECK(morse.deformation_scale() == doctest::Approx(1.0 / 45.0));

  const auto mpt = ModelParams::modified_pt(10, 1.0, 1.0, 1.0);
  CHECK(f_squared(mpt, 0) == doctest::Approx(10.5).epsilon(1e-15));

  // Default reference frequency normalizes f^2(0) to one.
  const auto mpt_default = ModelParams::modified_pt(10);
  CHECK(mpt_default.omega() == doctest::Approx(10.5));
  CHECK(f_squared(mpt_default, 0) == doctest::Approx(1.0));

  const auto tpt = ModelParams::trig_pt(2.0);
  CHECK(tpt.deformation_scale() == doctest::Approx(0.25));
  CHECK(f_squared(tpt, 3) == doctest::Approx(0.25 * (3 + 3)));
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(ModelParams::morse(0), DomainError);
  CHECK_THROWS_AS(ModelParams::modified_pt(0), DomainError);
  CHECK_THROWS_AS(ModelParams::modified_pt(10, -1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::trig_pt(1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::trig_pt(2.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams::harmonic(-1.0), DomainError);
}

TEST_CASE("invariant and bound dimensions") {
  CHECK(invariant_dim(ModelParams::morse(22)) == 45u);
  CHECK(invariant_dim(ModelParams::modified_pt(10)) == 21u);
  CHECK_FALSE(invariant_dim(ModelParams::harmonic()).has_value());
  CHECK_FALSE(invariant_dim(ModelParams::trig_pt(2.0)).has_value());

  CHECK(bound_dim(ModelParams::morse(22)) == 22u);
  CHECK(bound_dim(ModelParams::modified_pt(10)) == 10u);
  CHECK_FALSE(bound_dim(ModelParams::trig_pt(2.0)).has_value());
  CHECK_FALSE(bound_dim(ModelParams::harmonic()).has_value());
}

TEST_CASE("closed-form spectra") {
  CHECK(energy(ModelParams::morse(22), 0) == doctest::Approx(0.5 - 1.0 / 90.0).epsilon(1e-14));
  CHECK(energy(ModelParams::modified_pt(10), 0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(energy(ModelParams::harmonic(), 3) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(energy(ModelParams::trig_pt(2.0), 0) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(energy(ModelParams::morse(22), 22), DomainError);
  CHECK_THROWS_AS(energy(ModelParams::modified_pt(10), 10), DomainError);
  CHECK_NOTHROW(energy(ModelParams::trig_pt(2.0), 500));
}

TEST_CASE("generic spectrum equals the closed forms") {
  const ModelParams models[] = {
      ModelParams::harmonic(1.3, 0.7),
      ModelParams::morse(22),
      ModelParams::morse(5, 2.0, 1.5),
      ModelParams::modified_pt(10),
      ModelParams::modified_pt(7, 0.6, 2.0, 3.0, 1.2),
      ModelParams::trig_pt(2.0),
      ModelParams::trig_pt(3.7, 1.4, 0.8, 5.0, 0.9),
  };
  for (const auto& m : models) {
    CAPTURE(m.id());
    const std::size_t top = bound_dim(m).value_or(40);
    for (std::size_t n = 0; n < top; ++n) {
      CAPTURE(n);
      CHECK(rel(generic_energy(m, n), energy(m, n)) < 1e-12);
    }
  }
}

TEST_CASE("ladder elements") {
  const auto morse = ModelParams::morse(22);
  CHECK(ladder_down_element(morse, 1) == doctest::Approx(std::sqrt(44.0 / 45.0)).epsilon(1e-14));
  CHECK(ladder_down_element(morse, 0) == 0.0);
  CHECK(ladder_down_element(morse, 45) == 0.0);
  CHECK(ladder_down_element(ModelParams::modified_pt(10), 21) == 0.0);
  CHECK_THROWS_AS(ladder_down_element(morse, 46), DomainError);
  CHECK(ladder_up_element(morse, 0) == ladder_down_element(morse, 1));

  const Eigen::MatrixXd a = ladder_down_matrix(morse, 50);
  CHECK(a(44, 45) == 0.0);
  CHECK(a.block(45, 45, 5, 5).isZero(0.0));
  CHECK(a(0, 1) == doctest::Approx(std::sqrt(44.0 / 45.0)));
}

TEST_CASE("commutator eigenvalues") {
  const auto morse = ModelParams::morse(22);
  CHECK(commutator_eigenvalue(morse, 0) == doctest::Approx(44.0 / 45.0).epsilon(1e-14));
  CHECK(std::abs(commutator_eigenvalue(morse, 22)) < 1e-15);
  CHECK(commutator_eigenvalue(ModelParams::harmonic(), 17) == 1.0);

  const ModelParams models[] = {morse, ModelParams::modified_pt(10), ModelParams::modified_pt(4, 2.0, 0.5, 7.0),
                                ModelParams::trig_pt(2.5), ModelParams::harmonic()};
  for (const auto& m : models) {
    CAPTURE(m.id());
    const std::size_t top = invariant_dim(m).value_or(60);
    for (std::size_t n = 0; n + 1 < top; ++n) {
      const double up = ladder_up_element(m, n);
      const double down = ladder_down_element(m, n);
      CHECK(std::abs(commutator_eigenvalue(m, n) - (up * up - down * down)) < 1e-12 * std::max(1.0, up * up));
    }
  }
}

TEST_CASE("harmonic limits of the spectra") {
  // chi_a -> 0 for Morse.
  const auto morse = ModelParams::morse(200000);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(rel(energy(morse, n), n + 0.5) < 1e-4);

  // s -> infinity with s a^2 = mu Omega / hbar; energies relative to the ground state.
  const double s = 1e4;
  const double a = std::sqrt(1.0 / s);
  const auto mpt = ModelParams::modified_pt(static_cast<int>(s), a);
  const double e0 = energy(mpt, 0);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(rel(energy(mpt, n) - e0, static_cast<double>(n)) < 1e-3);
}

TEST_CASE("identifiers and names") {
  CHECK(ModelParams::morse(22).id() == "morse(N=22,omega=1,hbar=1)");
  CHECK(to_string(ModelKind::ModifiedPT) == "mpt");
  CHECK(ModelParams::trig_pt(2.0).kind() == ModelKind::TrigPT);
}
