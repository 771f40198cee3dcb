#include <doctest.h>

#include <cmath>

#include "fdcs/coherent_states.hpp"
#include "fdcs/errors.hpp"
#include "fdcs/morse_observables.hpp"
#include "fdcs/operators.hpp"

using namespace fdcs;

// Reference numbers: tests/oracles/frozen_values.py (independent transcription in numpy).

TEST_CASE("Morse coefficient scalars") {
  const MorseCoefficients c(45.0);
  CHECK(c.f0() == doctest::Approx(0.03387953407002531).epsilon(1e-13));
  CHECK(c.f00(0) == doctest::Approx(std::sqrt(45.0) * c.f0()).epsilon(1e-15));
  CHECK(MorseCoefficients::kEulerGamma == doctest::Approx(0.577216).epsilon(1e-6));
  CHECK(c.f10(0) == doctest::Approx(std::sqrt(44.0 / 45.0)));
  CHECK(c.g01(3) == -c.g10(3));
  CHECK(c.g02(3) == -c.g20(3));
  CHECK(c.f02(3) == c.f20(3));
  CHECK_THROWS_AS(c.f00(22), DomainError);

  // The exact harmonic sum and the asymptotic branch agree where they meet.
  const MorseCoefficients exact(10001.0);
  const MorseCoefficients asym(10001.5);
  CHECK(std::abs(exact.f0() - asym.f0()) < 1e-4);
}

TEST_CASE("Morse coefficients approach the harmonic values") {
  const MorseCoefficients near(1e6);
  for (std::size_t n : {0u, 1u, 4u}) {
    CHECK(std::abs(near.f10(n) - 1.0) < 1e-4);
    CHECK(std::abs(near.g10(n) - 1.0) < 1e-4);
  }
  // The second-order terms fade only like k^{-1/2}.
  const MorseCoefficients far(1e12);
  for (std::size_t n : {0u, 1u, 4u}) {
    CHECK(std::abs(far.f20(n)) < 1e-4);
    CHECK(std::abs(far.g20(n)) < 1e-4);
    CHECK(std::abs(far.f00(n)) < 1e-4);
  }
  CHECK(near.f20(2) * std::sqrt(1e6) == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(near.g20(2) * std::sqrt(1e6) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("Morse x_D and p_D matrices against the frozen transcription") {
  const auto morse = ModelParams::morse(22);
  const QuadOperator x = morse_x_matrix(morse);
  const QuadOperator p = morse_p_matrix(morse);
  CHECK(x.dim() == 24u);
  CHECK(x.support == 22u);
  CHECK(x.matrix(0, 0).real() == doctest::Approx(0.16070474058983178).epsilon(1e-12));
  CHECK(x.matrix(1, 1).real() == doctest::Approx(0.27231969002919154).epsilon(1e-12));
  CHECK(x.matrix(0, 1).real() == doctest::Approx(0.7071067811865475).epsilon(1e-12));
  CHECK(x.matrix(0, 2).real() == doctest::Approx(-0.07539731110566095).epsilon(1e-12));
  CHECK(x.matrix(5, 6).real() == doctest::Approx(1.8397324220155993).epsilon(1e-12));
  CHECK(x.matrix(5, 7).real() == doctest::Approx(-0.39039295289466425).epsilon(1e-12));
  CHECK(p.matrix(0, 1).imag() == doctest::Approx(-0.675679813133812).epsilon(1e-12));
  CHECK(p.matrix(0, 2).imag() == doctest::Approx(0.14074164739723377).epsilon(1e-12));
  CHECK(p.matrix(5, 6).imag() == doctest::Approx(-1.3491371094781064).epsilon(1e-12));

  CHECK(x.matrix(0, 0).real() == doctest::Approx(std::sqrt(45.0 / 2.0) * MorseCoefficients(45.0).f0()));
  CHECK(p.matrix.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(x.matrix(0, 3) == Complex(0.0, 0.0));
}

TEST_CASE("Morse matrices are Hermitian for every admissible dimension") {
  const auto morse = ModelParams::morse(22);
  for (std::size_t d = 1; d <= 45; ++d) {
    CHECK(morse_x_matrix(morse, d).hermiticity_defect() < 1e-12);
    CHECK(morse_p_matrix(morse, d).hermiticity_defect() < 1e-12);
  }
  CHECK_THROWS_AS(morse_x_matrix(morse, 46), DomainError);
}

TEST_CASE("Morse x_D reduces to the harmonic coordinate for large k") {
  const MorseCoefficients c(1e12);
  const QuadOperator x = morse_x_matrix(c, 7, 5);
  const QuadOperator p = morse_p_matrix(c, 7, 5);
  const QuadOperator xh = harmonic_x_matrix(7);
  const QuadOperator ph = harmonic_p_matrix(7);
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) {
      CHECK(std::abs(x.matrix(i, j) - xh.matrix(i, j)) < 1e-3 * std::max(1.0, std::abs(xh.matrix(i, j))));
      CHECK(std::abs(p.matrix(i, j) - ph.matrix(i, j)) < 1e-3 * std::max(1.0, std::abs(ph.matrix(i, j))));
    }
  }
}

TEST_CASE("moments and leakage guard") {
  const auto morse = ModelParams::morse(22);
  const QuadOperator p = morse_p_matrix(morse);
  CHECK(moments(p, FockVector::number_state(0, 22)).mean == 0.0);

  const QuadOperator x = morse_x_matrix(morse);
  CHECK_THROWS_AS(moments(x, FockVector::number_state(23, 24)), DomainError);
  CHECK_THROWS_AS(moments(x, FockVector::number_state(46, 50)), DomainError);

  // Harmonic coherent state: <x> = sqrt(2) alpha.
  const auto h = ModelParams::harmonic();
  const FockVector psi = build_docs(CoherentStateSpec::docs(h, 0.8));
  const Moments mx = moments(harmonic_x_matrix(psi.dim() + 1), psi);
  CHECK(mx.mean == doctest::Approx(std::sqrt(2.0) * 0.8).epsilon(1e-12));
  CHECK(mx.variance == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("uncertainty product for harmonic states is one") {
  const auto h = ModelParams::harmonic();
  for (double mag : {0.0, 0.3, 1.0, 2.2}) {
    const FockVector psi = build_docs(CoherentStateSpec::docs(h, std::polar(mag, 0.7)));
    const auto d = normalized_uncertainty(psi, harmonic_x_matrix(psi.dim() + 1), harmonic_p_matrix(psi.dim() + 1));
    REQUIRE(d.has_value());
    CHECK(std::abs(*d - 1.0) < 1e-10);
  }
}

TEST_CASE("undefined normalization when the commutator vanishes") {
  const QuadOperator x = harmonic_x_matrix(4);
  QuadOperator zero = x;
  zero.matrix.setZero();
  CHECK_FALSE(normalized_uncertainty(FockVector::number_state(1, 4), x, zero).has_value());
}

TEST_CASE("commutator operator agrees with the expectation formula") {
  const auto morse = ModelParams::morse(22);
  const QuadOperator x = morse_x_matrix(morse);
  const QuadOperator p = morse_p_matrix(morse);
  const QuadOperator c = commutator(x, p);
  CHECK(c.label == OperatorLabel::Commutator);
  const FockVector psi = build_docs(CoherentStateSpec::docs(morse, std::polar(0.6, 0.2))).resized(24);
  const Complex direct = psi.amplitudes().dot(c.matrix * psi.amplitudes());
  CHECK(std::abs(direct - commutator_expectation(x, p, psi)) < 1e-12);
}

TEST_CASE("Morse DOCS moments at t = 0 against the frozen transcription") {
  const auto morse = ModelParams::morse(22);
  const QuadOperator x = morse_x_matrix(morse);
  const QuadOperator p = morse_p_matrix(morse);
  struct Row {
    double target, alpha, x_mean, var_x, var_p, delta;
  };
  const Row rows[] = {
      {0.2, 0.45261034612362594, 0.8000698348923446, 0.5365766456317601, 0.3642539764481274, 1.040082017061248},
      {2.0, 1.441256495135326, 2.4924570076402555, 1.1018338987220408, 0.1637767499435838, 1.20169124129056},
      {4.0, 2.0545710523163776, 3.928183887170224, 1.7586756168783868, 0.0810336783102827, 1.482740500583531},
  };
  for (const auto& r : rows) {
    CAPTURE(r.target);
    const double alpha = invert_alpha(morse, StateKind::Docs, r.target);
    CHECK(alpha == doctest::Approx(r.alpha).epsilon(1e-9));
    const auto u = uncertainty_report(build_docs(CoherentStateSpec::docs(morse, alpha)), x, p);
    CHECK(u.x.mean == doctest::Approx(r.x_mean).epsilon(1e-9));
    CHECK(u.x.variance == doctest::Approx(r.var_x).epsilon(1e-9));
    CHECK(u.p.variance == doctest::Approx(r.var_p).epsilon(1e-9));
    CHECK(*u.delta_xp == doctest::Approx(r.delta).epsilon(1e-9));
  }
  // Dispersion grows with <n>; squeezing of p_D is present.
  CHECK(rows[2].delta > rows[0].delta);
  CHECK(rows[0].var_p < 0.5);
}

TEST_CASE("variances are non-negative and obey Robertson") {
  const auto morse = ModelParams::morse(22);
  const QuadOperator x = morse_x_matrix(morse);
  const QuadOperator p = morse_p_matrix(morse);
  for (double mag = 0.0; mag < 3.0; mag += 0.25) {
    for (double phase : {0.0, 1.0, 2.5}) {
      for (StateKind kind : {StateKind::Aocs, StateKind::Docs}) {
        const CoherentStateSpec spec{kind, morse, std::polar(mag, phase), Truncation::bound_only(), true};
        const auto u = uncertainty_report(build_state(spec).state, x, p);
        CHECK(u.x.variance >= -1e-10);
        CHECK(u.p.variance >= -1e-10);
        REQUIRE(u.delta_xp.has_value());
        CHECK(*u.delta_xp >= 1.0 - 1e-8);
      }
    }
  }
}
