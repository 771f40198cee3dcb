// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fdcs/coherent_states.hpp"
#include "fdcs/dynamics.hpp"
#include "fdcs/fd_oracle.hpp"
#include "fdcs/morse_observables.hpp"
#include "fdcs/mpt_observables.hpp"
#include "fdcs/operators.hpp"

using namespace fdcs;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [miss: " << what << "]";
    }
  }
};

double max_deviation(const FockVector& a, const FockVector& b) {
  const std::size_t d = std::max(a.dim(), b.dim());
  return (a.resized(d).amplitudes() - b.resized(d).amplitudes()).cwiseAbs().maxCoeff();
}

double spectral_error(const ModelParams& model, std::size_t top) {
  const Eigen::VectorXd fd = fd_spectrum(potential_for(model), top + 1);
  double worst = 0.0;
  for (std::size_t n = 0; n <= top; ++n) {
    const double e = energy(model, n);
    worst = std::max(worst, std::abs(fd(static_cast<Eigen::Index>(n)) - e) / std::abs(e));
  }
  return worst;
}

Outcome spectral_fidelity() {
  Outcome o;
  const double morse = spectral_error(ModelParams::morse(22), 10);
  const double mpt = spectral_error(ModelParams::modified_pt(10), 7);
  const double tpt = spectral_error(ModelParams::trig_pt(2.0), 7);
  o.detail << "max rel err morse(n<=10)=" << morse << " mpt(n<=7)=" << mpt << " tpt(n<=7)=" << tpt;
  o.require(morse < 1e-3, "morse < 1e-3");
  o.require(mpt < 1e-4, "mpt < 1e-4");
  o.require(tpt < 1e-4, "tpt < 1e-4");
  return o;
}

Outcome docs_oracle_equivalence() {
  Outcome o;
  for (const auto& model : {ModelParams::morse(22), ModelParams::modified_pt(10)}) {
    const std::size_t block = *invariant_dim(model);
    double worst = 0.0;
    for (double mag : {0.1, 0.5, 1.0, 2.0}) {
      CoherentStateSpec spec = CoherentStateSpec::docs(model, mag);
      spec.truncation = Truncation::full_block();
      spec.renormalize = false;
      worst = std::max(worst, max_deviation(build_docs(spec), docs_exponential_oracle(model, mag, block)));
    }
    o.detail << model.id() << " dim " << block << " max dev=" << worst << "; ";
    o.require(worst < 1e-8, model.id() + " < 1e-8");
  }
  return o;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

Outcome figure_ranges() {
  Outcome o;
  const auto morse = ModelParams::morse(22);
  const QuadOperator x = morse_x_matrix(morse);
  const QuadOperator p = morse_p_matrix(morse);

  const FockVector low = build_docs(CoherentStateSpec::docs(morse, invert_alpha(morse, StateKind::Docs, 0.2)));
  const auto u = uncertainty_report(low, x, p);
  o.detail << "<n>=0.2 t=0 var_x=" << u.x.variance << " var_p=" << u.p.variance << "; ";
  o.require(u.x.variance >= 0.3 && u.x.variance <= 0.9, "<n>=0.2 var_x in [0.3,0.9]");
  o.require(u.p.variance >= 0.3 && u.p.variance <= 0.9, "<n>=0.2 var_p in [0.3,0.9]");

  struct Case {
    double target, lo, hi;
  };
  for (const Case c : {Case{2.0, 0.2, 4.8}, Case{4.0, 0.1, 10.0}}) {
    const double alpha = invert_alpha(morse, StateKind::Docs, c.target);
    const TimeSeries ts = trajectory(CoherentStateSpec::docs(morse, alpha), x, p, default_time_grid(morse));
    Range r;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      r.add(ts.var_x[i]);
      r.add(ts.var_p[i]);
    }
    o.detail << "<n>=" << c.target << " variances in [" << r.lo << ", " << r.hi << "] vs [" << c.lo << ", " << c.hi
             << "]; ";
    std::ostringstream what;
    what << "<n>=" << c.target << " within [" << c.lo << "," << c.hi << "]";
    o.require(r.lo >= c.lo && r.hi <= c.hi, what.str());
  }
  return o;
}

Outcome minimum_uncertainty_onset() {
  Outcome o;
  for (const auto& model : {ModelParams::morse(22), ModelParams::modified_pt(10)}) {
    const bool is_morse = model.kind() == ModelKind::Morse;
    const QuadOperator x = is_morse ? morse_x_matrix(model) : mpt_x_matrix(model);
    const QuadOperator p = is_morse ? morse_p_matrix(model) : mpt_p_matrix(model);
    const auto delta_at = [&](double mag) {
      return *uncertainty_report(build_docs(CoherentStateSpec::docs(model, mag)), x, p).delta_xp;
    };
    const double onset = delta_at(1e-6);
    o.detail << model.id() << " delta(|alpha|->0)=" << onset << "; ";
    o.require(std::abs(onset - 1.0) < 1e-3, model.id() + " onset within 1e-3");
    if (is_morse) {
      // Default scan range of the scan-alpha command.
      const double alpha_max = 0.28 * docs_alpha_pole(model);
      double previous = -std::numeric_limits<double>::infinity();
      bool monotone = true;
      for (int i = 0; i <= 100; ++i) {
        const double d = delta_at(alpha_max * i / 100.0);
        monotone = monotone && d >= previous;
        previous = d;
      }
      o.detail << "morse scan to |alpha|=" << alpha_max << " monotone=" << (monotone ? "yes" : "no") << "; ";
      o.require(monotone, "morse delta nondecreasing");
    }
  }
  return o;
}

Outcome property_suite() {
  Outcome o;
  const auto morse = ModelParams::morse(22);
  const auto mpt = ModelParams::modified_pt(10);
  double herm = 0.0;
  for (std::size_t d = 1; d <= 45; ++d) {
    herm = std::max({herm, morse_x_matrix(morse, d).hermiticity_defect(), morse_p_matrix(morse, d).hermiticity_defect()});
  }
  const MptObservables tables(mpt);
  herm = std::max({herm, tables.x_matrix().hermiticity_defect(), tables.p_matrix().hermiticity_defect()});
  o.detail << "hermiticity=" << herm << " ";
  o.require(herm < 1e-12, "hermiticity");

  double norm_drift = 0.0;
  double n_drift = 0.0;
  double min_delta = std::numeric_limits<double>::infinity();
  double heis = 0.0;
  double revival = 0.0;
  const double period = std::numbers::pi / (morse.omega() * morse.deformation_scale());
  for (const auto& model : {morse, mpt}) {
    const bool is_morse = model.kind() == ModelKind::Morse;
    const QuadOperator x = is_morse ? morse_x_matrix(model) : tables.x_matrix();
    const QuadOperator p = is_morse ? morse_p_matrix(model) : tables.p_matrix();
    const TimeGrid grid = default_time_grid(model);
    for (double target : {0.2, 2.0, 4.0}) {
      for (StateKind kind : {StateKind::Docs, StateKind::Aocs}) {
        const double alpha = invert_alpha(model, kind, target);
        const CoherentStateSpec spec{kind, model, std::polar(alpha, 0.3), default_truncation(model), true};
        const FockVector psi = build_state(spec).state;
        const TimeSeries ts = trajectory(psi, model, x, p, grid);
        for (std::size_t i = 0; i < ts.size(); ++i) {
          norm_drift = std::max(norm_drift, std::abs(ts.norm[i] - ts.norm[0]));
          n_drift = std::max(n_drift, std::abs(ts.mean_n[i] - ts.mean_n[0]));
          min_delta = std::min(min_delta, ts.delta_xp[i]);
        }
        if (is_morse) {
          for (std::size_t i = 0; i < grid.count; i += 16) {
            const double t = grid.at(i);
            heis = std::max(heis, heisenberg_ladder_check(model, psi, t));
            revival = std::max(revival, std::abs(std::abs(ladder_expectation_schrodinger(model, psi, t + period)) -
                                                 std::abs(ladder_expectation_schrodinger(model, psi, t))));
          }
        }
      }
    }
  }
  o.detail << "norm drift=" << norm_drift << " <n> drift=" << n_drift << " min delta=" << min_delta;
  o.require(norm_drift < 1e-12, "unitarity");
  o.require(n_drift < 1e-12, "<n> conservation");
  o.require(min_delta >= 1.0 - 1e-8, "Robertson bound");

  double parity = 0.0;
  for (std::size_t m = 0; m < tables.levels(); ++m) {
    for (std::size_t n = 0; n < tables.levels(); ++n) {
      if ((m + n) % 2 == 0) parity = std::max({parity, std::abs(tables.x_element(m, n)), std::abs(tables.p_element(m, n))});
    }
  }
  const auto fd = fd_element_tables(potential_for(mpt), tables.levels());
  for (Eigen::Index m = 0; m < fd.x.rows(); ++m) {
    for (Eigen::Index n = 0; n < fd.x.cols(); ++n) {
      if ((m + n) % 2 == 0) parity = std::max({parity, std::abs(fd.x(m, n)), m == n ? 0.0 : std::abs(fd.p(m, n))});
    }
  }
  o.detail << " parity=" << parity << " heisenberg=" << heis << " revival=" << revival;
  o.require(parity < 1e-8, "MPT parity zeros");
  o.require(heis < 1e-10, "Heisenberg vs Schrodinger");
  o.require(revival < 1e-10, "Morse revival");
  return o;
}

Outcome harmonic_degeneration() {
  Outcome o;
  const auto h = ModelParams::harmonic();
  double worst = 0.0;
  for (const Complex alpha : {Complex(0.5, 0.0), std::polar(1.0, 0.8), std::polar(2.0, -2.1)}) {
    const FockVector a = build_aocs(CoherentStateSpec::aocs(h, alpha));
    const FockVector d = build_docs(CoherentStateSpec::docs(h, alpha));
    worst = std::max(worst, max_deviation(a, d));
    const auto p = occupation_distribution(d);
    const double nbar = std::norm(alpha);
    for (std::size_t n = 0; n < p.size(); ++n) {
      const double poisson = std::exp(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0));
      worst = std::max(worst, std::abs(p[n] - poisson));
    }
    const auto delta = normalized_uncertainty(d, harmonic_x_matrix(d.dim() + 1), harmonic_p_matrix(d.dim() + 1));
    worst = std::max(worst, std::abs(delta.value_or(0.0) - 1.0));
    for (const Complex beta : {Complex(1.0, 0.0), std::polar(0.3, 2.0)}) {
      const FockVector b = build_docs(CoherentStateSpec::docs(h, beta));
      const Complex expected = std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(alpha) * beta);
      worst = std::max(worst, std::abs(overlap(d, b) - expected));
    }
  }
  o.detail << "max deviation (AOCS=DOCS, Poisson, overlap, delta=1)=" << worst;
  o.require(worst < 1e-10, "1e-10");
  return o;
}

Outcome trajectory_proximity() {
  Outcome o;
  const auto morse = ModelParams::morse(22);
  const QuadOperator x = morse_x_matrix(morse);
  const QuadOperator p = morse_p_matrix(morse);
  const TimeGrid grid = default_time_grid(morse);
  const TimeSeries d = trajectory(CoherentStateSpec::docs(morse, invert_alpha(morse, StateKind::Docs, 2.0)), x, p, grid);
  const TimeSeries a = trajectory(CoherentStateSpec::aocs(morse, invert_alpha(morse, StateKind::Aocs, 2.0)), x, p, grid);
  double sup = 0.0;
  double radius = 0.0;
  for (std::size_t i = 0; i < grid.count; ++i) {
    sup = std::max(sup, std::hypot(a.x_mean[i] - d.x_mean[i], a.p_mean[i] - d.p_mean[i]));
    radius = std::max(radius, std::hypot(d.x_mean[i], d.p_mean[i]));
  }
  o.detail << "sup distance=" << sup << " DOCS radius=" << radius << " ratio=" << sup / radius;
  o.require(sup < 0.1 * radius, "< 10% of radius");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 spectral fidelity", spectral_fidelity},
      {"AC2 DOCS oracle equivalence", docs_oracle_equivalence},
      {"AC3 Morse variance ranges", figure_ranges},
      {"AC4 minimum-uncertainty onset", minimum_uncertainty_onset},
      {"AC5 property suite", property_suite},
      {"AC6 harmonic degeneration", harmonic_degeneration},
      {"AC7 AOCS/DOCS trajectory proximity", trajectory_proximity},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
