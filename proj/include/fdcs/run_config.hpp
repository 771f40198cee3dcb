#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fdcs/coherent_states.hpp"
#include "fdcs/model.hpp"

namespace fdcs {

struct ModelBlock {
  std::string variant = "morse";  ///< harmonic | morse | mpt | tpt
  int n_bound = 22;
  int s = 10;
  double lambda = 2.0;
  std::optional<double> omega;
  double a = 1.0;
  double mu = 1.0;
  double hbar = 1.0;
};

struct StateBlock {
  std::string kind = "docs";  ///< aocs | docs
  std::optional<double> alpha_abs;
  double alpha_phase = 0.0;
  std::optional<double> target_mean_n;
  /// bound | block | adaptive; empty selects the model default.
  std::string truncation;
  bool renormalize = true;
};

struct GridBlock {
  std::optional<double> t_max;
  std::size_t t_steps = 4096;
  std::optional<double> alpha_max;
  std::size_t alpha_steps = 101;
  /// Rows for spectra of unbounded models.
  std::size_t levels = 8;
};

struct OutputBlock {
  std::string path;  ///< empty writes to stdout
  std::string format = "csv";
  int precision = 12;
};

struct RunConfig {
  std::string task = "spectrum";  ///< spectrum | state | evolve | scan-alpha | verify
  ModelBlock model;
  StateBlock state;
  GridBlock grid;
  OutputBlock output;

  /// Throws DomainError describing the first inconsistency.
  void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Keys sorted, shortest round-trip doubles.
std::string canonical_json(const RunConfig& c);

/// 64-bit FNV-1a of canonical_json, as 16 hex digits.
std::string config_hash(const RunConfig& c);

ModelParams make_model(const ModelBlock& m);
Truncation make_truncation(const StateBlock& s, const ModelParams& model);
StateKind make_state_kind(const StateBlock& s);

}  // namespace fdcs
