#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fdcs/operators.hpp"
#include "fdcs/run_config.hpp"

namespace fdcs {

using Cell = std::variant<double, long long, std::string>;

/// Column-oriented result of one command.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Extra key/value pairs written as header comments (CSV) or under "meta" (JSON).
  std::vector<std::pair<std::string, std::string>> meta;
  /// False when a verification check failed.
  bool ok = true;
};

Table cmd_spectrum(const RunConfig& config);
Table cmd_state(const RunConfig& config);
Table cmd_evolve(const RunConfig& config);
Table cmd_scan_alpha(const RunConfig& config);
Table cmd_verify(const RunConfig& config);

/// Validates the config and dispatches on config.task.
Table run_task(const RunConfig& config);

/// CSV or JSON text, with the config hash and truncation flags in the header.
std::string render(const Table& table, const RunConfig& config);

/// Writes render() to config.output.path via a temporary file and rename,
/// or to stdout when the path is empty.
void write_output(const Table& table, const RunConfig& config);

/// Coordinate and momentum observables used by evolve / scan-alpha for a state
/// of dimension state_dim. Throws DomainError for the trigonometric well.
std::pair<QuadOperator, QuadOperator> observables_for(const ModelParams& model, std::size_t state_dim);

}  // namespace fdcs
