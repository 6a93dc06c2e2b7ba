#pragma once

// Experiment drivers behind the mvlab executable.
//
// Exit codes: 0 when the outcome agrees with the theory (for example a
// simplex passes, a non-simplex is refuted), 1 when it does not, 2 for usage
// errors and for operation errors, which are also written into the report.

#include "mvlab/cli/document.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mvlab::cli {

struct BodySource {
  enum class Kind { File, Generator } kind = Kind::Generator;
  std::string value;  // path or generator spec
  std::string label() const;
};

enum class Format { Json, Csv };

struct ExperimentConfig {
  std::string command;
  std::vector<std::string> argv;  // echoed into the report
  std::vector<BodySource> bodies;
  std::optional<std::size_t> r;
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  std::size_t dim = 3;  // af-fuzz
  std::optional<std::string> direction;  // strict: cap normal, "1,0"
  std::string depth = "1/10";            // strict
  std::optional<std::string> v_direction;
  std::optional<std::string> out;
  Format format = Format::Json;
};

struct CsvRow {
  std::string key;
  std::string exact;
  std::string decimal;  // empty unless the value is a rational
};

struct CommandResult {
  int exit_code = 0;
  Json report;
  std::vector<CsvRow> rows;  // flat view of report["results"]
};

const std::vector<std::string>& command_names();

CommandResult run_command(const ExperimentConfig& config);

/// CSV rendering of the results. The decimal column is lossy.
std::string to_csv(const CommandResult& result);

/// Whole CLI: parse args, run, write the report to --out or `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvlab::cli
