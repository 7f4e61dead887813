#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kt::cli {

enum class Command { spectrum, doqs, critical, protocol, sweep };

std::string to_string(Command c);
Command command_from_string(std::string_view name);

/// Inclusive `start:stop:step` grid; the endpoint counts if within half a step.
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static SweepRange parse(std::string_view text);
  std::vector<double> values() const;
  std::string to_string() const;
};

struct RunConfig {
  Command command = Command::spectrum;
  double j = 40.0;
  double p = 0.1;
  double kappa = 0.2;
  double period = 1.0;
  int bins = 0;  // 0 selects 2(2j+1) - 1
  int n_max = 0;
  double sigma = 0.02;
  int steps = 700;
  int points = 40;
  std::string branch = "both";
  std::optional<SweepRange> kappa_sweep;
  std::string output_path = "-";

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Key/value pairs written as `# key=value` CSV header lines.
  std::vector<std::pair<std::string, std::string>> metadata() const;
  /// Rebuilds a config from the `#` header lines of a CSV produced by `run`.
  static RunConfig from_metadata(std::string_view csv_text);
};

/// Computes the CSV document (metadata header included) for a validated config.
std::string execute(const RunConfig& cfg, std::ostream& diagnostics);

/// Entry point. Exit codes: 0 success, 2 configuration error, 3 numerical error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kt::cli
