#include <charconv>
#include <cmath>
#include <sstream>

#include "kicked_top/cli.hpp"
#include "kicked_top/csv.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/version.hpp"

namespace kt::cli {

namespace {

double parse_double(std::string_view text, std::string_view field) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(std::string(field) + ": cannot parse '" + std::string(text) + "' as a number");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view field) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(std::string(field) + ": cannot parse '" + std::string(text) + "' as an integer");
  }
  return v;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::doqs: return "doqs";
    case Command::critical: return "critical";
    case Command::protocol: return "protocol";
    case Command::sweep: return "sweep";
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (Command c : {Command::spectrum, Command::doqs, Command::critical, Command::protocol,
                    Command::sweep}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("command: unknown subcommand '" + std::string(name) + "'");
}

SweepRange SweepRange::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw ConfigError("kappa-sweep: expected start:stop:step, got '" + std::string(text) + "'");
  }
  SweepRange r;
  r.start = parse_double(text.substr(0, first), "kappa-sweep");
  r.stop = parse_double(text.substr(first + 1, second - first - 1), "kappa-sweep");
  r.step = parse_double(text.substr(second + 1), "kappa-sweep");
  if (!(r.step > 0.0) || !(r.stop >= r.start) || !std::isfinite(r.start) || !std::isfinite(r.stop)) {
    throw ConfigError("kappa-sweep: need finite start <= stop and step > 0");
  }
  return r;
}

std::vector<double> SweepRange::values() const {
  const long count = static_cast<long>(std::ceil((stop - start) / step + 0.5));
  std::vector<double> v(count);
  for (long i = 0; i < count; ++i) v[i] = start + static_cast<double>(i) * step;
  return v;
}

std::string SweepRange::to_string() const {
  return csv::format(start) + ":" + csv::format(stop) + ":" + csv::format(step);
}

void RunConfig::validate() const {
  const double twice = 2.0 * j;
  if (!std::isfinite(j) || j <= 0.0 || std::abs(twice - std::round(twice)) > 1e-12) {
    throw ConfigError("j: must be a positive half-integer");
  }
  if (!std::isfinite(p)) throw ConfigError("p: must be finite");
  if (!std::isfinite(kappa)) throw ConfigError("kappa: must be finite");
  if (!std::isfinite(period) || period <= 0.0) throw ConfigError("T: must be positive");
  if (bins != 0 && bins < 2) throw ConfigError("bins: must be at least 2");
  if (n_max < 0) throw ConfigError("n-max: must be non-negative");
  if (!std::isfinite(sigma) || sigma <= 0.0) throw ConfigError("sigma: must be positive");
  if (steps < 0) throw ConfigError("K: must be non-negative");
  if (points < 2) throw ConfigError("points: must be at least 2");
  if (branch != "S-m" && branch != "S-M" && branch != "both") {
    throw ConfigError("branch: must be one of S-m, S-M, both");
  }
  if (command == Command::protocol && !(kappa > p)) {
    throw ConfigError("kappa: the protocol needs kappa > p");
  }
  if (command == Command::sweep && !kappa_sweep) {
    throw ConfigError("kappa-sweep: required by the sweep command");
  }
  if (output_path.empty()) throw ConfigError("out: must not be empty");
}

std::vector<std::pair<std::string, std::string>> RunConfig::metadata() const {
  std::vector<std::pair<std::string, std::string>> kv{
      {"version", kVersion},
      {"command", to_string(command)},
      {"j", csv::format(j)},
      {"p", csv::format(p)},
      {"kappa", csv::format(kappa)},
      {"T", csv::format(period)},
      {"bins", csv::format(bins)},
      {"n_max", csv::format(n_max)},
      {"sigma", csv::format(sigma)},
      {"K", csv::format(steps)},
      {"points", csv::format(points)},
      {"branch", branch},
      {"kappa_sweep", kappa_sweep ? kappa_sweep->to_string() : std::string("none")},
      {"out", output_path},
  };
  return kv;
}

RunConfig RunConfig::from_metadata(std::string_view csv_text) {
  RunConfig cfg;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(2, eq - 2);
    const std::string value = line.substr(eq + 1);
    if (key == "command") cfg.command = command_from_string(value);
    else if (key == "j") cfg.j = parse_double(value, key);
    else if (key == "p") cfg.p = parse_double(value, key);
    else if (key == "kappa") cfg.kappa = parse_double(value, key);
    else if (key == "T") cfg.period = parse_double(value, key);
    else if (key == "bins") cfg.bins = parse_int(value, key);
    else if (key == "n_max") cfg.n_max = parse_int(value, key);
    else if (key == "sigma") cfg.sigma = parse_double(value, key);
    else if (key == "K") cfg.steps = parse_int(value, key);
    else if (key == "points") cfg.points = parse_int(value, key);
    else if (key == "branch") cfg.branch = value;
    else if (key == "kappa_sweep") {
      if (value == "none") cfg.kappa_sweep.reset();
      else cfg.kappa_sweep = SweepRange::parse(value);
    } else if (key == "out") cfg.output_path = value;
  }
  cfg.validate();
  return cfg;
}

}  // namespace kt::cli
