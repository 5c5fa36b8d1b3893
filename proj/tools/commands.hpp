#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cylradon/quadrature.hpp"

namespace cylradon::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;

/// Command-line flags; each one set here overrides the config file.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<int> modes;
  std::optional<int> quad_nodes;
  std::optional<unsigned> seed;
  std::optional<std::string> suite;
};

/// Inclusive range sampled at `count` evenly spaced points.
struct Range {
  double min = 0;
  double max = 0;
  int count = 0;
};

struct Config {
  std::string command;
  std::string phantom;    ///< phantom id used as the input field
  std::string input;      ///< CSV field used as the input when no phantom is named
  std::string reference;  ///< phantom id the output is compared with; defaults to `phantom`
  int modes = 8;
  unsigned seed = 1;
  QuadratureSpec quad;
  bool quad_given = false;
  int theta_count = 0;  ///< angular counts; 0 means the command default
  int s_count = 0;
  std::optional<Range> rho, t;
  std::optional<std::string> suite;
  std::filesystem::path out_dir = ".";
};

/// Reads the JSON config named in the overrides (if any) and applies the flags.
/// Throws ConfigError on unknown keys, wrong types or invalid values.
Config load_config(const std::string& command, const Overrides& o);

/// Runs one subcommand and returns its exit code; failures are reported on stderr.
int run(const std::string& command, const Overrides& o);

}  // namespace cylradon::cli
