#pragma once

// Command-line front end. Options come from flags and, optionally, a flat
// `key = value` config file (same keys as the long flags, `#` comments);
// flags win over the file.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gic_region/boundary_tracer.hpp"
#include "gic_region/gic_core.hpp"

namespace gic {

enum class Command { Trace, Classify, SumRate, HkCompare, Oracle, ScsdDemo, KeyPoints };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Trace;
  std::optional<ChannelParams> params;  // absent only for scsd-demo
  std::size_t num_points = 200;
  std::size_t resolution = 201;
  std::optional<double> mu;
  std::uint64_t seed = 1;
  double delta = 1e-6;
  double rho = 0.5;
  double theta = 0.5;
  double power = 1.0;
  double noise = 1.0;
  std::size_t layers = 1;
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
};

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRegime = 3;
inline constexpr int kExitNumeric = 4;

/// Reads a flat key = value file. Throws ValidationError on malformed lines,
/// duplicate or unknown keys.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Builds a RunConfig from raw key/value pairs (command included under the
/// key "command"). Throws ValidationError.
RunConfig make_config(const std::map<std::string, std::string>& values);

/// Text of the artifact the command produces.
std::string render(const RunConfig& config);

/// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

/// Lower rows followed by the upper trace reversed, the shared endpoint once.
std::string trace_csv(const BoundaryTrace& lower, const BoundaryTrace& upper);

/// Full program: parse, run, write, map errors to exit codes with a single
/// `error <code>: <message>` line on `err`.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gic
