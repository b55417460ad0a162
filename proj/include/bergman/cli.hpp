#pragma once

// Config-driven front end behind the bergkern executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/json_io.hpp"
#include "bergman/kernel_expr.hpp"
#include "bergman/transforms.hpp"
#include "bergman/zero_lab.hpp"

namespace bergman::cli {

enum class Command { Eval, Formula, Verify, OracleCompare, Zeros, Ratio, Track, Hartogs };

std::string command_name(Command c);
/// Accepts both "oracle-compare" and "oracle_compare".
std::optional<Command> parse_command(const std::string& s);

struct EvalParams {
  std::vector<std::pair<Complex, Complex>> points;
};
struct FormulaParams {
  FormulaFormat format = FormulaFormat::LaTeX;
};
struct VerifyParams {
  Complex point{0.3, 0.2};
  int radial_nodes = 64;
  int angular_nodes = 128;
  int max_power = 2;  // f = 1, z, ..., z^max_power
};
struct OracleParams {
  int degree = 60;
  int pairs = 200;
  double radius = 0.7;
  std::uint64_t seed = 42;
};
struct ZerosParams {
  /// Scan this slice; when absent, search the w_grid slices in order.
  std::optional<Complex> w0;
  GridSpec grid;
  GridSpec w_grid{{-1.0, -1.0}, {1.0, 1.0}, 4};
  ScanOptions scan;
};
struct RatioParams {
  Complex z{0.0, 0.0};
  Complex direction{1.0, 0.0};
  int j_first = 3;
  int j_last = 10;
};
struct TrackParams {
  /// Witness to track; found with a w_grid search when absent.
  std::optional<Complex> z0, w0;
  /// Defaults to i z0 / |z0|.
  std::optional<Complex> direction;
  int j_first = 3;
  int j_last = 10;
  GridSpec grid;
  GridSpec w_grid{{-1.0, -1.0}, {1.0, 1.0}, 4};
  TrackOptions track;
};
struct HartogsParams {
  GridSpec grid;
  GridSpec w_grid{{-1.0, -1.0}, {1.0, 1.0}, 4};
  ScanOptions scan;
};

using Params = std::variant<EvalParams, FormulaParams, VerifyParams, OracleParams, ZerosParams,
                            RatioParams, TrackParams, HartogsParams>;

struct RunConfig {
  Command command = Command::Eval;
  DomainSpec domain = DomainSpec::unit_disk();
  /// The weight, or the profile phi for the hartogs command.
  WeightSpec weight;
  AugmentMode mode = AugmentMode::Iterated;
  Params params;
};

/// Validates the whole document before anything is computed. Throws Error;
/// every failure here is a validation failure.
RunConfig parse_config(const Json& j);
/// Canonical form with all defaults spelled out; parse_config round-trips it.
Json config_to_json(const RunConfig& c);

struct RunOptions {
  std::optional<std::string> out_dir;
  bool svg = false;
};

/// Exit codes: 0 on success, 3 on a computation error (the error name and
/// message go to err).
int run(const RunConfig& c, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Whole pipeline from a config path: 2 on unreadable or invalid config.
/// expected fills in a missing command field and must match a present one;
/// seed, when given, overrides the config's seed field.
int run_file(const std::string& path, std::optional<Command> expected, const RunOptions& opts,
             std::optional<std::uint64_t> seed, bool dump_config, std::ostream& out,
             std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

}  // namespace bergman::cli
