#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "esd/channels.hpp"

namespace esd::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitVerifyFailed = 3 };

enum class Spacing { Linear, Geometric };
enum class Format { Text, Csv, Json };

struct RunSpec {
  std::string command;
  std::string state = "bell-psi+";  // preset name or path to a .json state
  NoiseRates rates{1.0, 1.0, 1.0, 1.0};
  ChannelKind kind = ChannelKind::Composite;
  double t_max = 5.0;
  std::size_t n_points = 101;
  Spacing spacing = Spacing::Linear;
  std::optional<std::string> out;  // stdout when empty
  std::uint64_t seed = 42;
  Format format = Format::Csv;

  // verify
  std::size_t n_samples = 200;
  std::optional<std::string> scenario;

  // sweep: Gamma1 and Gamma2 values shared by both parties
  std::vector<double> gamma1_values;
  std::vector<double> gamma2_values;
};

/// n = 1 gives {0}. Geometric grids are 0 followed by n - 1 points spaced
/// evenly in log between 1e-6 t_max and t_max. Throws BadGrid.
std::vector<double> time_grid(double t_max, std::size_t n, Spacing spacing);

// Each command writes its report to `out` and returns the process exit code.
// Library errors propagate to the caller.
int cmd_evolve(const RunSpec& spec, std::ostream& out);
int cmd_classify(const RunSpec& spec, std::ostream& out);
int cmd_esd_time(const RunSpec& spec, std::ostream& out);
/// `composite` replaces the composite channel under test (mutation checks).
int cmd_verify(const RunSpec& spec, std::ostream& out, const CompositeBuilder& composite = kraus_composite);
int cmd_sweep(const RunSpec& spec, std::ostream& out);

/// Parses argv, dispatches, honours --out and maps errors to exit codes with
/// a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace esd::cli
