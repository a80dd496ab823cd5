#pragma once

// Subcommands of the gti front end. Each writes a JSON report to `out`,
// diagnostics to `err`, and returns the process exit code:
// 0 pass, 1 fail, 2 parse / structure / certification error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gti/analysis.hpp"

namespace gti::cli {

struct RunOptions {
  std::optional<double> tolerance;
  bool oracle = false;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultOracleCap;
  std::size_t top_k = 10;
  std::optional<std::string> output;
  bool force = false;
  bool dump_table = false;
  /// Echoed verbatim into the report.
  std::string command_line;
};

enum class CheckKind { kDuality, kOrthogonality, kParseval };
enum class MultiplexMode { kEncode, kDecode, kRoundtrip };

int run_info(const std::string& config, const RunOptions& options, std::ostream& out, std::ostream& err);

/// `analysis_config` defaults to `synthesis_config`; parseval ignores it.
int run_check(CheckKind kind, const std::string& synthesis_config, const std::optional<std::string>& analysis_config,
              const RunOptions& options, std::ostream& out, std::ostream& err);

/// The dual-window config goes to options.output when set, and is always
/// embedded in the report.
int run_gabor_dual(const std::string& config, const RunOptions& options, std::ostream& out, std::ostream& err);

/// `input` holds signals (encode, roundtrip) or coefficients (decode). Without
/// it, encode and roundtrip draw random signals from options.seed.
int run_multiplex(MultiplexMode mode, const std::string& synthesis_config, const std::string& analysis_config,
                  const std::optional<std::string>& input, const RunOptions& options, std::ostream& out,
                  std::ostream& err);

}  // namespace gti::cli
