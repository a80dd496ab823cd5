#pragma once

// JSON system configurations, signal files and coefficient files.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "gti/analysis.hpp"
#include "gti/error.hpp"
#include "gti/systems.hpp"

namespace gti::cli {

using nlohmann::json;

/// Parse failure; the message starts with the offending field path.
class ConfigError : public gti::Error {
 public:
  using gti::Error::Error;
};

enum class StructuredKind { kNone, kGabor, kWavelet, kWavePacket };

struct LoadedConfig {
  SuperSystemDescriptor system;
  StructuredKind kind = StructuredKind::kNone;
  /// Set for gabor / wavelet / wavepacket configs (Gabor and wavelet are stored in
  /// their wave-packet form).
  std::optional<WavePacketSpec> structured;
};

struct ParseOptions {
  /// Seed for bare "random" window shorthands. "random:<k>" ignores it.
  std::uint64_t seed = 0;
};

LoadedConfig parse_config(const json& doc, const ParseOptions& options = {});
LoadedConfig load_config(const std::string& path, const ParseOptions& options = {});

/// Expanded layer form with explicit re/im arrays.
json serialize_system(const SuperSystemDescriptor& system);
json serialize_gabor(const GaborSpec& spec);

json serialize_window(const Signal& w);
/// Accepts {re, im?} objects and the shorthands "delta", "constant",
/// "indicator:<gens>", "random", "random:<seed>".
Signal parse_window(const GroupSpec& group, const json& node, const std::string& where, std::uint64_t seed = 0);

/// Deterministic complex noise in [-1, 1) + i[-1, 1), independent of the stdlib.
Signal random_window(const GroupSpec& group, std::uint64_t seed);

/// {"group": [...], "channels": [window, ...]}
json serialize_signals(const SuperSignal& f);
SuperSignal parse_signals(const json& doc);

/// {"layers": [{"values": [window-like per generator]}]}; covolumes and weights
/// are taken from the system on read.
json serialize_coefficients(const CoefficientMap& c);
CoefficientMap parse_coefficients(const SuperSystemDescriptor& system, const json& doc);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& doc);

/// FNV-1a 64 over the compact dump.
std::string digest(const json& doc);

/// Same group, channels, subgroups (with generator lists), weights and window samples.
bool identical(const SuperSystemDescriptor& a, const SuperSystemDescriptor& b);

}  // namespace gti::cli
