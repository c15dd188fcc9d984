#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "pbrl/cartpole.hpp"
#include "pbrl/pbrl_agent.hpp"
#include "pbrl/q_agent.hpp"

namespace pbrl {

enum class AgentKind { kPbrl, kQLearning };

enum class SourceKind { kChaosFile, kSyntheticChaos, kSurrogate, kNormal, kUniform };

/// Textual forms: "uniform", "normal", "synthetic-chaos", "chaos-file:PATH",
/// "surrogate-of:INNER" (INNER is any other source spec).
struct SourceSpec {
  SourceKind kind = SourceKind::kSyntheticChaos;
  std::string path;                    // chaos-file only
  std::shared_ptr<SourceSpec> inner;   // surrogate only

  static SourceSpec parse(const std::string& text);
  std::string to_string() const;

  /// True when decisions walk a materialized series with a strided cursor
  /// (file, synthetic chaos, surrogate); false for the fresh-draw PRNG kinds.
  bool series_backed() const;
};

/// Everything a simulation run depends on. A serialized RunConfig is the run
/// manifest: replaying it reproduces all artifacts byte-identically.
struct RunConfig {
  AgentKind agent = AgentKind::kPbrl;
  SourceSpec source{};

  int stride = 5;       // samples consumed per decision along a series
  int rounds = 200;     // independent learning rounds
  int episodes = 1000;  // episodes per round
  int max_steps = 150;  // success cap per episode
  std::uint64_t base_seed = 1;
  int jobs = 1;         // worker threads for rounds (0 = hardware concurrency)
  std::string out_dir = "pbrl_out";

  std::size_t series_length = 1000000;
  int chaos_lag = 5;         // negative-autocorrelation lag of synthetic chaos
  double normal_sigma = 40.0;
  double base_period_ps = 10.0;

  PbrlParams pbrl{};
  QParams q{};
  EnvConfig env{};

  int fom_threshold = 145;
};

/// Ordered key=value view of a config; `#` starts a comment in files.
using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_config_text(std::istream& in);
KeyValueMap load_config_file(const std::string& path);

/// Builds a RunConfig from defaults + overrides. Unknown keys and malformed
/// values throw std::invalid_argument naming the offending key. Agent
/// parameters left unset default to the tuned set matching the source kind.
RunConfig resolve_config(const KeyValueMap& overrides);

/// Full resolved key=value manifest, one key per line, fixed order.
std::string serialize_config(const RunConfig& config);

/// Tuned threshold-agent parameters for a source kind (delta_th and a0 scale
/// with the signal distribution; gamma is shared).
PbrlParams default_pbrl_params(const SourceSpec& source);

}  // namespace pbrl
