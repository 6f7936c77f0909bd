#pragma once
// INI-style experiment configuration: [network], [channel], [sweep], [sim]
// sections.  The full schema is documented in README.md and echoed (resolved,
// with defaults applied) into every CSV artifact for provenance.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aggrnet/simulator.hpp"
#include "aggrnet/tables.hpp"

namespace aggrnet {

enum class Analysis {
  kThroughput,
  kStability,
  kDelayClosed,
  kDelayBvp,
  kSimulate,
};

struct SweepAxis {
  std::string parameter;  // t | gamma | m | alpha | eta
  std::vector<double> values;
};

struct ExperimentSpec {
  std::string scenario;  // empty = generic sweep; or table1|fig2|fig3-6|fig7
  NetworkConfig network;
  SimConfig sim;
  std::vector<SweepAxis> sweep;
  std::set<Analysis> analyses;
  std::string out_dir = ".";

  // Resolved key=value view of everything above (for provenance echoing).
  std::map<std::string, std::string> resolved;
};

// Parse a config file.  Unknown keys, bad values, and malformed lines raise
// ConfigError with file/line context.
ExperimentSpec load_config(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& origin = "<memory>");

// FNV-1a hash of the resolved configuration, for the CSV provenance header.
std::string config_hash(const ExperimentSpec& spec);

// Applies one sweep-axis parameter value to a network config copy.
void apply_parameter(NetworkConfig* cfg, const std::string& parameter,
                     double value);

}  // namespace aggrnet
