#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rgstar/mcmc.hpp"

namespace rgstar {

/// Invalid configuration; the message starts with `<origin>:<line>:`.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedConfig {
  ChainConfig chain;
  /// Enumerate the state space and report TV distance against q in the summary.
  bool oracle = false;
  std::optional<std::string> initial_snapshot;
};

/// Parses a JSON run configuration. Keys: lattice {d, a}, N, L or lengths, mode
/// {fixed_k} or {extended: [p_1..p_Q]}, feeler, energy {kind, epsilon, offset},
/// steps, seed, snapshot_every, stats_every, implementation, oracle, initial_snapshot.
/// Unknown keys are errors.
LoadedConfig parse_config(const std::string& text, const std::string& origin = "config");
LoadedConfig load_config(const std::filesystem::path& path);

struct RunManifest {
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  int chains = 1;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

/// One seed per chain: the base seed itself for a single chain, derived streams otherwise.
std::vector<std::uint64_t> chain_seeds(std::uint64_t base, int chains);

/// Writes to a temporary sibling, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Runs every chain (one thread each) and writes stats.csv, snapshot-<step>.txt and
/// summary.json; with several chains each gets a chain-<i>/ directory and summary.json
/// sits at the top. Returns the summary document.
nlohmann::json run_manifest(const LoadedConfig& config, const RunManifest& manifest);

/// `enumerate` output: a header line, then one state per line with polymers separated by ';'.
std::string dump_state_space(const LoadedConfig& config);

/// Command-line entry point shared by the executable and the integration tests.
int cli_main(int argc, char** argv);

}  // namespace rgstar
