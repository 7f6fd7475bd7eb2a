#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rgstar/mcmc.hpp"
#include "rgstar/oracle.hpp"

// Measurements behind the verification suites. Each measure_* function returns raw
// statistics; thresholds are applied by run_suite() and, independently, by the
// acceptance test.

namespace rgstar {

struct GraphLawResult {
  std::string instance;
  std::size_t support = 0;
  double sum_error = 0.0;   // |sum of enumerated probabilities - 1|, exact arithmetic
  bool closed_form_agrees = false;  // branch probability equals the closed form for every graph
  std::size_t draws = 0;
  double max_z = 0.0;       // largest |count - n p| / sqrt(n p (1 - p)) over the support
  double p_value = 0.0;     // Pearson chi-square against the enumerated law
  std::size_t unknown = 0;  // generated graphs missing from the enumeration
  double seconds = 0.0;
};
/// Unconstrained generation on d=1 a=6 k=1, d=2 a=3 k=Q and d=1 a=6 with a two-point degree law.
std::vector<GraphLawResult> measure_graph_law(std::uint64_t seed, std::size_t draws);

struct CompatibleLawResult {
  std::string instance;
  std::size_t support = 0;
  double sum_error = 0.0;
  std::size_t eta_mismatches = 0;   // fixed law: prob_c != eta * prob_u (exact)
  std::size_t form_mismatches = 0;  // branch probability, closed or rewritten form, direct product disagree
  double seconds = 0.0;
};
std::vector<CompatibleLawResult> measure_compatible_law();

struct GrowthLawResult {
  std::size_t polymers = 0;
  std::size_t runs = 0;
  double max_z = 0.0;
  double sum_inverse_weight = 0.0;
  double failure_rate = 0.0;
  double closure_error = 0.0;  // |sum 1/W + failure rate - 1|
  // feeler 0 on an unconstrained polymer
  double l0_target = 0.0;
  double l0_frequency = 0.0;
  double l0_z = 0.0;
  double seconds = 0.0;
};
/// d=2, a=5, one blocking polymer, k=3, L=4, feeler 2.
GrowthLawResult measure_growth_law(std::uint64_t seed, std::size_t runs);

struct BalanceResult {
  int feeler = 0;
  std::string energy;
  std::size_t states = 0;
  BalanceReport report;
  double stationary_error = -1.0;  // max |pi - uniform| for the uniform energy, else -1
  double seconds = 0.0;
};
/// d=2, a=4, L=2, N=2, k=Q=4, feelers 0..2, uniform and contact energies.
std::vector<BalanceResult> measure_balance();

struct StationarityResult {
  std::string label;
  std::size_t states = 0;
  std::uint64_t steps = 0;
  double tv = 0.0;
  double construction_rate = 0.0;
  double acceptance_rate = 0.0;
  double seconds = 0.0;
};
/// d=2, a=4, L=3, N=2, feeler 1, uniform energy.
ChainConfig stationarity_benchmark(DegreeLaw law, Implementation implementation, std::uint64_t seed);
/// Runs cfg.steps steps and compares the per-step state histogram with the uniform law.
StationarityResult measure_stationarity(const ChainConfig& cfg, const std::string& label);

struct ExtendedAcceptanceResult {
  std::size_t tuples = 0;
  double max_difference = 0.0;
};
/// Random (q ratio, W_n, W_o) tuples; fixed-k acceptance against the degenerate extended law.
ExtendedAcceptanceResult measure_extended_acceptance(std::uint64_t seed, std::size_t tuples);

struct EntangledResult {
  std::uint64_t steps_each = 0;
  std::uint64_t thinning = 0;
  DistanceReport comparison;  // two-sample test on thinned naive vs entangled histograms
  std::uint64_t audited_steps = 0;
  std::uint64_t laziness_violations = 0;  // steps where assigned > completed graph size
  double seconds = 0.0;
};
EntangledResult measure_entangled_equivalence(std::uint64_t seed, std::uint64_t steps_each, std::uint64_t thinning);

struct IrreducibilityCase {
  std::string label;
  LatticeConfig lattice;
  int n = 0;
  int length = 0;
  bool expected_irreducible = false;
  ReachabilityReport report;
  double seconds = 0.0;
};
struct IrreducibilityResult {
  std::vector<IrreducibilityCase> cases;
  bool box_reachable = false;  // straight packing at the density boundary reaches every state
  FrozenReport trapped;
  std::uint32_t trapped_free = 0;
  double seconds = 0.0;
};
IrreducibilityResult measure_irreducibility();

struct FeelerResult {
  std::size_t instances = 0;
  std::size_t with_polymer = 0;
  std::size_t disagreements = 0;  // feeler L outcome differs from enumeration
  std::size_t feeler0_runs = 0;
  std::size_t feeler0_recoils = 0;
  double seconds = 0.0;
};
FeelerResult measure_feeler_limits(std::uint64_t seed, std::size_t instances);

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// graphs, growth, balance, stationarity, irreducibility, entangled, extended, all.
const std::vector<std::string>& suite_names();

struct SuiteReport {
  std::string suite;
  bool pass = true;
  double seconds = 0.0;
  nlohmann::json checks = nlohmann::json::array();
};

/// Runs a suite and judges each check; throws UnknownSuite for an unrecognized name.
/// "all" returns one entry per suite.
std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed = 20240601);
nlohmann::json to_json(const std::vector<SuiteReport>& reports);

}  // namespace rgstar
