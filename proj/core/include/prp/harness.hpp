#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prp/exact.hpp"
#include "prp/genetic.hpp"
#include "prp/instance_gen.hpp"
#include "prp/model.hpp"

namespace prp {

struct SolveOptions {
  std::uint64_t seed = 1;  // random policy and genetic searches
  GaConfig ga;
  ExactOptions exact;
  int window = 0;          // > 0: iterative exact with this window
  int tetris_passes = 1;
};

struct Solution {
  std::string policy;
  ActionSequence actions;
  double cost = 0.0;
  bool comparable = true;  // false when the policy rearranged the initial storage
  std::string note;
};

// Policy names: random, cheapest:to-storage, cheapest:avg, cheapest:decision,
// most-expensive, fixed, tetris:frequency, tetris:duration, genetic1,
// genetic2:<close|far|zigzag|avg-cost>, exact.
std::vector<std::string> known_policies();
bool is_known_policy(const std::string& name);
// Throws std::invalid_argument for unknown names; BudgetExceeded is passed
// through from the exact solver.
Solution solve_with(const Instance& inst, const std::string& policy, const SolveOptions& opt = {});

// Product of the admissible-set sizes over the horizon.
double brute_force_estimate(const Instance& inst);

struct BruteForceResult {
  ActionSequence actions;
  double cost = 0.0;
  std::uint64_t leaves = 0;
};

// Depth-first enumeration of every feasible sequence through game-core. The
// first minimum in ascending action order wins, i.e. the lexicographically
// smallest optimal sequence. Throws BudgetExceeded when the estimate exceeds
// the cap.
BruteForceResult brute_force_optimum(const Instance& inst, double cap = 2e7);

struct ResultRow {
  std::string policy;
  double cost = 0.0;
  double relative = 0.0;  // cost / random-policy cost on the same instance
  int decisions = 0;
  bool comparable = true;
  double seconds = 0.0;   // median wall time of the decision computation
  std::string error;      // non-empty when the policy failed
};

struct ComparisonConfig {
  std::vector<std::string> policies;
  SolveOptions options;
  int timing_runs = 3;
};

// Replays every policy on the identical instance. A failing policy yields a
// row with `error` set; the others are unaffected. The random baseline is
// computed even when not listed.
std::vector<ResultRow> run_comparison(const Instance& inst, const ComparisonConfig& cfg);

// Costs only, byte-stable for fixed inputs.
void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_timings_csv(const std::vector<ResultRow>& rows, std::ostream& out);

nlohmann::json run_manifest(const Instance& inst, const ComparisonConfig& cfg, const std::vector<ResultRow>& rows);

std::string format_cost(double v);

struct UniformityRow {
  RegimeKind regime;
  int instances = 0;
  int equal = 0;  // instances where cheapest-place is optimal
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

// Cheapest-place versus the exact optimum on tiny instances; one row per
// regime. Periodic instances use line costs and equal capacities.
std::vector<UniformityRow> uniformity_study(const std::vector<std::uint64_t>& seeds, const TinyOptions& base = {});
TinyOptions tiny_options_for(RegimeKind kind, const TinyOptions& base = {});

struct SeasonalConfig {
  std::vector<std::uint64_t> seeds;  // empty: 1..20
  int horizon = 10000;
  int season_length = 2000;
  MediumLayoutParams layout;
};

struct SeasonalRow {
  std::uint64_t seed = 0;
  bool seasonal = false;
  double baseline = 0.0;  // most-expensive-place replay
  double frequency = 0.0;
  double duration = 0.0;
};

struct SeasonalReport {
  std::vector<SeasonalRow> rows;
  double median_frequency_seasonal = 0.0;
  double median_duration_seasonal = 0.0;
  double median_frequency_plain = 0.0;
  double median_duration_plain = 0.0;
};

SeasonalReport seasonal_study(const SeasonalConfig& cfg);

double median(std::vector<double> v);

}  // namespace prp
