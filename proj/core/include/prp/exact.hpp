#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "prp/model.hpp"
#include "prp/schedule.hpp"

namespace prp {

// One real decision of the binary program: the pod leaving station
// from_station at `step` stays on its place over [busy_start, busy_end).
struct BipDecision {
  int step = 0;
  PodId pod;
  StationId from_station;
  int busy_start = 0;
  int busy_end = 0;
  std::optional<StationId> to_station;  // none: never leaves again
};

struct BipParameters {
  int horizon = 0;
  int places = 0;
  std::vector<BipDecision> decisions;   // ascending step
  std::vector<int> initial_busy_end;    // E_p, indexed by place - 1
  int big_m = 0;                        // N + 2
  // Legs fixed by the departures alone (pods leaving their initial places).
  // total cost = fixed_cost + sum of decision costs.
  double fixed_cost = 0.0;
};

BipParameters derive_bip_parameters(const Instance& inst);
BipParameters derive_bip_parameters(const Instance& inst, const DepartureSchedule& schedule);

// c_from(S_t, p) + c_to(p, Z_t) when the pod leaves again.
double decision_cost(const CostModel& costs, const BipDecision& d, PlaceId p);

struct ExactOptions {
  // Transitions generated before giving up; 0 means unlimited.
  std::uint64_t node_budget = 0;
  // Largest number of distinct states kept for one step.
  std::size_t max_layer_states = (std::size_t{1} << 24) - 1;
};

struct WindowReport {
  int begin = 0;
  int end = 0;
  int big_m = 0;                  // max time of the window + 1
  std::vector<int> busy_ends;     // E_p(begin), carried into the window
  double objective = 0.0;         // decision costs inside the window
  double lower_bound = 0.0;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;
  std::size_t peak_states = 0;
};

struct ExactResult {
  ActionSequence actions;
  double cost = 0.0;         // game-core total cost of `actions`
  double objective = 0.0;    // sum of decision costs
  double lower_bound = 0.0;  // on the objective
  bool proven_optimal = false;
  std::uint64_t nodes = 0;
  std::size_t peak_states = 0;
  std::vector<WindowReport> windows;

  double gap() const { return objective > 0.0 ? (objective - lower_bound) / objective : 0.0; }
};

// Minimizes the total cost over the whole horizon with zero terminal cost.
// Layered branch and bound: partial sequences reaching the same storage
// configuration are merged, nodes whose cost plus a relaxation bound exceeds
// the cheapest-decision incumbent are cut. Among optimal sequences the
// lexicographically smallest is returned. A window whose node budget runs
// out falls back to the incumbent with proven_optimal = false.
ExactResult solve_exact(const Instance& inst, const ExactOptions& opt = {});

// Splits the horizon into consecutive windows of window_size steps and
// solves each one exactly from the state the previous windows left.
ExactResult solve_iterative(const Instance& inst, int window_size, const ExactOptions& opt = {});

// Bound used at the root: fixed legs plus, per decision, the cheapest place
// ignoring occupancy.
double root_lower_bound(const Instance& inst);

struct BipExportOptions {
  bool pairwise_all = false;  // emit every pair tau < t instead of only overlapping ones
};

struct BipStats {
  std::size_t variables = 0;
  std::size_t assign_rows = 0;
  std::size_t initial_rows = 0;
  std::size_t overlap_rows = 0;
  std::size_t constraints() const { return assign_rows + initial_rows + overlap_rows; }
};

// Writes the 0/1 program in LP text format.
BipStats export_bip(const Instance& inst, std::ostream& out, const BipExportOptions& opt = {});
BipStats export_bip(const Instance& inst, const std::filesystem::path& path, const BipExportOptions& opt = {});
BipStats bip_stats(const Instance& inst, const BipExportOptions& opt = {});

}  // namespace prp
