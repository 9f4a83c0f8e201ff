#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prp/model.hpp"
#include "prp/rng.hpp"

namespace prp {

// Probability weight per pod, indexed by pod - 1.
struct PodWeights {
  std::vector<double> weights;
  double operator()(PodId h) const { return weights.at(h.index()); }
};

// Probability weight per station, indexed by station - 1; sums to 1.
struct StationWeights {
  std::vector<double> weights;
  double operator()(StationId s) const { return weights.at(s.index()); }
};

// Truncated geometric weights w_h proportional to q^h, with q chosen so that
// w_1 / w_n == ratio. For n == 1 the single weight is 1.
PodWeights geometric_weights(int n_pods, double ratio);
PodWeights uniform_pod_weights(int n_pods);
StationWeights uniform_station_weights(int n_stations);
// Throws if the weights are not positive or do not sum to 1 within 1e-12.
StationWeights make_station_weights(std::vector<double> weights);

enum class RegimeKind { RandomGeometric, RandomUniform, PeriodicRandom, Periodic };
std::string to_string(RegimeKind kind);
RegimeKind parse_regime(const std::string& name);

struct DepartureRegime {
  RegimeKind kind = RegimeKind::RandomGeometric;
  std::uint64_t seed = 0;
  double weight_ratio = 20.0;  // geometric regimes
  // > 0: every season_length steps the geometric weights are reassigned to
  // pods by a fresh random permutation (first season keeps pod 1 heaviest).
  int season_length = 0;
};

// Samples station s with probability w_s and pod h with probability
// w_h / sum of w_k over stored pods. Throws if storage is empty.
Departure next_departure(const StorageState& storage, const PodWeights& pw, const StationWeights& sw,
                         Rng& rng);
Departure next_departure(std::span<const char> in_storage, const PodWeights& pw,
                         const StationWeights& sw, Rng& rng);

// An instance without its departure sequence.
struct Layout {
  int pods = 0;
  int places = 0;
  std::vector<int> capacities;
  CostModel costs;
  StorageState storage;
  std::vector<std::deque<PodId>> queues;
  StationWeights station_weights;
  nlohmann::json params;  // layout parameters for the metadata sidecar
};

// Co-simulates the queues so every departing pod is in storage.
std::vector<Departure> generate_departures(const Layout& layout, const DepartureRegime& regime,
                                           int horizon);
Instance build_instance(const Layout& layout, const DepartureRegime& regime, int horizon);

// 1-D line of places, two identical stations, costs p + offset in both
// directions, pod h initially at place h, empty queues.
Layout small_system_layout(int places = 10, int capacity = 2, double cost_offset = 4.0);

struct SmallSystemOptions {
  std::uint64_t seed = 2018;
  int horizon = 1000;
  double weight_ratio = 20.0;
  int capacity = 2;
  RegimeKind kind = RegimeKind::RandomGeometric;
};
Instance build_small_system(const SmallSystemOptions& opt = {});

// Grid of storage blocks separated by one-cell aisles. Robots carrying pods
// move on aisle cells only; a place's cost is the aisle distance from the
// station cell to the place plus one step in and one step to the picker.
struct MediumLayoutParams {
  int block_cols = 9;
  int block_rows = 7;
  int block_width = 4;
  int block_height = 2;
  int pods = 441;
  std::vector<int> capacities = {32, 31};
  // Station 1 sits on the left edge at this row, station 2 on the bottom
  // edge at this column (grid cell coordinates).
  int station1_row = 6;
  int station2_col = 30;
  std::vector<double> station_weights = {0.6, 0.4};
};

int medium_grid_width(const MediumLayoutParams& p);
int medium_grid_height(const MediumLayoutParams& p);
Layout medium_system_layout(const MediumLayoutParams& params, std::uint64_t seed);

struct MediumSystemOptions {
  std::uint64_t seed = 441;
  int horizon = 20000;
  double weight_ratio = 20.0;
  int season_length = 0;
  MediumLayoutParams layout;
};
Instance build_medium_system(const MediumSystemOptions& opt = {});

// Random small instances for exhaustive cross-checks.
struct TinyOptions {
  int max_places = 6;
  int max_pods = 6;
  int min_horizon = 1;
  int max_horizon = 8;
  int max_stations = 2;
  RegimeKind kind = RegimeKind::RandomUniform;
  bool line_costs = false;       // c(p) = p + 1 in both directions
  bool equal_capacities = false;
  bool prefill_queues = true;    // allow pods in the queues at t = 0
  int max_cost = 9;              // random integer costs in [1, max_cost]
};
Instance build_tiny_system(std::uint64_t seed, const TinyOptions& opt = {});

nlohmann::json regime_to_json(const DepartureRegime& regime);

}  // namespace prp
