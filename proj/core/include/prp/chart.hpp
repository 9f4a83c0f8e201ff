#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prp/model.hpp"

namespace prp {

// Full replay of a sequence: storage and queue snapshots at times 0..N.
struct RunTrace {
  int places = 0;
  int pods = 0;
  int horizon = 0;
  std::vector<int> occupancy;                   // (N+1) x places, pod id or 0
  std::vector<std::vector<std::vector<int>>> queues;  // [t][station] head first
  std::vector<Action> actions;
  std::vector<double> step_costs;
  std::vector<double> cumulative;               // N+1 values; the last includes the terminal cost

  int pod_at(int t, PlaceId p) const {
    return occupancy[static_cast<std::size_t>(t) * static_cast<std::size_t>(places) + p.index()];
  }
  SystemState state_at(const Instance& inst, int t) const;
};

// Throws InvalidAction at the first inadmissible step.
RunTrace record_trace(const Instance& inst, const ActionSequence& y);

// 256-step ramp #00007f, #0000ff, #00ffff, #ffff00, #ff0000, #7f0000 at
// equal spacing; x in [0, 1].
std::string ramp_color(double x);
// Color per pod (index pod - 1) by usage rank over the departures: least
// used dark blue, most used dark red, ties by pod id.
std::vector<std::string> usage_colors(const Instance& inst);

struct ChartSpec {
  int from = 0;
  int to = -1;  // exclusive; -1 means N
  int cell_width = 6;
  int cell_height = 14;
};

std::string render_chart(const Instance& inst, const RunTrace& trace, const ChartSpec& spec);
void emit_chart(const Instance& inst, const RunTrace& trace, const ChartSpec& spec, const std::filesystem::path& path);

// (t, place, pod) for every occupied cell of the window.
void write_trace_csv(const RunTrace& trace, std::ostream& out, int from = 0, int to = -1);

// Number of distinct pods seen on each place over [from, to).
std::vector<int> distinct_pods_per_place(const RunTrace& trace, int from = 0, int to = -1);

}  // namespace prp
