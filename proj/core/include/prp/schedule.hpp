#pragma once

#include <optional>
#include <vector>

#include "prp/model.hpp"

namespace prp {

// Everything about a replay that does not depend on the actions taken. Queue
// contents evolve only through the departure sequence, so the fill phases,
// which pod returns at each step, when it leaves storage next and how many
// places are admissible are all fixed by the instance.
struct StepInfo {
  PodId pod;
  StationId station;
  bool fill = false;                  // target queue below capacity: NoOp forced
  std::optional<PodId> returning;     // head pushed out of the target queue
  std::optional<int> next_departure;  // step at which `returning` departs again
  std::optional<StationId> next_station;
  int admissible = 0;                 // |D(s_t)|, 0 in fill steps
};

class DepartureSchedule {
 public:
  DepartureSchedule() = default;
  // Throws InvalidInstance if some departing pod is not in storage at its step.
  explicit DepartureSchedule(const Instance& inst);

  int horizon() const { return static_cast<int>(steps_.size()); }
  const StepInfo& step(int t) const { return steps_.at(static_cast<std::size_t>(t)); }
  const std::vector<StepInfo>& steps() const { return steps_; }
  const std::vector<int>& decision_steps() const { return decision_steps_; }
  const std::vector<int>& departures_of(PodId h) const { return departures_of_.at(h.index()); }
  int departure_count(PodId h) const { return static_cast<int>(departures_of(h).size()); }

  // First step >= t at which h departs.
  std::optional<int> next_departure_at_or_after(PodId h, int t) const;

  // End of the stay started by the decision at step t (BusyEnd): the time
  // the pod has left storage again, or horizon+1 when it never leaves.
  int busy_end(int t) const;
  // First time the place is free given the initial storage (0 if empty).
  int initial_busy_end(PlaceId p) const { return initial_busy_end_.at(p.index()); }
  const std::vector<int>& initial_busy_ends() const { return initial_busy_end_; }

  // Number of times h is pushed out of station s over the horizon.
  int returns_from(PodId h, StationId s) const;

 private:
  std::vector<StepInfo> steps_;
  std::vector<int> decision_steps_;
  std::vector<std::vector<int>> departures_of_;
  std::vector<int> initial_busy_end_;
};

}  // namespace prp
