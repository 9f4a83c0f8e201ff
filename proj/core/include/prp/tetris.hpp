#pragma once

#include <map>
#include <string>
#include <vector>

#include "prp/model.hpp"
#include "prp/schedule.hpp"

namespace prp {

enum class TetrisMode { Frequency, Duration };
std::string to_string(TetrisMode mode);

// Decision cost of holding the interval's pod on place p: the return leg
// from its station plus the next trip out, if any. Initial intervals have no
// return leg.
double interval_place_cost(const CostModel& costs, const OccupationInterval& iv, PlaceId p);

// Occupation intervals of a feasible sequence with a per-place timeline.
// Intervals of the pods stored at t = 0 stay where they are.
class IntervalPlan {
 public:
  IntervalPlan(const Instance& inst, const DepartureSchedule& schedule, const ActionSequence& y);

  const std::vector<OccupationInterval>& intervals() const { return intervals_; }
  // No interval on p intersects [begin, end).
  bool is_free(PlaceId p, int begin, int end) const;
  void move(std::size_t i, PlaceId p);
  ActionSequence actions() const;
  bool disjoint() const;

 private:
  int horizon_;
  std::vector<OccupationInterval> intervals_;
  std::vector<std::map<int, std::pair<int, std::size_t>>> timeline_;  // begin -> (end, interval)
};

struct TetrisResult {
  ActionSequence actions;
  double cost = 0.0;
  double initial_cost = 0.0;  // the plan before improvement
  int moves = 0;
};

// Order in which intervals are offered a cheaper place.
std::vector<std::size_t> tetris_order(const IntervalPlan& plan, const DepartureSchedule& schedule, TetrisMode mode);

// One sweep over the intervals of `start`: each decision interval moves to the
// cheapest place that is strictly cheaper and free over its whole stay.
TetrisResult tetris_improve(const Instance& inst, const ActionSequence& start, TetrisMode mode);

// Most-expensive-place replay followed by `passes` sweeps.
TetrisResult tetris(const Instance& inst, TetrisMode mode, int passes = 1);

}  // namespace prp
