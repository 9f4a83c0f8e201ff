#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prp/errors.hpp"
#include "prp/model.hpp"
#include "prp/schedule.hpp"

namespace prp {

struct EnqueueResult {
  StationQueue queue;
  std::optional<PodId> ejected;
};

// enq operator on a value queue. Throws InvalidState if h is already queued.
EnqueueResult enqueue(const StationQueue& q, PodId h);

// True while the queue targeted by the current departure is below capacity.
bool in_fill_phase(const SystemState& s);

// D(s): {NoOp} in the fill phase (or when no departure is left), otherwise
// every free place plus the place the departing pod is vacating, ascending.
std::vector<Action> admissible_actions(const SystemState& s);

// The admissible places of a decision step; empty in the fill phase.
void admissible_places(const SystemState& s, std::vector<PlaceId>& out);
std::vector<PlaceId> admissible_places(const SystemState& s);

// Pod that the current action places: head of the full target queue.
std::optional<PodId> returning_pod(const SystemState& s);

double step_cost(const SystemState& s, Action a, const CostModel& costs);

// Transition T(s, a). Throws InvalidAction when a is not admissible.
SystemState transition(const SystemState& s, Action a);

// In-place transition; returns the step cost of the action.
double apply_action(SystemState& s, Action a, const CostModel& costs);

// C_0 of a final state.
double terminal_cost(const SystemState& s, const CostModel& costs);

// N-stage objective. Throws InvalidAction naming the first violating step.
double total_cost(const Instance& inst, const ActionSequence& y);

enum class FeasibilityIssue { PlaceBusy, WrongPhase, LengthMismatch, UnknownPlace };
const char* to_string(FeasibilityIssue issue);

struct FeasibilityVerdict {
  bool ok = true;
  int step = -1;
  std::optional<FeasibilityIssue> reason;
  std::string detail;

  explicit operator bool() const { return ok; }
};

FeasibilityVerdict check_feasible(const Instance& inst, const ActionSequence& y);

// Occupation intervals of a feasible replay: one per decision plus one per
// initially stored pod. Throws InvalidAction if y is infeasible.
std::vector<OccupationInterval> occupation_intervals(const Instance& inst, const ActionSequence& y);

// Intervals implied by y without checking feasibility. y must have the
// instance length, NoOp exactly at fill steps and places in range.
std::vector<OccupationInterval> planned_intervals(const Instance& inst,
                                                  const DepartureSchedule& schedule,
                                                  const ActionSequence& y);

// Structural checks plus one replay of the departure sequence.
void validate_instance(const Instance& inst);

// Per-step costs from a stepwise replay.
std::vector<double> step_costs(const Instance& inst, const ActionSequence& y);

}  // namespace prp
