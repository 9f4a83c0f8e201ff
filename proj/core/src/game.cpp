#include "prp/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prp/assignment.hpp"

namespace prp {

EnqueueResult enqueue(const StationQueue& q, PodId h) {
  EnqueueResult r{q, std::nullopt};
  r.ejected = r.queue.push(h);
  return r;
}

bool in_fill_phase(const SystemState& s) {
  if (s.finished()) return false;
  return !s.queue(s.current_departure().station).full();
}

void admissible_places(const SystemState& s, std::vector<PlaceId>& out) {
  out.clear();
  if (s.finished() || in_fill_phase(s)) return;
  const auto& storage = s.storage();
  const auto vacated = storage.place_of(s.current_departure().pod);
  for (int p = 1; p <= storage.place_count(); ++p) {
    const PlaceId place(p);
    if (storage.is_free(place) || place == vacated) out.push_back(place);
  }
}

std::vector<PlaceId> admissible_places(const SystemState& s) {
  std::vector<PlaceId> out;
  admissible_places(s, out);
  return out;
}

std::vector<Action> admissible_actions(const SystemState& s) {
  if (s.finished() || in_fill_phase(s)) return {Action::noop()};
  std::vector<Action> out;
  for (PlaceId p : admissible_places(s)) out.push_back(Action::place(p));
  return out;
}

std::optional<PodId> returning_pod(const SystemState& s) {
  if (s.finished() || in_fill_phase(s)) return std::nullopt;
  return s.queue(s.current_departure().station).head();
}

namespace {

// Validates a against s without modifying anything; returns the place of the
// departing pod.
PlaceId check_action(const SystemState& s, Action a) {
  const int t = s.clock();
  if (s.finished()) throw InvalidAction(t, ActionError::NoDeparture, "horizon reached");
  const auto& d = s.current_departure();
  const auto from = s.storage().place_of(d.pod);
  if (!from)
    throw InvalidState("step " + std::to_string(t) + ": pod " + std::to_string(d.pod.value()) +
                       " is not in storage");
  const bool filling = !s.queue(d.station).full();
  if (filling) {
    if (!a.is_noop())
      throw InvalidAction(t, ActionError::WrongPhase,
                          "queue " + std::to_string(d.station.value()) + " is filling, NoOp required");
    return *from;
  }
  if (a.is_noop())
    throw InvalidAction(t, ActionError::WrongPhase,
                        "queue " + std::to_string(d.station.value()) + " is full, a place is required");
  const PlaceId target = a.target();
  if (target.value() < 1 || target.value() > s.storage().place_count())
    throw InvalidAction(t, ActionError::UnknownPlace, "place " + std::to_string(target.value()));
  if (!s.storage().is_free(target) && target != *from)
    throw InvalidAction(t, ActionError::PlaceBusy,
                        "place " + std::to_string(target.value()) + " holds pod " +
                            std::to_string(s.storage().at(target)->value()));
  return *from;
}

}  // namespace

double step_cost(const SystemState& s, Action a, const CostModel& costs) {
  const PlaceId from = check_action(s, a);
  const auto station = s.current_departure().station;
  double c = costs.to_station(from, station);
  if (!a.is_noop()) c += costs.from_station(station, a.target());
  return c;
}

namespace {

// Moves the departing pod out of `from` and writes the ejected head, if any,
// to the chosen place.
void move_pods(SystemState& s, Action a, PlaceId from) {
  const auto d = s.current_departure();
  auto& storage = s.mutable_storage();
  storage.remove(from);
  if (auto ejected = s.mutable_queues()[d.station.index()].push(d.pod)) storage.put(a.target(), *ejected);
  s.advance_clock();
}

}  // namespace

double apply_action(SystemState& s, Action a, const CostModel& costs) {
  const PlaceId from = check_action(s, a);
  const auto station = s.current_departure().station;
  double c = costs.to_station(from, station);
  if (!a.is_noop()) c += costs.from_station(station, a.target());
  move_pods(s, a, from);
  return c;
}

SystemState transition(const SystemState& s, Action a) {
  SystemState next = s;
  move_pods(next, a, check_action(next, a));
  return next;
}

double terminal_cost(const SystemState& s, const CostModel& costs) {
  if (costs.terminal() == TerminalCost::Zero) return 0.0;
  // Cheapest way to bring every queued pod back to a distinct free place.
  std::vector<StationId> rows;
  for (std::size_t q = 0; q < s.queues().size(); ++q)
    for (int i = 0; i < s.queues()[q].size(); ++i) rows.push_back(StationId(static_cast<int>(q) + 1));
  std::vector<PlaceId> cols;
  for (int p = 1; p <= s.storage().place_count(); ++p)
    if (s.storage().is_free(PlaceId(p))) cols.emplace_back(p);
  if (rows.empty()) return 0.0;
  std::vector<double> matrix;
  matrix.reserve(rows.size() * cols.size());
  for (StationId st : rows)
    for (PlaceId p : cols) matrix.push_back(costs.from_station(st, p));
  return solve_assignment(static_cast<int>(rows.size()), static_cast<int>(cols.size()), matrix).cost;
}

double total_cost(const Instance& inst, const ActionSequence& y) {
  if (static_cast<int>(y.size()) != inst.horizon())
    throw InvalidAction(static_cast<int>(std::min<std::size_t>(y.size(), static_cast<std::size_t>(inst.horizon()))),
                        ActionError::NoDeparture,
                        "sequence length " + std::to_string(y.size()) + " != horizon " +
                            std::to_string(inst.horizon()));
  SystemState s = inst.initial_state;
  const double beta = inst.costs.discount();
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    total += weight * apply_action(s, y[t], inst.costs);
    if (beta != 1.0) weight *= beta;
  }
  const double terminal = terminal_cost(s, inst.costs);
  return terminal == 0.0 ? total : total + weight * terminal;
}

std::vector<double> step_costs(const Instance& inst, const ActionSequence& y) {
  SystemState s = inst.initial_state;
  std::vector<double> out;
  out.reserve(y.size());
  for (std::size_t t = 0; t < y.size() && !s.finished(); ++t)
    out.push_back(apply_action(s, y[t], inst.costs));
  return out;
}

const char* to_string(FeasibilityIssue issue) {
  switch (issue) {
    case FeasibilityIssue::PlaceBusy: return "place-busy";
    case FeasibilityIssue::WrongPhase: return "wrong-phase-action";
    case FeasibilityIssue::LengthMismatch: return "length-mismatch";
    case FeasibilityIssue::UnknownPlace: return "unknown-place";
  }
  return "unknown";
}

FeasibilityVerdict check_feasible(const Instance& inst, const ActionSequence& y) {
  FeasibilityVerdict v;
  if (static_cast<int>(y.size()) != inst.horizon()) {
    v.ok = false;
    v.step = static_cast<int>(std::min<std::size_t>(y.size(), static_cast<std::size_t>(inst.horizon())));
    v.reason = FeasibilityIssue::LengthMismatch;
    v.detail = "length " + std::to_string(y.size()) + ", horizon " + std::to_string(inst.horizon());
    return v;
  }
  SystemState s = inst.initial_state;
  for (std::size_t t = 0; t < y.size(); ++t) {
    try {
      apply_action(s, y[t], inst.costs);
    } catch (const InvalidAction& e) {
      v.ok = false;
      v.step = e.step();
      switch (e.reason()) {
        case ActionError::PlaceBusy: v.reason = FeasibilityIssue::PlaceBusy; break;
        case ActionError::WrongPhase: v.reason = FeasibilityIssue::WrongPhase; break;
        case ActionError::UnknownPlace: v.reason = FeasibilityIssue::UnknownPlace; break;
        case ActionError::NoDeparture: v.reason = FeasibilityIssue::LengthMismatch; break;
      }
      v.detail = e.what();
      return v;
    }
  }
  return v;
}

std::vector<OccupationInterval> planned_intervals(const Instance& inst,
                                                  const DepartureSchedule& schedule,
                                                  const ActionSequence& y) {
  std::vector<OccupationInterval> out;
  const auto& storage = inst.initial_state.storage();
  for (int p = 1; p <= inst.places; ++p) {
    const PlaceId place(p);
    if (auto h = storage.at(place)) {
      OccupationInterval iv;
      iv.place = place;
      iv.pod = *h;
      iv.begin = 0;
      iv.end = schedule.initial_busy_end(place);
      if (auto first = schedule.next_departure_at_or_after(*h, 0))
        iv.to_station = schedule.step(*first).station;
      iv.initial = true;
      out.push_back(iv);
    }
  }
  for (int t : schedule.decision_steps()) {
    const auto& info = schedule.step(t);
    OccupationInterval iv;
    iv.place = y[static_cast<std::size_t>(t)].target();
    iv.pod = *info.returning;
    iv.begin = t + 1;
    iv.end = schedule.busy_end(t);
    iv.from_station = info.station;
    iv.to_station = info.next_station;
    out.push_back(iv);
  }
  return out;
}

std::vector<OccupationInterval> occupation_intervals(const Instance& inst, const ActionSequence& y) {
  if (auto v = check_feasible(inst, y); !v) {
    throw InvalidAction(v.step,
                        v.reason == FeasibilityIssue::PlaceBusy ? ActionError::PlaceBusy
                        : v.reason == FeasibilityIssue::UnknownPlace ? ActionError::UnknownPlace
                        : v.reason == FeasibilityIssue::WrongPhase   ? ActionError::WrongPhase
                                                                     : ActionError::NoDeparture,
                        v.detail);
  }
  return planned_intervals(inst, DepartureSchedule(inst), y);
}

void validate_instance(const Instance& inst) {
  if (inst.pods < 1) throw InvalidInstance("at least one pod required");
  if (inst.places < 1) throw InvalidInstance("at least one place required");
  if (inst.capacities.empty()) throw InvalidInstance("at least one station required");
  for (int c : inst.capacities)
    if (c < 1) throw InvalidInstance("station capacities must be positive");
  if (inst.costs.places() != inst.places || inst.costs.stations() != inst.stations())
    throw InvalidInstance("cost tables do not match the layout");
  const auto& st = inst.initial_state;
  if (st.storage().place_count() != inst.places || st.storage().pod_capacity() != inst.pods)
    throw InvalidInstance("initial storage does not match the layout");
  if (static_cast<int>(st.queues().size()) != inst.stations())
    throw InvalidInstance("one initial queue per station required");
  if (st.clock() != 0) throw InvalidInstance("initial state must be at t=0");

  std::vector<int> seen(static_cast<std::size_t>(inst.pods), 0);
  for (int p = 1; p <= inst.places; ++p)
    if (auto h = st.storage().at(PlaceId(p))) ++seen[h->index()];
  for (std::size_t s = 0; s < st.queues().size(); ++s) {
    const auto& q = st.queues()[s];
    if (q.capacity() != inst.capacities[s])
      throw InvalidInstance("queue capacity of station " + std::to_string(s + 1) + " mismatch");
    for (PodId h : q.items()) {
      if (h.value() < 1 || h.value() > inst.pods)
        throw InvalidInstance("queued pod " + std::to_string(h.value()) + " out of range");
      ++seen[h.index()];
    }
  }
  for (int h = 1; h <= inst.pods; ++h)
    if (seen[static_cast<std::size_t>(h - 1)] != 1)
      throw InvalidInstance("pod " + std::to_string(h) + " must be placed exactly once, found " +
                            std::to_string(seen[static_cast<std::size_t>(h - 1)]));
  DepartureSchedule check(inst);
  (void)check;
}

}  // namespace prp
