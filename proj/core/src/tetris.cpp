#include "prp/tetris.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "prp/errors.hpp"
#include "prp/game.hpp"
#include "prp/policies.hpp"

namespace prp {

std::string to_string(TetrisMode mode) { return mode == TetrisMode::Frequency ? "frequency" : "duration"; }

double interval_place_cost(const CostModel& costs, const OccupationInterval& iv, PlaceId p) {
  double c = iv.from_station ? costs.from_station(*iv.from_station, p) : 0.0;
  if (iv.to_station) c += costs.to_station(p, *iv.to_station);
  return c;
}

IntervalPlan::IntervalPlan(const Instance& inst, const DepartureSchedule& schedule, const ActionSequence& y)
    : horizon_(inst.horizon()),
      intervals_(planned_intervals(inst, schedule, y)),
      timeline_(static_cast<std::size_t>(inst.places)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.length() <= 0) continue;
    timeline_[iv.place.index()].emplace(iv.begin, std::make_pair(iv.end, i));
  }
}

bool IntervalPlan::is_free(PlaceId p, int begin, int end) const {
  const auto& tl = timeline_[p.index()];
  auto it = tl.lower_bound(end);
  if (it == tl.begin()) return true;
  --it;
  return it->second.first <= begin;
}

void IntervalPlan::move(std::size_t i, PlaceId p) {
  auto& iv = intervals_.at(i);
  if (iv.initial) throw InvalidState("initial occupancy cannot be moved");
  timeline_[iv.place.index()].erase(iv.begin);
  iv.place = p;
  timeline_[p.index()].emplace(iv.begin, std::make_pair(iv.end, i));
}

ActionSequence IntervalPlan::actions() const {
  ActionSequence y;
  y.actions.assign(static_cast<std::size_t>(horizon_), Action::noop());
  for (const auto& iv : intervals_)
    if (!iv.initial) y.actions[static_cast<std::size_t>(iv.decision_step())] = Action::place(iv.place);
  return y;
}

bool IntervalPlan::disjoint() const {
  for (const auto& tl : timeline_) {
    int last_end = -1;
    for (const auto& [b, v] : tl) {
      if (b < last_end) return false;
      last_end = v.first;
    }
  }
  std::size_t indexed = 0;
  for (const auto& tl : timeline_) indexed += tl.size();
  std::size_t nonempty = 0;
  for (const auto& iv : intervals_) nonempty += iv.length() > 0;
  return indexed == nonempty;
}

std::vector<std::size_t> tetris_order(const IntervalPlan& plan, const DepartureSchedule& schedule, TetrisMode mode) {
  const auto& ivs = plan.intervals();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < ivs.size(); ++i)
    if (!ivs[i].initial) order.push_back(i);
  if (mode == TetrisMode::Frequency) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = ivs[a];
      const auto& y = ivs[b];
      const int fx = schedule.departure_count(x.pod), fy = schedule.departure_count(y.pod);
      return std::make_tuple(-fx, x.begin, x.pod.value()) < std::make_tuple(-fy, y.begin, y.pod.value());
    });
  } else {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = ivs[a];
      const auto& y = ivs[b];
      return std::make_tuple(x.length(), x.begin, x.pod.value()) < std::make_tuple(y.length(), y.begin, y.pod.value());
    });
  }
  return order;
}

TetrisResult tetris_improve(const Instance& inst, const ActionSequence& start, TetrisMode mode) {
  const DepartureSchedule schedule(inst);
  TetrisResult res;
  res.initial_cost = total_cost(inst, start);
  IntervalPlan plan(inst, schedule, start);

  // Places by ascending cost, per (from station, to station or none).
  const int S = inst.stations();
  std::vector<std::vector<PlaceId>> by_cost(static_cast<std::size_t>(S * (S + 1)));
  auto key = [&](const OccupationInterval& iv) {
    return iv.from_station->index() * static_cast<std::size_t>(S + 1) + (iv.to_station ? iv.to_station->index() + 1 : 0);
  };
  for (int from = 1; from <= S; ++from)
    for (int to = 0; to <= S; ++to) {
      OccupationInterval probe;
      probe.from_station = StationId(from);
      if (to) probe.to_station = StationId(to);
      auto& ord = by_cost[key(probe)];
      for (int p = 1; p <= inst.places; ++p) ord.emplace_back(p);
      std::stable_sort(ord.begin(), ord.end(), [&](PlaceId a, PlaceId b) {
        return interval_place_cost(inst.costs, probe, a) < interval_place_cost(inst.costs, probe, b);
      });
    }

  for (std::size_t i : tetris_order(plan, schedule, mode)) {
    const OccupationInterval iv = plan.intervals()[i];
    const double current = interval_place_cost(inst.costs, iv, iv.place);
    for (PlaceId p : by_cost[key(iv)]) {
      if (!(interval_place_cost(inst.costs, iv, p) < current)) break;
      if (plan.is_free(p, iv.begin, iv.end)) {
        plan.move(i, p);
        ++res.moves;
        break;
      }
    }
  }
  res.actions = plan.actions();
  res.cost = total_cost(inst, res.actions);
  return res;
}

TetrisResult tetris(const Instance& inst, TetrisMode mode, int passes) {
  MostExpensivePolicy init;
  const PolicyRun start = run_policy(inst, init);
  TetrisResult res;
  res.actions = start.actions;
  res.cost = start.cost;
  res.initial_cost = start.cost;
  for (int k = 0; k < passes; ++k) {
    TetrisResult r = tetris_improve(inst, res.actions, mode);
    res.actions = std::move(r.actions);
    res.cost = r.cost;
    res.moves += r.moves;
  }
  return res;
}

}  // namespace prp
