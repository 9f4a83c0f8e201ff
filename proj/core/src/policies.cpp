#include "prp/policies.hpp"

#include <algorithm>
#include <numeric>

#include "prp/assignment.hpp"
#include "prp/errors.hpp"

namespace prp {

PlaceId RandomPolicy::choose(const SystemState&, const DecisionContext& ctx) {
  return ctx.admissible[rng_.below(ctx.admissible.size())];
}

std::string to_string(CheapestVariant v) {
  switch (v) {
    case CheapestVariant::ToStorage: return "to-storage";
    case CheapestVariant::OnAverage: return "avg";
    case CheapestVariant::Decision: return "decision";
  }
  return "?";
}

std::vector<double> station_fractions(const Instance& inst) {
  std::vector<double> r(static_cast<std::size_t>(inst.stations()), 0.0);
  if (inst.horizon() == 0) {
    std::fill(r.begin(), r.end(), 1.0 / inst.stations());
    return r;
  }
  for (const auto& d : *inst.departures) r[d.station.index()] += 1.0;
  for (double& x : r) x /= inst.horizon();
  return r;
}

std::vector<double> avg_costs(const Instance& inst) {
  const auto r = station_fractions(inst);
  std::vector<double> out(static_cast<std::size_t>(inst.places), 0.0);
  for (int p = 1; p <= inst.places; ++p)
    for (int s = 1; s <= inst.stations(); ++s)
      out[static_cast<std::size_t>(p - 1)] +=
          (inst.costs.to_station(PlaceId(p), StationId(s)) + inst.costs.from_station(StationId(s), PlaceId(p))) *
          r[static_cast<std::size_t>(s - 1)];
  return out;
}

std::string CheapestPolicy::name() const { return "cheapest:" + to_string(variant_); }

void CheapestPolicy::reset(const Instance& inst, const DepartureSchedule&) {
  costs_ = &inst.costs;
  if (variant_ == CheapestVariant::OnAverage) avg_ = avg_costs(inst);
}

PlaceId CheapestPolicy::choose(const SystemState&, const DecisionContext& ctx) {
  PlaceId best = ctx.admissible.front();
  double best_cost = 0.0;
  bool first = true;
  for (PlaceId p : ctx.admissible) {
    double c = 0.0;
    switch (variant_) {
      case CheapestVariant::ToStorage: c = costs_->from_station(ctx.from, p); break;
      case CheapestVariant::OnAverage: c = avg_[p.index()]; break;
      case CheapestVariant::Decision: c = costs_->decision(ctx.from, p, ctx.next_station); break;
    }
    if (first || c < best_cost) {
      best = p;
      best_cost = c;
      first = false;
    }
  }
  return best;
}

PlaceId MostExpensivePolicy::choose(const SystemState&, const DecisionContext& ctx) {
  PlaceId best = ctx.admissible.front();
  double best_cost = costs_->decision(ctx.from, best, ctx.next_station);
  for (PlaceId p : ctx.admissible) {
    const double c = costs_->decision(ctx.from, p, ctx.next_station);
    if (c > best_cost) {
      best = p;
      best_cost = c;
    }
  }
  return best;
}

int StationFrequencies::usage(PodId h) const {
  int u = 0;
  for (int s = 1; s <= stations; ++s) u += to(h, StationId(s)) + from(h, StationId(s));
  return u;
}

StationFrequencies station_frequencies(const Instance& inst) {
  StationFrequencies f;
  f.pods = inst.pods;
  f.stations = inst.stations();
  f.to_station.assign(static_cast<std::size_t>(f.pods * f.stations), 0);
  f.from_station.assign(f.to_station.size(), 0);
  const DepartureSchedule schedule(inst);
  for (const auto& info : schedule.steps()) {
    ++f.to_station[info.pod.index() * static_cast<std::size_t>(f.stations) + info.station.index()];
    if (info.returning)
      ++f.from_station[info.returning->index() * static_cast<std::size_t>(f.stations) + info.station.index()];
  }
  return f;
}

std::vector<double> fixed_assignment_costs(const Instance& inst, const StationFrequencies& f) {
  std::vector<double> c(static_cast<std::size_t>(inst.pods * inst.places), 0.0);
  for (int h = 1; h <= inst.pods; ++h)
    for (int p = 1; p <= inst.places; ++p) {
      double v = 0.0;
      for (int s = 1; s <= inst.stations(); ++s) {
        const StationId st(s);
        v += f.to(PodId(h), st) * inst.costs.to_station(PlaceId(p), st) +
             f.from(PodId(h), st) * inst.costs.from_station(st, PlaceId(p));
      }
      c[static_cast<std::size_t>((h - 1) * inst.places + (p - 1))] = v;
    }
  return c;
}

double fixed_assignment_objective(const Instance& inst, const StationFrequencies& f, const FixedAssignment& fa) {
  const auto c = fixed_assignment_costs(inst, f);
  double total = 0.0;
  for (int h = 1; h <= inst.pods; ++h)
    total += c[static_cast<std::size_t>((h - 1) * inst.places) + fa(PodId(h)).index()];
  return total;
}

FixedAssignment compute_fixed_assignment(const Instance& inst) {
  if (inst.pods > inst.places)
    throw Infeasible("fixed assignment needs at least as many places as pods (" + std::to_string(inst.pods) +
                     " > " + std::to_string(inst.places) + ")");
  const auto c = fixed_assignment_costs(inst, station_frequencies(inst));
  const auto res = solve_assignment(inst.pods, inst.places, c);
  FixedAssignment fa;
  for (int col : res.column_of_row) fa.place_of.emplace_back(col + 1);
  return fa;
}

FixedAssignment sort_based_assignment(const Instance& inst) {
  if (inst.pods > inst.places) throw Infeasible("fixed assignment needs at least as many places as pods");
  const auto f = station_frequencies(inst);
  const auto avg = avg_costs(inst);
  std::vector<int> pods(static_cast<std::size_t>(inst.pods)), places(static_cast<std::size_t>(inst.places));
  std::iota(pods.begin(), pods.end(), 1);
  std::iota(places.begin(), places.end(), 1);
  std::stable_sort(pods.begin(), pods.end(),
                   [&](int a, int b) { return f.usage(PodId(a)) > f.usage(PodId(b)); });
  std::stable_sort(places.begin(), places.end(), [&](int a, int b) {
    return avg[static_cast<std::size_t>(a - 1)] < avg[static_cast<std::size_t>(b - 1)];
  });
  FixedAssignment fa;
  fa.place_of.resize(static_cast<std::size_t>(inst.pods));
  for (std::size_t i = 0; i < pods.size(); ++i) fa.place_of[static_cast<std::size_t>(pods[i] - 1)] = PlaceId(places[i]);
  return fa;
}

Instance arrange_for_fixed(const Instance& inst, const FixedAssignment& fa) {
  StorageState storage(inst.places, inst.pods);
  for (int p = 1; p <= inst.places; ++p)
    if (auto h = inst.initial_state.storage().at(PlaceId(p))) storage.put(fa(*h), *h);
  return with_initial_storage(inst, std::move(storage));
}

PlaceId FixedPolicy::choose(const SystemState&, const DecisionContext& ctx) {
  const PlaceId p = fa_(ctx.pod);
  if (!std::binary_search(ctx.admissible.begin(), ctx.admissible.end(), p))
    throw Infeasible("step " + std::to_string(ctx.step) + ": fixed place " + std::to_string(p.value()) +
                     " of pod " + std::to_string(ctx.pod.value()) +
                     " is busy (initial storage not arranged by the assignment?)");
  return p;
}

PolicyRun run_policy(const Instance& inst, Policy& policy) {
  return run_policy(inst, DepartureSchedule(inst), policy);
}

PolicyRun run_policy(const Instance& inst, const DepartureSchedule& schedule, Policy& policy) {
  policy.reset(inst, schedule);
  PolicyRun run;
  run.actions.actions.reserve(static_cast<std::size_t>(inst.horizon()));
  SystemState s = inst.initial_state;
  std::vector<PlaceId> admissible;
  const bool lookahead = policy.uses_next_station();
  for (int t = 0; t < inst.horizon(); ++t) {
    const auto& info = schedule.step(t);
    Action a = Action::noop();
    if (!info.fill) {
      admissible_places(s, admissible);
      DecisionContext ctx;
      ctx.step = t;
      ctx.pod = *info.returning;
      ctx.from = info.station;
      if (lookahead) ctx.next_station = info.next_station;
      ctx.admissible = admissible;
      a = Action::place(policy.choose(s, ctx));
    }
    apply_action(s, a, inst.costs);
    run.actions.actions.push_back(a);
  }
  run.cost = total_cost(inst, run.actions);
  return run;
}

}  // namespace prp
