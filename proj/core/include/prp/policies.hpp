#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prp/game.hpp"
#include "prp/model.hpp"
#include "prp/rng.hpp"
#include "prp/schedule.hpp"

namespace prp {

// What a policy sees at a decision step. next_station is filled only for
// policies that declare uses_next_station(); the rest get std::nullopt.
struct DecisionContext {
  int step = 0;
  PodId pod;                      // pod leaving the head of the full queue
  StationId from;                 // its station
  std::optional<StationId> next_station;
  std::span<const PlaceId> admissible;  // ascending
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual bool uses_next_station() const { return false; }
  // Called once before each replay.
  virtual void reset(const Instance& inst, const DepartureSchedule& schedule) {
    (void)inst;
    (void)schedule;
  }
  virtual PlaceId choose(const SystemState& s, const DecisionContext& ctx) = 0;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::string name() const override { return "random"; }
  void reset(const Instance&, const DepartureSchedule&) override { rng_ = Rng(seed_); }
  PlaceId choose(const SystemState& s, const DecisionContext& ctx) override;

 private:
  std::uint64_t seed_;
  Rng rng_;
};

enum class CheapestVariant { ToStorage, OnAverage, Decision };
std::string to_string(CheapestVariant v);

// c_avg(p) = sum_s (c_to(p,s) + c_from(s,p)) * r_s with r_s the fraction of
// departures to station s (uniform when there are none).
std::vector<double> avg_costs(const Instance& inst);
std::vector<double> station_fractions(const Instance& inst);

class CheapestPolicy final : public Policy {
 public:
  explicit CheapestPolicy(CheapestVariant v) : variant_(v) {}
  std::string name() const override;
  bool uses_next_station() const override { return variant_ == CheapestVariant::Decision; }
  void reset(const Instance& inst, const DepartureSchedule& schedule) override;
  PlaceId choose(const SystemState& s, const DecisionContext& ctx) override;

 private:
  CheapestVariant variant_;
  const CostModel* costs_ = nullptr;
  std::vector<double> avg_;
};

// Argmax of the decision cost; the tetris starting point.
class MostExpensivePolicy final : public Policy {
 public:
  std::string name() const override { return "most-expensive"; }
  bool uses_next_station() const override { return true; }
  void reset(const Instance& inst, const DepartureSchedule&) override { costs_ = &inst.costs; }
  PlaceId choose(const SystemState& s, const DecisionContext& ctx) override;

 private:
  const CostModel* costs_ = nullptr;
};

// Visit counts per pod and station: departures to, and returns from.
struct StationFrequencies {
  int pods = 0;
  int stations = 0;
  std::vector<int> to_station;    // pod-major
  std::vector<int> from_station;  // pod-major

  int to(PodId h, StationId s) const { return to_station[h.index() * static_cast<std::size_t>(stations) + s.index()]; }
  int from(PodId h, StationId s) const { return from_station[h.index() * static_cast<std::size_t>(stations) + s.index()]; }
  int usage(PodId h) const;
};

StationFrequencies station_frequencies(const Instance& inst);

struct FixedAssignment {
  std::vector<PlaceId> place_of;  // indexed by pod - 1
  PlaceId operator()(PodId h) const { return place_of.at(h.index()); }
};

// c_hp = sum_s f_to(h,s) c_to(p,s) + f_from(h,s) c_from(s,p).
std::vector<double> fixed_assignment_costs(const Instance& inst, const StationFrequencies& f);
double fixed_assignment_objective(const Instance& inst, const StationFrequencies& f, const FixedAssignment& fa);

// Every pod gets its own place minimizing the total c_hp. Throws Infeasible
// when there are more pods than places.
FixedAssignment compute_fixed_assignment(const Instance& inst);
// Pods sorted by usage (descending, ties by id) paired with places sorted by
// c_avg (ascending, ties by id). Optimal when c_hp factors as usage * c_avg.
FixedAssignment sort_based_assignment(const Instance& inst);

// Moves every stored pod to its assigned place at t = 0, free of charge.
// Results on the rearranged instance are not comparable with other policies.
Instance arrange_for_fixed(const Instance& inst, const FixedAssignment& fa);

class FixedPolicy final : public Policy {
 public:
  explicit FixedPolicy(FixedAssignment fa) : fa_(std::move(fa)) {}
  std::string name() const override { return "fixed"; }
  // Throws Infeasible if the assigned place is not admissible.
  PlaceId choose(const SystemState& s, const DecisionContext& ctx) override;
  const FixedAssignment& assignment() const { return fa_; }

 private:
  FixedAssignment fa_;
};

struct PolicyRun {
  ActionSequence actions;
  double cost = 0.0;
};

// Replays the policy through the game; fill steps are NoOp without asking.
PolicyRun run_policy(const Instance& inst, Policy& policy);
PolicyRun run_policy(const Instance& inst, const DepartureSchedule& schedule, Policy& policy);

}  // namespace prp
