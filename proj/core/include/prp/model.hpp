#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "prp/ids.hpp"

namespace prp {

// Decision at one time step: a storage place for the pod leaving the head of
// the target queue, or NoOp while that queue is still filling up.
class Action {
 public:
  constexpr Action() = default;
  static constexpr Action noop() { return Action(); }
  static constexpr Action place(PlaceId p) { return Action(p); }
  // 0 encodes NoOp, as in serialized sequences.
  static constexpr Action from_int(int v) { return v == 0 ? noop() : place(PlaceId(v)); }

  constexpr bool is_noop() const { return !place_.has_value(); }
  constexpr PlaceId target() const { return *place_; }
  constexpr int to_int() const { return place_ ? place_->value() : 0; }

  friend constexpr bool operator==(const Action&, const Action&) = default;

 private:
  constexpr explicit Action(PlaceId p) : place_(p) {}
  std::optional<PlaceId> place_;
};

struct Departure {
  PodId pod;
  StationId station;
  friend bool operator==(const Departure&, const Departure&) = default;
};

// FIFO queue in front of a picker; head() is the pod at the picker.
class StationQueue {
 public:
  StationQueue() = default;
  explicit StationQueue(int capacity, std::deque<PodId> items = {});

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }
  bool full() const { return size() >= capacity_; }
  bool contains(PodId h) const;
  PodId head() const { return items_.front(); }
  PodId at(int i) const { return items_.at(static_cast<std::size_t>(i)); }
  const std::deque<PodId>& items() const { return items_; }

  // In-place enq: appends h and, if the queue was full, removes and returns
  // the former head.
  std::optional<PodId> push(PodId h);
  PodId pop();

  friend bool operator==(const StationQueue&, const StationQueue&) = default;

 private:
  int capacity_ = 0;
  std::deque<PodId> items_;
};

// Occupancy of the storage area. Keeps a pod -> place index alongside the
// place -> pod table; both are updated together by put/remove.
class StorageState {
 public:
  StorageState() = default;
  StorageState(int places, int pods);

  int place_count() const { return static_cast<int>(occupancy_.size()); }
  int pod_capacity() const { return static_cast<int>(location_.size()); }
  int stored_count() const { return stored_; }

  std::optional<PodId> at(PlaceId p) const { return occupancy_.at(p.index()); }
  bool is_free(PlaceId p) const { return !occupancy_.at(p.index()).has_value(); }
  std::optional<PlaceId> place_of(PodId h) const { return location_.at(h.index()); }
  bool contains(PodId h) const { return place_of(h).has_value(); }

  void put(PlaceId p, PodId h);
  PodId remove(PlaceId p);

  // Place-indexed pod ids with 0 for a free place.
  std::vector<int> serialize() const;
  static StorageState deserialize(std::span<const int> occupancy, int pods);

  friend bool operator==(const StorageState&, const StorageState&) = default;

 private:
  std::vector<std::optional<PodId>> occupancy_;
  std::vector<std::optional<PlaceId>> location_;
  int stored_ = 0;
};

enum class TerminalCost { Zero, ReturnAllPods };

// Transport cost tables plus the terminal cost selector.
class CostModel {
 public:
  CostModel() = default;
  // to_station is place-major (places x stations), from_station is
  // station-major (stations x places).
  CostModel(int places, int stations, std::vector<double> to_station,
            std::vector<double> from_station, TerminalCost terminal = TerminalCost::Zero,
            double discount = 1.0);

  int places() const { return places_; }
  int stations() const { return stations_; }
  TerminalCost terminal() const { return terminal_; }
  double discount() const { return discount_; }

  double to_station(PlaceId p, StationId s) const {
    return to_[p.index() * static_cast<std::size_t>(stations_) + s.index()];
  }
  double from_station(StationId s, PlaceId p) const {
    return from_[s.index() * static_cast<std::size_t>(places_) + p.index()];
  }
  // Return leg from `from` plus the next trip to `to` when the pod leaves
  // storage again within the horizon.
  double decision(StationId from, PlaceId p, std::optional<StationId> to) const {
    return from_station(from, p) + (to ? to_station(p, *to) : 0.0);
  }

  const std::vector<double>& to_table() const { return to_; }
  const std::vector<double>& from_table() const { return from_; }

  CostModel with_terminal(TerminalCost t) const;

 private:
  int places_ = 0;
  int stations_ = 0;
  std::vector<double> to_;
  std::vector<double> from_;
  TerminalCost terminal_ = TerminalCost::Zero;
  double discount_ = 1.0;
};

using DepartureList = std::shared_ptr<const std::vector<Departure>>;

// Storage, the station queues, and the clock t. The remaining departures are
// the shared list from index t on.
class SystemState {
 public:
  SystemState() = default;
  SystemState(StorageState storage, std::vector<StationQueue> queues, DepartureList departures,
              int clock = 0);

  const StorageState& storage() const { return storage_; }
  const std::vector<StationQueue>& queues() const { return queues_; }
  const StationQueue& queue(StationId s) const { return queues_.at(s.index()); }
  int clock() const { return clock_; }
  int horizon() const { return departures_ ? static_cast<int>(departures_->size()) : 0; }
  bool finished() const { return clock_ >= horizon(); }
  const Departure& current_departure() const { return departures_->at(static_cast<std::size_t>(clock_)); }
  std::span<const Departure> future_departures() const;
  const DepartureList& departure_list() const { return departures_; }

  StorageState& mutable_storage() { return storage_; }
  std::vector<StationQueue>& mutable_queues() { return queues_; }
  void advance_clock() { ++clock_; }

  friend bool operator==(const SystemState& a, const SystemState& b);

 private:
  StorageState storage_;
  std::vector<StationQueue> queues_;
  DepartureList departures_;
  int clock_ = 0;
};

// Problem instance: layout, costs, initial state at t=0 and the departures.
struct Instance {
  int pods = 0;
  int places = 0;
  std::vector<int> capacities;  // indexed by station - 1
  CostModel costs;
  SystemState initial_state;
  DepartureList departures;

  int stations() const { return static_cast<int>(capacities.size()); }
  int horizon() const { return departures ? static_cast<int>(departures->size()) : 0; }
  const Departure& departure(int t) const { return departures->at(static_cast<std::size_t>(t)); }
};

// Builds an instance and validates it (see validate_instance).
Instance make_instance(int pods, int places, std::vector<int> capacities, CostModel costs,
                       StorageState initial_storage, std::vector<std::deque<PodId>> initial_queues,
                       std::vector<Departure> departures);

// Same layout and state, different costs or departures.
Instance with_departures(const Instance& inst, std::vector<Departure> departures);
Instance with_initial_storage(const Instance& inst, StorageState storage);
Instance with_costs(const Instance& inst, CostModel costs);

struct ActionSequence {
  std::vector<Action> actions;

  std::size_t size() const { return actions.size(); }
  const Action& operator[](std::size_t t) const { return actions[t]; }
  std::vector<int> serialize() const;
  static ActionSequence deserialize(std::span<const int> values);

  friend bool operator==(const ActionSequence&, const ActionSequence&) = default;
};

// A pod's stay on one place over [begin, end). Times are state times: the
// pod placed by the decision at step t is in storage from time t+1, and a pod
// whose departure is processed at step t' has left by time t'+1.
struct OccupationInterval {
  PlaceId place;
  PodId pod;
  int begin = 0;
  int end = 0;
  std::optional<StationId> from_station;  // none for initial occupancy
  std::optional<StationId> to_station;    // none if the pod never leaves again
  bool initial = false;

  int length() const { return end - begin; }
  int decision_step() const { return begin - 1; }
  friend bool operator==(const OccupationInterval&, const OccupationInterval&) = default;
};

}  // namespace prp
