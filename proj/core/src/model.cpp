#include "prp/model.hpp"

#include <algorithm>
#include <string>

#include "prp/errors.hpp"
#include "prp/game.hpp"

namespace prp {

const char* to_string(ActionError e) {
  switch (e) {
    case ActionError::PlaceBusy: return "place-busy";
    case ActionError::WrongPhase: return "wrong-phase-action";
    case ActionError::UnknownPlace: return "unknown-place";
    case ActionError::NoDeparture: return "no-departure";
  }
  return "unknown";
}

StationQueue::StationQueue(int capacity, std::deque<PodId> items)
    : capacity_(capacity), items_(std::move(items)) {
  if (capacity_ < 1) throw InvalidState("station capacity must be positive");
  if (size() > capacity_) throw InvalidState("queue longer than its capacity");
  for (std::size_t i = 0; i < items_.size(); ++i)
    for (std::size_t j = i + 1; j < items_.size(); ++j)
      if (items_[i] == items_[j])
        throw InvalidState("pod " + std::to_string(items_[i].value()) + " twice in a queue");
}

bool StationQueue::contains(PodId h) const {
  return std::find(items_.begin(), items_.end(), h) != items_.end();
}

std::optional<PodId> StationQueue::push(PodId h) {
  if (contains(h)) throw InvalidState("pod " + std::to_string(h.value()) + " already queued");
  std::optional<PodId> ejected;
  if (full()) {
    ejected = items_.front();
    items_.pop_front();
  }
  items_.push_back(h);
  return ejected;
}

PodId StationQueue::pop() {
  if (items_.empty()) throw InvalidState("deq on empty queue");
  PodId h = items_.front();
  items_.pop_front();
  return h;
}

StorageState::StorageState(int places, int pods)
    : occupancy_(static_cast<std::size_t>(places)), location_(static_cast<std::size_t>(pods)) {}

void StorageState::put(PlaceId p, PodId h) {
  if (p.value() < 1 || p.value() > place_count())
    throw InvalidState("place " + std::to_string(p.value()) + " out of range");
  if (h.value() < 1 || h.value() > pod_capacity())
    throw InvalidState("pod " + std::to_string(h.value()) + " out of range");
  if (occupancy_[p.index()])
    throw InvalidState("place " + std::to_string(p.value()) + " is occupied");
  if (location_[h.index()])
    throw InvalidState("pod " + std::to_string(h.value()) + " already stored");
  occupancy_[p.index()] = h;
  location_[h.index()] = p;
  ++stored_;
}

PodId StorageState::remove(PlaceId p) {
  auto h = occupancy_.at(p.index());
  if (!h) throw InvalidState("place " + std::to_string(p.value()) + " is already free");
  occupancy_[p.index()].reset();
  location_[h->index()].reset();
  --stored_;
  return *h;
}

std::vector<int> StorageState::serialize() const {
  std::vector<int> out;
  out.reserve(occupancy_.size());
  for (const auto& h : occupancy_) out.push_back(h ? h->value() : 0);
  return out;
}

StorageState StorageState::deserialize(std::span<const int> occupancy, int pods) {
  StorageState s(static_cast<int>(occupancy.size()), pods);
  for (std::size_t i = 0; i < occupancy.size(); ++i)
    if (occupancy[i] != 0) s.put(PlaceId(static_cast<int>(i) + 1), PodId(occupancy[i]));
  return s;
}

CostModel::CostModel(int places, int stations, std::vector<double> to_station,
                     std::vector<double> from_station, TerminalCost terminal, double discount)
    : places_(places),
      stations_(stations),
      to_(std::move(to_station)),
      from_(std::move(from_station)),
      terminal_(terminal),
      discount_(discount) {
  const auto cells = static_cast<std::size_t>(places) * static_cast<std::size_t>(stations);
  if (to_.size() != cells || from_.size() != cells)
    throw InvalidInstance("cost tables must have places x stations entries");
  auto negative = [](double c) { return !(c >= 0.0); };
  if (std::any_of(to_.begin(), to_.end(), negative) ||
      std::any_of(from_.begin(), from_.end(), negative))
    throw InvalidInstance("cost entries must be nonnegative");
  if (!(discount_ > 0.0)) throw InvalidInstance("discount must be positive");
}

CostModel CostModel::with_terminal(TerminalCost t) const {
  CostModel c = *this;
  c.terminal_ = t;
  return c;
}

SystemState::SystemState(StorageState storage, std::vector<StationQueue> queues,
                         DepartureList departures, int clock)
    : storage_(std::move(storage)),
      queues_(std::move(queues)),
      departures_(std::move(departures)),
      clock_(clock) {
  if (!departures_) departures_ = std::make_shared<const std::vector<Departure>>();
}

std::span<const Departure> SystemState::future_departures() const {
  std::span<const Departure> all(*departures_);
  return all.subspan(static_cast<std::size_t>(std::min(clock_, horizon())));
}

bool operator==(const SystemState& a, const SystemState& b) {
  if (a.clock_ != b.clock_ || !(a.storage_ == b.storage_) || !(a.queues_ == b.queues_))
    return false;
  auto fa = a.future_departures();
  auto fb = b.future_departures();
  return std::equal(fa.begin(), fa.end(), fb.begin(), fb.end());
}

Instance make_instance(int pods, int places, std::vector<int> capacities, CostModel costs,
                       StorageState initial_storage, std::vector<std::deque<PodId>> initial_queues,
                       std::vector<Departure> departures) {
  if (initial_queues.size() != capacities.size())
    throw InvalidInstance("one initial queue per station required");
  std::vector<StationQueue> queues;
  queues.reserve(capacities.size());
  for (std::size_t s = 0; s < capacities.size(); ++s)
    queues.emplace_back(capacities[s], std::move(initial_queues[s]));

  Instance inst;
  inst.pods = pods;
  inst.places = places;
  inst.capacities = std::move(capacities);
  inst.costs = std::move(costs);
  inst.departures = std::make_shared<const std::vector<Departure>>(std::move(departures));
  inst.initial_state = SystemState(std::move(initial_storage), std::move(queues), inst.departures);
  validate_instance(inst);
  return inst;
}

Instance with_departures(const Instance& inst, std::vector<Departure> departures) {
  Instance out = inst;
  out.departures = std::make_shared<const std::vector<Departure>>(std::move(departures));
  out.initial_state = SystemState(inst.initial_state.storage(), inst.initial_state.queues(),
                                  out.departures);
  validate_instance(out);
  return out;
}

Instance with_initial_storage(const Instance& inst, StorageState storage) {
  Instance out = inst;
  out.initial_state = SystemState(std::move(storage), inst.initial_state.queues(), inst.departures);
  validate_instance(out);
  return out;
}

Instance with_costs(const Instance& inst, CostModel costs) {
  Instance out = inst;
  out.costs = std::move(costs);
  validate_instance(out);
  return out;
}

std::vector<int> ActionSequence::serialize() const {
  std::vector<int> out;
  out.reserve(actions.size());
  for (const auto& a : actions) out.push_back(a.to_int());
  return out;
}

ActionSequence ActionSequence::deserialize(std::span<const int> values) {
  ActionSequence y;
  y.actions.reserve(values.size());
  for (int v : values) {
    if (v < 0) throw InvalidState("negative action value");
    y.actions.push_back(Action::from_int(v));
  }
  return y;
}

}  // namespace prp
