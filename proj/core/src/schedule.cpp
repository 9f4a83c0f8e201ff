#include "prp/schedule.hpp"

#include <algorithm>
#include <string>

#include "prp/errors.hpp"

namespace prp {

DepartureSchedule::DepartureSchedule(const Instance& inst) {
  const int n = inst.horizon();
  departures_of_.assign(static_cast<std::size_t>(inst.pods), {});
  for (int t = 0; t < n; ++t) {
    const auto& d = inst.departure(t);
    if (d.pod.value() < 1 || d.pod.value() > inst.pods)
      throw InvalidInstance("step " + std::to_string(t) + ": unknown pod " +
                            std::to_string(d.pod.value()));
    if (d.station.value() < 1 || d.station.value() > inst.stations())
      throw InvalidInstance("step " + std::to_string(t) + ": unknown station " +
                            std::to_string(d.station.value()));
    departures_of_[d.pod.index()].push_back(t);
  }

  const auto& storage = inst.initial_state.storage();
  std::vector<char> in_storage(static_cast<std::size_t>(inst.pods), 0);
  for (int h = 1; h <= inst.pods; ++h) in_storage[static_cast<std::size_t>(h - 1)] = storage.contains(PodId(h));
  std::vector<StationQueue> queues = inst.initial_state.queues();
  int stored = storage.stored_count();

  steps_.resize(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const auto& d = inst.departure(t);
    if (!in_storage[d.pod.index()])
      throw InvalidInstance("step " + std::to_string(t) + ": pod " + std::to_string(d.pod.value()) +
                            " departs but is not in storage");
    StepInfo& info = steps_[static_cast<std::size_t>(t)];
    info.pod = d.pod;
    info.station = d.station;
    auto& q = queues[d.station.index()];
    info.fill = !q.full();
    if (!info.fill) info.admissible = inst.places - stored + 1;
    in_storage[d.pod.index()] = 0;
    --stored;
    info.returning = q.push(d.pod);
    if (info.returning) {
      in_storage[info.returning->index()] = 1;
      ++stored;
      info.next_departure = next_departure_at_or_after(*info.returning, t + 1);
      if (info.next_departure) info.next_station = inst.departure(*info.next_departure).station;
      decision_steps_.push_back(t);
    }
  }

  initial_busy_end_.assign(static_cast<std::size_t>(inst.places), 0);
  for (int p = 1; p <= inst.places; ++p) {
    if (auto h = storage.at(PlaceId(p))) {
      auto first = next_departure_at_or_after(*h, 0);
      initial_busy_end_[static_cast<std::size_t>(p - 1)] = first ? *first + 1 : n + 1;
    }
  }
}

std::optional<int> DepartureSchedule::next_departure_at_or_after(PodId h, int t) const {
  const auto& steps = departures_of_.at(h.index());
  auto it = std::lower_bound(steps.begin(), steps.end(), t);
  if (it == steps.end()) return std::nullopt;
  return *it;
}

int DepartureSchedule::busy_end(int t) const {
  const auto& info = step(t);
  return info.next_departure ? *info.next_departure + 1 : horizon() + 1;
}

int DepartureSchedule::returns_from(PodId h, StationId s) const {
  int count = 0;
  for (const auto& info : steps_)
    if (info.returning == h && info.station == s) ++count;
  return count;
}

}  // namespace prp
