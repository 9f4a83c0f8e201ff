#include "prp/instance_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "prp/errors.hpp"

namespace prp {

using nlohmann::json;

json instance_to_json(const Instance& inst) {
  json doc;
  doc["pods"] = inst.pods;
  doc["places"] = inst.places;
  json stations = json::array();
  for (int s = 0; s < inst.stations(); ++s)
    stations.push_back({{"id", s + 1}, {"capacity", inst.capacities[static_cast<std::size_t>(s)]}});
  doc["stations"] = std::move(stations);

  json to = json::array();
  for (int p = 1; p <= inst.places; ++p) {
    json row = json::array();
    for (int s = 1; s <= inst.stations(); ++s) row.push_back(inst.costs.to_station(PlaceId(p), StationId(s)));
    to.push_back(std::move(row));
  }
  json from = json::array();
  for (int s = 1; s <= inst.stations(); ++s) {
    json row = json::array();
    for (int p = 1; p <= inst.places; ++p) row.push_back(inst.costs.from_station(StationId(s), PlaceId(p)));
    from.push_back(std::move(row));
  }
  doc["cost_to_station"] = std::move(to);
  doc["cost_from_station"] = std::move(from);
  doc["initial_storage"] = inst.initial_state.storage().serialize();

  json queues = json::array();
  for (const auto& q : inst.initial_state.queues()) {
    json items = json::array();
    for (PodId h : q.items()) items.push_back(h.value());
    queues.push_back(std::move(items));
  }
  doc["initial_queues"] = std::move(queues);

  json deps = json::array();
  for (const auto& d : *inst.departures) deps.push_back({d.pod.value(), d.station.value()});
  doc["departures"] = std::move(deps);
  doc["terminal"] = inst.costs.terminal() == TerminalCost::Zero ? "zero" : "return_all";
  return doc;
}

Instance instance_from_json(const json& doc) {
  try {
    const int pods = doc.at("pods").get<int>();
    const int places = doc.at("places").get<int>();
    std::vector<int> capacities;
    for (const auto& st : doc.at("stations")) {
      const int id = st.at("id").get<int>();
      if (id != static_cast<int>(capacities.size()) + 1)
        throw InvalidInstance("station ids must be 1..S in order");
      capacities.push_back(st.at("capacity").get<int>());
    }
    const int stations = static_cast<int>(capacities.size());

    const auto& to_rows = doc.at("cost_to_station");
    const auto& from_rows = doc.at("cost_from_station");
    if (static_cast<int>(to_rows.size()) != places || static_cast<int>(from_rows.size()) != stations)
      throw InvalidInstance("cost table dimensions do not match the layout");
    std::vector<double> to, from;
    for (const auto& row : to_rows) {
      if (static_cast<int>(row.size()) != stations) throw InvalidInstance("cost_to_station row size");
      for (const auto& c : row) to.push_back(c.get<double>());
    }
    for (const auto& row : from_rows) {
      if (static_cast<int>(row.size()) != places) throw InvalidInstance("cost_from_station row size");
      for (const auto& c : row) from.push_back(c.get<double>());
    }
    TerminalCost terminal = TerminalCost::Zero;
    if (doc.contains("terminal")) {
      const auto name = doc.at("terminal").get<std::string>();
      if (name == "return_all") terminal = TerminalCost::ReturnAllPods;
      else if (name != "zero") throw InvalidInstance("unknown terminal cost '" + name + "'");
    }
    CostModel costs(places, stations, std::move(to), std::move(from), terminal);

    const auto occupancy = doc.at("initial_storage").get<std::vector<int>>();
    if (static_cast<int>(occupancy.size()) != places) throw InvalidInstance("initial_storage size");
    for (int v : occupancy)
      if (v < 0 || v > pods) throw InvalidInstance("initial_storage pod out of range");
    StorageState storage = StorageState::deserialize(occupancy, pods);

    std::vector<std::deque<PodId>> queues(static_cast<std::size_t>(stations));
    if (doc.contains("initial_queues")) {
      const auto& qs = doc.at("initial_queues");
      if (static_cast<int>(qs.size()) != stations) throw InvalidInstance("initial_queues size");
      for (std::size_t s = 0; s < qs.size(); ++s)
        for (const auto& h : qs[s]) queues[s].emplace_back(h.get<int>());
    }

    std::vector<Departure> departures;
    for (const auto& d : doc.at("departures")) {
      if (d.size() != 2) throw InvalidInstance("departures must be [pod, station] pairs");
      departures.push_back({PodId(d[0].get<int>()), StationId(d[1].get<int>())});
    }
    return make_instance(pods, places, std::move(capacities), std::move(costs), std::move(storage),
                         std::move(queues), std::move(departures));
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance document: ") + e.what());
  } catch (const InvalidState& e) {
    throw InvalidInstance(e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidInstance(path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const Instance& inst, const std::filesystem::path& path, const json& metadata) {
  json doc = instance_to_json(inst);
  if (!metadata.is_null()) doc["metadata"] = metadata;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump() << '\n';
}

json actions_to_json(const ActionSequence& y) { return y.serialize(); }

ActionSequence actions_from_json(const json& doc) {
  try {
    return ActionSequence::deserialize(doc.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw Error(std::string("malformed action sequence: ") + e.what());
  }
}

ActionSequence load_actions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  json doc;
  in >> doc;
  return actions_from_json(doc);
}

void save_actions(const ActionSequence& y, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << actions_to_json(y).dump() << '\n';
}

std::string instance_fingerprint(const Instance& inst) {
  const std::string dump = instance_to_json(inst).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace prp
