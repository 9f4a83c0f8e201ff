#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "prp/model.hpp"

namespace prp {

// Instance document:
//   {pods, places, stations:[{id,capacity}], cost_to_station:[place][station],
//    cost_from_station:[station][place], initial_storage:[pod-or-0 per place],
//    initial_queues:[[pod,...] per station, head first], departures:[[pod,station],...],
//    terminal:"zero"|"return_all"}
// An optional "metadata" object is carried through untouched.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path,
                   const nlohmann::json& metadata = nlohmann::json());

// Action sequences are plain arrays of place ids with 0 for NoOp.
nlohmann::json actions_to_json(const ActionSequence& y);
ActionSequence actions_from_json(const nlohmann::json& doc);
ActionSequence load_actions(const std::filesystem::path& path);
void save_actions(const ActionSequence& y, const std::filesystem::path& path);

// FNV-1a over the canonical instance dump; used to detect mutation.
std::string instance_fingerprint(const Instance& inst);

}  // namespace prp
