#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "prp/errors.hpp"
#include "prp/game.hpp"
#include "prp/instance_gen.hpp"
#include "prp/instance_io.hpp"
#include "test_support.hpp"

using namespace prp;

TEST(Io, InstanceRoundTrip) {
  const Instance inst = build_small_system({.seed = 11, .horizon = 120});
  const Instance back = instance_from_json(instance_to_json(inst));
  EXPECT_EQ(instance_to_json(back), instance_to_json(inst));
  EXPECT_EQ(instance_fingerprint(back), instance_fingerprint(inst));
  EXPECT_EQ(*back.departures, *inst.departures);
  EXPECT_EQ(back.initial_state, inst.initial_state);
}

TEST(Io, DocumentFields) {
  const auto doc = instance_to_json(prp::testing::worked_example());
  for (const char* k : {"pods", "places", "stations", "cost_to_station", "cost_from_station", "initial_storage",
                        "initial_queues", "departures"})
    EXPECT_TRUE(doc.contains(k)) << k;
  EXPECT_EQ(doc["initial_storage"], nlohmann::json({1, 0, 3, 0, 0, 0}));
  EXPECT_EQ(doc["departures"], nlohmann::json({{3, 2}, {1, 2}}));
}

TEST(Io, MetadataAndFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "prp_io_test";
  std::filesystem::create_directories(dir);
  const Instance inst = prp::testing::worked_example();
  save_instance(inst, dir / "i.json", {{"note", "x"}});
  std::ifstream in(dir / "i.json");
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["metadata"]["note"], "x");
  EXPECT_EQ(instance_fingerprint(load_instance(dir / "i.json")), instance_fingerprint(inst));

  const auto y = ActionSequence::deserialize(std::vector<int>{3, 2});
  save_actions(y, dir / "a.json");
  EXPECT_EQ(load_actions(dir / "a.json"), y);
}

TEST(Io, RejectsBrokenDocuments) {
  auto doc = instance_to_json(prp::testing::worked_example());
  doc["initial_storage"] = {1, 1, 3, 0, 0, 0};
  EXPECT_THROW(instance_from_json(doc), Error);
  doc = instance_to_json(prp::testing::worked_example());
  doc["departures"] = {{2, 1}};  // pod 2 is queued, not stored
  EXPECT_THROW(instance_from_json(doc), Error);
}

TEST(Io, FingerprintSeesEveryField) {
  const Instance a = prp::testing::worked_example();
  const Instance b = with_departures(a, prp::testing::departures_of({{3, 2}, {1, 1}}));
  EXPECT_NE(instance_fingerprint(a), instance_fingerprint(b));
}
