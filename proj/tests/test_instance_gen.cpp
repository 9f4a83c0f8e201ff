#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "prp/game.hpp"
#include "prp/instance_gen.hpp"
#include "prp/instance_io.hpp"

using namespace prp;

TEST(Weights, GeometricSumsToOneWithRatio) {
  for (int n : {1, 2, 10, 441}) {
    const auto w = geometric_weights(n, 20.0).weights;
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LT(w[i], w[i - 1]);
    if (n > 1) EXPECT_NEAR(w.front() / w.back(), 20.0, 1e-9);
  }
}

TEST(Weights, MediumFirstPodWeight) {
  EXPECT_NEAR(geometric_weights(441, 20.0).weights[0], 0.0071399315, 5e-11);
}

TEST(Weights, StationWeightsValidated) {
  EXPECT_THROW(make_station_weights({0.5, 0.4}), std::exception);
  EXPECT_THROW(make_station_weights({1.2, -0.2}), std::exception);
  EXPECT_NO_THROW(make_station_weights({0.6, 0.4}));
}

TEST(Sampling, SinglePodSingleStation) {
  StorageState st(2, 2);
  st.put(PlaceId(2), PodId(2));
  Rng rng(1);
  const auto pw = uniform_pod_weights(2);
  const auto sw = uniform_station_weights(1);
  for (int i = 0; i < 100; ++i) {
    const auto d = next_departure(st, pw, sw, rng);
    EXPECT_EQ(d.pod.value(), 2);
    EXPECT_EQ(d.station.value(), 1);
  }
  EXPECT_THROW(next_departure(StorageState(2, 2), pw, sw, rng), std::exception);
}

TEST(Sampling, EqualWeightsQuarterEach) {
  StorageState st(2, 2);
  st.put(PlaceId(1), PodId(1));
  st.put(PlaceId(2), PodId(2));
  Rng rng(7);
  std::map<std::pair<int, int>, int> count;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto d = next_departure(st, uniform_pod_weights(2), uniform_station_weights(2), rng);
    ++count[{d.pod.value(), d.station.value()}];
  }
  for (auto& [k, c] : count) EXPECT_NEAR(static_cast<double>(c) / draws, 0.25, 0.01);
  EXPECT_EQ(count.size(), 4u);
}

TEST(Sampling, GeometricRatioOfExtremes) {
  StorageState st(10, 10);
  for (int h = 1; h <= 10; ++h) st.put(PlaceId(h), PodId(h));
  Rng rng(3);
  const auto pw = geometric_weights(10, 20.0);
  int first = 0, last = 0;
  for (int i = 0; i < 400000; ++i) {
    const auto d = next_departure(st, pw, uniform_station_weights(2), rng);
    first += d.pod.value() == 1;
    last += d.pod.value() == 10;
  }
  EXPECT_NEAR(static_cast<double>(first) / last, 20.0, 2.0);
}

TEST(Regimes, PeriodicSequence) {
  const Layout l = small_system_layout();
  const auto d = generate_departures(l, {RegimeKind::Periodic, 1}, 4);
  ASSERT_EQ(d.size(), 4u);
  const std::vector<std::pair<int, int>> want{{1, 1}, {2, 2}, {3, 1}, {4, 2}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(d[i].pod.value(), want[i].first);
    EXPECT_EQ(d[i].station.value(), want[i].second);
  }
}

TEST(Regimes, PeriodicPeriods) {
  const Layout l = small_system_layout();
  const auto d = generate_departures(l, {RegimeKind::Periodic, 1}, 200);
  for (std::size_t t = 10; t < d.size(); ++t) EXPECT_EQ(d[t].pod, d[t - 10].pod);
  for (std::size_t t = 2; t < d.size(); ++t) EXPECT_EQ(d[t].station, d[t - 2].station);
}

TEST(Regimes, PeriodicRandomIsBalanced) {
  const Layout l = small_system_layout();
  const auto d = generate_departures(l, {RegimeKind::PeriodicRandom, 9}, 1000);
  std::vector<int> count(10, 0);
  for (const auto& b : d) ++count[b.pod.index()];
  const auto [lo, hi] = std::minmax_element(count.begin(), count.end());
  EXPECT_LE(*hi - *lo, 10);
  EXPECT_NO_THROW(validate_instance(build_instance(l, {RegimeKind::PeriodicRandom, 9}, 1000)));
}

TEST(Regimes, DeterministicAndFeasible) {
  for (auto kind : {RegimeKind::RandomGeometric, RegimeKind::RandomUniform, RegimeKind::PeriodicRandom,
                    RegimeKind::Periodic}) {
    const Layout l = small_system_layout();
    const Instance a = build_instance(l, {kind, 42}, 500);
    const Instance b = build_instance(l, {kind, 42}, 500);
    EXPECT_EQ(instance_fingerprint(a), instance_fingerprint(b)) << to_string(kind);
    EXPECT_NO_THROW(validate_instance(a));
    EXPECT_EQ(parse_regime(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_regime("weekly"), std::exception);
}

TEST(Regimes, SeasonsChangeTheHeaviestPod) {
  const Layout l = small_system_layout();
  const auto plain = generate_departures(l, {RegimeKind::RandomGeometric, 5, 20.0, 0}, 4000);
  const auto seasonal = generate_departures(l, {RegimeKind::RandomGeometric, 5, 20.0, 2000}, 4000);
  auto top = [](const std::vector<Departure>& d, std::size_t a, std::size_t b) {
    std::vector<int> c(10, 0);
    for (std::size_t i = a; i < b; ++i) ++c[d[i].pod.index()];
    return std::max_element(c.begin(), c.end()) - c.begin();
  };
  EXPECT_EQ(top(plain, 0, 2000), 0);
  EXPECT_EQ(top(seasonal, 0, 2000), 0);
  EXPECT_EQ(top(plain, 2000, 4000), 0);
  // the first season is the base season; identical departures up to 2000
  for (std::size_t t = 0; t < 2000; ++t) EXPECT_EQ(plain[t], seasonal[t]);
}

TEST(SmallSystem, Costs) {
  const Instance inst = build_small_system();
  EXPECT_EQ(inst.places, 10);
  EXPECT_EQ(inst.pods, 10);
  EXPECT_EQ(inst.horizon(), 1000);
  for (int s = 1; s <= 2; ++s) {
    EXPECT_DOUBLE_EQ(inst.costs.to_station(PlaceId(1), StationId(s)), 5.0);
    EXPECT_DOUBLE_EQ(inst.costs.from_station(StationId(s), PlaceId(5)), 9.0);
  }
  for (int p = 1; p <= 10; ++p)
    EXPECT_DOUBLE_EQ(inst.costs.to_station(PlaceId(p), StationId(1)), inst.costs.to_station(PlaceId(p), StationId(2)));
  for (int h = 1; h <= 10; ++h) EXPECT_EQ(inst.initial_state.storage().place_of(PodId(h))->value(), h);
}

TEST(MediumSystem, Shape) {
  const MediumLayoutParams p;
  EXPECT_EQ(medium_grid_width(p), 46);
  EXPECT_EQ(medium_grid_height(p), 22);
  const Layout l = medium_system_layout(p, 441);
  EXPECT_EQ(l.places, 504);
  EXPECT_EQ(l.pods, 441);
  EXPECT_EQ(l.capacities, (std::vector<int>{32, 31}));
  EXPECT_EQ(l.station_weights.weights, (std::vector<double>{0.6, 0.4}));
  bool asymmetric = false;
  for (int q = 1; q <= l.places; ++q) {
    const double a = l.costs.to_station(PlaceId(q), StationId(1));
    const double b = l.costs.to_station(PlaceId(q), StationId(2));
    EXPECT_TRUE(std::isfinite(a) && a > 0 && std::isfinite(b) && b > 0);
    asymmetric = asymmetric || a != b;
  }
  EXPECT_TRUE(asymmetric);
  // all 441 pods are stored or queued
  int queued = 0;
  for (const auto& q : l.queues) queued += static_cast<int>(q.size());
  EXPECT_EQ(l.storage.stored_count() + queued, 441);
}

TEST(MediumSystem, SeedChangesPositionsOnly) {
  const Layout a = medium_system_layout({}, 1);
  const Layout b = medium_system_layout({}, 2);
  EXPECT_EQ(a.costs.to_table(), b.costs.to_table());
  EXPECT_NE(a.storage.serialize(), b.storage.serialize());
}

TEST(TinySystem, WithinBounds) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = build_tiny_system(seed);
    EXPECT_LE(inst.places, 6);
    EXPECT_LE(inst.pods, 6);
    EXPECT_LE(inst.horizon(), 8);
    EXPECT_GE(inst.horizon(), 1);
    EXPECT_NO_THROW(validate_instance(inst));
  }
}
