#include <gtest/gtest.h>

#include "prp/game.hpp"
#include "prp/genetic.hpp"
#include "prp/instance_gen.hpp"
#include "prp/policies.hpp"
#include "test_support.hpp"

using namespace prp;
using namespace prp::testing;

namespace {

PlaceOrder order_of(std::vector<int> ids) {
  std::vector<PlaceId> o;
  for (int i : ids) o.emplace_back(i);
  return make_place_order("custom", o);
}

std::vector<int> decode(const Instance& inst, const PlaceOrder& g, Genes genes) {
  const DepartureSchedule sched(inst);
  return decode2(genes, inst, sched, g).serialize();
}

}  // namespace

TEST(PlaceOrders, NamedOrdersOnTheLine) {
  const Instance inst = ga_example();
  EXPECT_EQ(named_place_order(inst, "close").order, order_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}).order);
  EXPECT_EQ(named_place_order(inst, "far").order, order_of({10, 9, 8, 7, 6, 5, 4, 3, 2, 1}).order);
  EXPECT_EQ(named_place_order(inst, "zigzag").order, order_of({1, 6, 2, 7, 3, 8, 4, 9, 5, 10}).order);
  EXPECT_EQ(named_place_order(inst, "avg-cost").order, order_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}).order);
  EXPECT_THROW(named_place_order(inst, "spiral"), std::exception);
  const auto z = named_place_order(inst, "zigzag");
  for (std::size_t i = 0; i < z.order.size(); ++i) EXPECT_EQ(z.rank[z.order[i].index()], static_cast<int>(i));
}

TEST(Decode2, ChromosomeExamples) {
  const Instance inst = ga_example();
  const auto close = named_place_order(inst, "close");
  const auto far = named_place_order(inst, "far");
  const auto zig = named_place_order(inst, "zigzag");
  EXPECT_EQ(decode(inst, close, {1, 1}), (std::vector<int>{4, 5}));
  EXPECT_EQ(decode(inst, far, {5, 5}), (std::vector<int>{4, 5}));
  EXPECT_EQ(decode(inst, zig, {4, 5}), (std::vector<int>{4, 5}));
  // mutated first gene: the pod goes to place 5, the second gene changes meaning
  EXPECT_EQ(decode(inst, close, {2, 1}), (std::vector<int>{5, 4}));
  EXPECT_EQ(decode(inst, far, {4, 5}), (std::vector<int>{5, 4}));
  EXPECT_EQ(decode(inst, zig, {6, 5}), (std::vector<int>{5, 9}));
}

TEST(Decode2, IndicesWrapAndStayFeasible) {
  const Instance inst = build_small_system({.seed = 3, .horizon = 300});
  const DepartureSchedule sched(inst);
  const auto g = named_place_order(inst, "zigzag");
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    Genes genes(sched.decision_steps().size());
    for (int& x : genes) x = static_cast<int>(rng.below(1000));
    const auto y = decode2(genes, inst, sched, g);
    EXPECT_TRUE(check_feasible(inst, y).ok);
    EXPECT_TRUE(evaluate(inst, sched, y).has_value());
    EXPECT_NEAR(*evaluate(inst, sched, y), *ref_cost(inst, y), 1e-9);
  }
}

TEST(Decode1, PlacesVerbatimAndEvaluateDetectsClashes) {
  const Instance inst = ga_example();
  const DepartureSchedule sched(inst);
  EXPECT_EQ(decode1({4, 5}, sched).serialize(), (std::vector<int>{4, 5}));
  EXPECT_FALSE(evaluate(inst, sched, decode1({1, 5}, sched)).has_value());
  EXPECT_FALSE(evaluate(inst, sched, decode1({4, 4}, sched)).has_value());
  EXPECT_DOUBLE_EQ(*evaluate(inst, sched, decode1({4, 5}, sched)), *ref_cost(inst, std::vector<int>{4, 5}));
}

TEST(Evolve, SeededAndMonotone) {
  const Instance inst = build_small_system({.seed = 2018, .horizon = 200});
  const auto g = named_place_order(inst, "avg-cost");
  GaConfig cfg;
  cfg.population = 30;
  cfg.max_generations = 30;
  cfg.seed = 5;
  const auto a = evolve(inst, Encoding::Genetic2, &g, cfg);
  const auto b = evolve(inst, Encoding::Genetic2, &g, cfg);
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.history, b.history);
  for (std::size_t i = 1; i < a.history.size(); ++i) EXPECT_LE(a.history[i], a.history[i - 1]);
  EXPECT_DOUBLE_EQ(a.cost, a.history.back());
  EXPECT_NEAR(a.cost, *ref_cost(inst, a.actions), 1e-9);
  EXPECT_EQ(a.infeasible, 0u);
  EXPECT_EQ(a.generations, 30);
}

TEST(Evolve, Genetic1SeesInfeasibleChildren) {
  const Instance inst = build_small_system({.seed = 2018, .horizon = 200});
  GaConfig cfg;
  cfg.population = 30;
  cfg.max_generations = 20;
  const auto r = evolve(inst, Encoding::Genetic1, nullptr, cfg);
  EXPECT_GT(r.infeasible, 0u);
  EXPECT_TRUE(check_feasible(inst, r.actions).ok);
}

TEST(Evolve, StallStopsTheSearch) {
  const Instance inst = build_small_system({.seed = 1, .horizon = 50});
  const auto g = named_place_order(inst, "close");
  GaConfig cfg;
  cfg.population = 10;
  cfg.stall_generations = 5;
  const auto r = evolve(inst, Encoding::Genetic2, &g, cfg);
  ASSERT_GE(r.history.size(), 6u);
  const auto n = r.history.size();
  EXPECT_EQ(r.history[n - 1], r.history[n - 6]);
}
