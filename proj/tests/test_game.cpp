#include <gtest/gtest.h>

#include "prp/errors.hpp"
#include "prp/game.hpp"
#include "prp/instance_gen.hpp"
#include "prp/policies.hpp"
#include "prp/schedule.hpp"
#include "test_support.hpp"

using namespace prp;
using namespace prp::testing;

TEST(Queue, EnqueueEjectsHeadWhenFull) {
  StationQueue q(2, {PodId(4), PodId(6)});
  const auto r = enqueue(q, PodId(3));
  ASSERT_TRUE(r.ejected.has_value());
  EXPECT_EQ(r.ejected->value(), 4);
  EXPECT_EQ(r.queue.size(), 2);
  EXPECT_EQ(r.queue.at(0).value(), 6);
  EXPECT_EQ(r.queue.at(1).value(), 3);
}

TEST(Queue, EnqueueBelowCapacityKeepsAll) {
  StationQueue q(3, {PodId(1)});
  const auto r = enqueue(q, PodId(2));
  EXPECT_FALSE(r.ejected.has_value());
  EXPECT_EQ(r.queue.size(), 2);
}

TEST(Queue, DuplicatePodRejected) {
  StationQueue q(3, {PodId(1)});
  EXPECT_THROW(enqueue(q, PodId(1)), InvalidState);
}

TEST(Transition, WorkedExample) {
  const Instance inst = worked_example();
  const SystemState s0 = inst.initial_state;
  EXPECT_FALSE(in_fill_phase(s0));
  const auto d = admissible_actions(s0);
  // free places 2, 4, 5, 6 plus place 3 being vacated
  std::vector<int> ids;
  for (Action a : d) ids.push_back(a.to_int());
  EXPECT_EQ(ids, (std::vector<int>{2, 3, 4, 5, 6}));

  const SystemState s1 = transition(s0, Action::place(PlaceId(3)));
  EXPECT_EQ(s1.storage().serialize(), (std::vector<int>{1, 0, 4, 0, 0, 0}));
  ASSERT_EQ(s1.queue(StationId(2)).size(), 2);
  EXPECT_EQ(s1.queue(StationId(2)).at(0).value(), 6);
  EXPECT_EQ(s1.queue(StationId(2)).at(1).value(), 3);
  EXPECT_EQ(s1.queue(StationId(1)).at(0).value(), 5);
  EXPECT_EQ(s1.clock(), 1);
  EXPECT_EQ(s1.future_departures().size(), 1u);
}

TEST(Transition, StepCostIsBothLegs) {
  const Instance inst = worked_example();
  // pod 3 leaves place 3 (3 + 1), pod 4 goes to place 5 (5 + 1)
  EXPECT_DOUBLE_EQ(step_cost(inst.initial_state, Action::place(PlaceId(5)), inst.costs), 4.0 + 6.0);
}

TEST(Transition, InadmissibleActionsThrow) {
  const Instance inst = worked_example();
  EXPECT_THROW(transition(inst.initial_state, Action::place(PlaceId(1))), InvalidAction);
  EXPECT_THROW(transition(inst.initial_state, Action::noop()), InvalidAction);
  EXPECT_THROW(transition(inst.initial_state, Action::place(PlaceId(7))), InvalidAction);
  try {
    transition(inst.initial_state, Action::place(PlaceId(1)));
  } catch (const InvalidAction& e) {
    EXPECT_EQ(e.reason(), ActionError::PlaceBusy);
    EXPECT_EQ(e.step(), 0);
  }
}

TEST(Transition, FillPhaseOnlyNoop) {
  const Instance inst = make_instance(2, 3, {2}, line_costs(3, 1, 0.0), storage_of({1, 2, 0}, 2), queues_of({{}}),
                                      departures_of({{1, 1}, {2, 1}}));
  EXPECT_TRUE(in_fill_phase(inst.initial_state));
  const auto d = admissible_actions(inst.initial_state);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_TRUE(d[0].is_noop());
  EXPECT_THROW(transition(inst.initial_state, Action::place(PlaceId(3))), InvalidAction);
  EXPECT_DOUBLE_EQ(total_cost(inst, ActionSequence::deserialize(std::vector<int>{0, 0})), 1.0 + 2.0);
}

TEST(Transition, VacatedPlaceIsAdmissibleWhenStorageFull) {
  const Instance inst = make_instance(3, 2, {1}, line_costs(2, 1, 0.0), storage_of({1, 2}, 3), queues_of({{3}}),
                                      departures_of({{2, 1}}));
  const auto d = admissible_places(inst.initial_state);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].value(), 2);
}

TEST(Cost, TotalMatchesReference) {
  const Instance inst = worked_example();
  for (int a0 : {2, 3, 4, 5, 6}) {
    SystemState s1 = transition(inst.initial_state, Action::place(PlaceId(a0)));
    for (PlaceId a1 : admissible_places(s1)) {
      const std::vector<int> y{a0, a1.value()};
      const auto ref = ref_cost(inst, y);
      ASSERT_TRUE(ref.has_value());
      EXPECT_DOUBLE_EQ(total_cost(inst, ActionSequence::deserialize(y)), *ref);
    }
  }
}

TEST(Cost, ReturnAllTerminalUsesCheapestMatching) {
  // Two queued pods, places 1..3 with from-costs 1,2,3; place 1 busy.
  Instance inst = make_instance(3, 3, {2}, line_costs(3, 1, 0.0), storage_of({1, 0, 0}, 3), queues_of({{2, 3}}), {});
  inst = with_costs(inst, inst.costs.with_terminal(TerminalCost::ReturnAllPods));
  EXPECT_DOUBLE_EQ(terminal_cost(inst.initial_state, inst.costs), 2.0 + 3.0);
}

TEST(Feasibility, ReportsFirstViolation) {
  const Instance inst = worked_example();
  auto v = check_feasible(inst, ActionSequence::deserialize(std::vector<int>{3, 3}));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.step, 1);
  EXPECT_EQ(v.reason, FeasibilityIssue::PlaceBusy);
  v = check_feasible(inst, ActionSequence::deserialize(std::vector<int>{3}));
  EXPECT_EQ(v.reason, FeasibilityIssue::LengthMismatch);
  EXPECT_TRUE(check_feasible(inst, ActionSequence::deserialize(std::vector<int>{3, 2})).ok);
  // pod 1 vacates place 1 at step 1, so the place is admissible again
  EXPECT_TRUE(check_feasible(inst, ActionSequence::deserialize(std::vector<int>{3, 1})).ok);
}

TEST(Intervals, PartitionEachPlace) {
  const Instance inst = build_small_system({.seed = 7, .horizon = 200});
  CheapestPolicy p(CheapestVariant::Decision);
  const auto run = run_policy(inst, p);
  const auto ivs = occupation_intervals(inst, run.actions);
  const auto occ = ref_occupancy(inst, run.actions.serialize());
  // every interval agrees with the reference occupancy at each time it covers
  for (const auto& iv : ivs)
    for (int t = iv.begin; t < std::min(iv.end, inst.horizon() + 1); ++t)
      EXPECT_EQ(occ[static_cast<std::size_t>(t)][iv.place.index()], iv.pod.value()) << "t=" << t;
  // every occupied cell is covered by exactly one interval
  for (int t = 0; t <= inst.horizon(); ++t)
    for (int p = 1; p <= inst.places; ++p) {
      int covering = 0;
      for (const auto& iv : ivs) covering += iv.place.value() == p && iv.begin <= t && t < iv.end;
      EXPECT_EQ(covering, occ[static_cast<std::size_t>(t)][static_cast<std::size_t>(p - 1)] != 0 ? 1 : 0);
    }
}

TEST(Schedule, MatchesReplay) {
  const Instance inst = build_small_system({.seed = 3, .horizon = 300});
  const DepartureSchedule sched(inst);
  SystemState s = inst.initial_state;
  for (int t = 0; t < inst.horizon(); ++t) {
    const auto& info = sched.step(t);
    EXPECT_EQ(info.fill, in_fill_phase(s));
    EXPECT_EQ(info.admissible, info.fill ? 0 : static_cast<int>(admissible_places(s).size()));
    if (!info.fill) {
      ASSERT_TRUE(info.returning.has_value());
      EXPECT_EQ(*info.returning, *returning_pod(s));
      if (info.next_departure) {
        EXPECT_GT(*info.next_departure, t);
        EXPECT_EQ(inst.departure(*info.next_departure).pod, *info.returning);
        EXPECT_EQ(sched.busy_end(t), *info.next_departure + 1);
      } else {
        EXPECT_EQ(sched.busy_end(t), inst.horizon() + 1);
      }
    }
    apply_action(s, admissible_actions(s).front(), inst.costs);
  }
}

// Property: random admissible walks keep every pod in exactly one location.
TEST(Property, PodConservation) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = build_tiny_system(seed);
    Rng rng(seed, 99);
    SystemState s = inst.initial_state;
    double acc = 0.0;
    std::vector<int> y;
    while (!s.finished()) {
      const auto d = admissible_actions(s);
      const Action a = d[rng.below(d.size())];
      y.push_back(a.to_int());
      acc += apply_action(s, a, inst.costs);
      std::vector<int> seen(static_cast<std::size_t>(inst.pods), 0);
      for (int p = 1; p <= inst.places; ++p)
        if (auto h = s.storage().at(PlaceId(p))) ++seen[h->index()];
      for (const auto& q : s.queues()) {
        EXPECT_LE(q.size(), q.capacity());
        for (PodId h : q.items()) ++seen[h.index()];
      }
      for (int c : seen) EXPECT_EQ(c, 1);
    }
    EXPECT_DOUBLE_EQ(acc, *ref_cost(inst, y));
  }
}
