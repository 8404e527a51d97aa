#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pathprog/bounds.hpp"
#include "pathprog/error.hpp"
#include "pathprog/simulator.hpp"

using namespace pathprog;
using test::P;

namespace {

PathCollection example_collection(const DagTask& task) {
  const auto paths = test::example_paths();
  return PathCollection(task, {paths[4], paths[5], paths[0]});
}

ErrorCode thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Priorities, TwoLevelHasPathProgression) {
  const auto task = test::example_dag();
  const auto c = example_collection(task);
  const auto prio = PriorityAssignment::two_level(c);
  EXPECT_TRUE(prio.has_path_progression(c));
  EXPECT_EQ(prio.priority[3], 2);
  EXPECT_EQ(prio.priority[8], 2);
  EXPECT_EQ(prio.priority[0], 1);
  PriorityAssignment flat{std::vector<int>(task.size(), 1)};
  EXPECT_FALSE(flat.has_path_progression(c));
}

TEST(Dedicated, ExampleCollectionOnThreeProcessors) {
  const auto task = test::example_dag();
  const auto c = example_collection(task);
  SimulationOptions opt;
  opt.collection = &c;
  const auto trace = simulate_dedicated(task, PriorityAssignment::two_level(c), 3, opt);
  EXPECT_TRUE(trace.completed);
  EXPECT_EQ(trace.makespan, Time(10));
  EXPECT_LE(trace.makespan, bound_preemptive(task, c, 3));
  EXPECT_EQ(trace.envelope, P({1, 7, 5, 6}));
  EXPECT_EQ(trace.preemptions, 0U);
  EXPECT_TRUE(trace.invariant_violations.empty());
  EXPECT_EQ(trace.busy_time + trace.nonbusy_time, trace.makespan);
  EXPECT_EQ(trace.busy_time, Time(10));
}

TEST(Dedicated, SingleVertexAndChain) {
  const auto one = test::isolated({5});
  const auto c1 = PathCollection(one, {P({1})});
  const auto t1 = simulate_dedicated(one, PriorityAssignment::two_level(c1), 4);
  EXPECT_EQ(t1.makespan, Time(5));
  EXPECT_EQ(t1.envelope, P({1}));

  const auto chain = test::chain({2, 3, 4});
  const auto c2 = PathCollection(chain, {P({1, 2, 3})});
  const auto t2 = simulate_dedicated(chain, PriorityAssignment::two_level(c2), 2);
  EXPECT_EQ(t2.makespan, Time(9));
  EXPECT_EQ(t2.nonbusy_time, Time(0));
}

TEST(Dedicated, EnvelopeOfIsolatedVerticesIsTheLaterOne) {
  const auto task = test::isolated({3, 5});
  const auto c = PathCollection(task, {P({2})});
  const auto trace = simulate_dedicated(task, PriorityAssignment::two_level(c), 2);
  EXPECT_EQ(trace.makespan, Time(5));
  EXPECT_EQ(trace.envelope, P({2}));
  EXPECT_EQ(extract_envelope(trace, task), P({2}));
}

TEST(Dedicated, ZeroExecutionTimes) {
  const auto task = test::example_dag();
  const auto c = example_collection(task);
  SimulationOptions opt;
  opt.exec_times = std::vector<Time>(task.size(), Time(0));
  const auto trace = simulate_dedicated(task, PriorityAssignment::two_level(c), 2, opt);
  EXPECT_TRUE(trace.completed);
  EXPECT_EQ(trace.makespan, Time(0));
  EXPECT_TRUE(trace.invariant_violations.empty());
}

TEST(Dedicated, Deterministic) {
  const auto task = test::example_dag();
  const auto c = example_collection(task);
  const auto prio = PriorityAssignment::two_level(c);
  for (auto mode : {Preemption::Preemptive, Preemption::NonPreemptive}) {
    SimulationOptions opt;
    opt.mode = mode;
    EXPECT_EQ(simulate_dedicated(task, prio, 2, opt), simulate_dedicated(task, prio, 2, opt));
  }
}

TEST(Dedicated, NonPreemptiveRespectsBound) {
  const auto task = test::example_dag();
  const auto analysis = analyze_nonpreemptive(task, 3);
  ASSERT_TRUE(analysis.has_value());
  const auto& c = analysis->selection.collection;
  SimulationOptions opt;
  opt.mode = Preemption::NonPreemptive;
  opt.collection = &c;
  const auto trace = simulate_dedicated(task, PriorityAssignment::two_level(c), 3, opt);
  EXPECT_LE(trace.makespan, analysis->bound);
  EXPECT_EQ(trace.preemptions, 0U);
  EXPECT_TRUE(trace.invariant_violations.empty());
}

TEST(Supply, GangExampleWindows) {
  const auto task = test::example_dag(16);
  const auto g = greedy_coverage(task, 2);
  const auto c = greedy_collection(task, g, 1);
  const Reservation r = GangReservation{2, Time(14), 16, 16, 1};
  SupplyTrace s;
  const std::vector<Window> w{{Time(1), Time(7)}, {Time(8), Time(16)}};
  s.windows = {w, w};
  const auto trace = simulate_supply(task, PriorityAssignment::two_level(c), r, s);
  EXPECT_TRUE(trace.completed);
  EXPECT_LE(trace.makespan, Time(16));
  EXPECT_TRUE(trace.invariant_violations.empty());
}

TEST(Supply, OrdinaryExampleWindows) {
  const auto task = test::example_dag(16);
  const auto g = greedy_coverage(task, 4);
  const auto c = greedy_collection(task, g, 3);
  const Reservation r = OrdinaryReservation{std::vector<Time>(4, Time(27, 2)), 16, 16, 3};
  SupplyTrace s;
  s.windows = {
      {{Time(0), Time(5, 2)}, {Time(4), Time(6)}, {Time(6), Time(15)}},
      {{Time(0), Time(3)}, {Time(4), Time(29, 2)}},
      {{Time(1), Time(10)}, {Time(21, 2), Time(15)}},
      {{Time(3, 2), Time(6)}, {Time(7), Time(16)}},
  };
  const auto trace = simulate_supply(task, PriorityAssignment::two_level(c), r, s);
  EXPECT_TRUE(trace.completed);
  EXPECT_LE(trace.makespan, Time(16));
  EXPECT_TRUE(trace.invariant_violations.empty());
}

TEST(Supply, FullSupplyMatchesDedicated) {
  const auto task = test::example_dag(16);
  const auto c = example_collection(task);
  const auto prio = PriorityAssignment::two_level(c);
  const Reservation r = OrdinaryReservation{std::vector<Time>(3, Time(16)), 16, 16, 3};
  const auto supplied = simulate_supply(task, prio, r, full_supply(r));
  const auto dedicated = simulate_dedicated(task, prio, 3);
  EXPECT_EQ(supplied.makespan, dedicated.makespan);
  EXPECT_EQ(supplied.finish, dedicated.finish);
}

TEST(Supply, Presets) {
  const Reservation gang = GangReservation{2, Time(14), 16, 16, 1};
  const auto latest = adversarial_supply(gang, SupplyPreset::Latest, 0);
  ASSERT_EQ(latest.windows.size(), 2U);
  EXPECT_EQ(latest.windows[0], (std::vector<Window>{{Time(2), Time(16)}}));
  EXPECT_EQ(latest.windows[0], latest.windows[1]);
  const auto earliest = adversarial_supply(gang, SupplyPreset::Earliest, 0);
  EXPECT_EQ(earliest.windows[0], (std::vector<Window>{{Time(0), Time(14)}}));

  const Reservation ordinary = OrdinaryReservation{std::vector<Time>(4, Time(27, 2)), 16, 16, 3};
  const auto late = adversarial_supply(ordinary, SupplyPreset::Latest, 0);
  for (const auto& w : late.windows) EXPECT_EQ(w, (std::vector<Window>{{Time(5, 2), Time(16)}}));

  for (auto preset : {SupplyPreset::Random, SupplyPreset::Fragmented}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = adversarial_supply(ordinary, preset, seed);
      EXPECT_NO_THROW(check_supply(ordinary, a));
      EXPECT_EQ(a.windows, adversarial_supply(ordinary, preset, seed).windows);
      const auto b = adversarial_supply(gang, preset, seed);
      EXPECT_NO_THROW(check_supply(gang, b));
    }
  }
}

TEST(Supply, RejectsBudgetMismatch) {
  const Reservation gang = GangReservation{2, Time(14), 16, 16, 1};
  SupplyTrace s;
  s.windows = {{{Time(0), Time(13)}}, {{Time(0), Time(13)}}};
  EXPECT_EQ(thrown_code([&] { check_supply(gang, s); }), ErrorCode::SupplyBudgetMismatch);
  s.windows = {{{Time(0), Time(14)}}, {{Time(2), Time(16)}}};
  EXPECT_EQ(thrown_code([&] { check_supply(gang, s); }), ErrorCode::SupplyBudgetMismatch);
  s.windows = {{{Time(3), Time(17)}}, {{Time(3), Time(17)}}};
  EXPECT_EQ(thrown_code([&] { check_supply(gang, s); }), ErrorCode::SupplyBudgetMismatch);
  s.windows = {{{Time(0), Time(14)}}};
  EXPECT_EQ(thrown_code([&] { check_supply(gang, s); }), ErrorCode::SupplyBudgetMismatch);
}

TEST(Supply, ProvisionedReservationsMeetDeadlineUnderPresets) {
  const auto task = test::example_dag(16);
  const auto gang = provision_gang(task, 4);
  const auto ordinary = provision_ordinary(task, 4);
  ASSERT_TRUE(gang && ordinary);
  for (auto preset : {SupplyPreset::Random, SupplyPreset::Latest, SupplyPreset::Earliest, SupplyPreset::Fragmented}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Reservation g = gang->reservation;
      const auto tg = simulate_supply(task, PriorityAssignment::two_level(gang->collection), g,
                                      adversarial_supply(g, preset, seed));
      EXPECT_TRUE(tg.completed);
      EXPECT_LE(tg.makespan, Time(16));
      const Reservation o = ordinary->reservation;
      const auto to = simulate_supply(task, PriorityAssignment::two_level(ordinary->collection), o,
                                      adversarial_supply(o, preset, seed));
      EXPECT_TRUE(to.completed);
      EXPECT_LE(to.makespan, Time(16));
    }
  }
}

TEST(Perturbation, ExampleHasNoViolations) {
  const auto task = test::example_dag();
  const auto sel = npca(task, 3);
  const auto report = perturb_and_check(task, sel.collection, 3, 300, 7);
  EXPECT_EQ(report.trials, 300U);
  EXPECT_EQ(report.violations, 0U);
  EXPECT_EQ(report.bound, Time(12));
  EXPECT_LE(report.max_makespan, Time(12));
}

TEST(Gantt, RendersOneBasedLabels) {
  const auto task = test::chain({2, 3});
  const auto c = PathCollection(task, {P({1, 2})});
  const auto text = render_gantt(simulate_dedicated(task, PriorityAssignment::two_level(c), 1));
  EXPECT_NE(text.find("P1 | [0, 2) v1 | [2, 5) v2"), std::string::npos) << text;
}
