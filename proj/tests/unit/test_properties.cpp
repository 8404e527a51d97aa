#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "pathprog/bounds.hpp"
#include "pathprog/experiments.hpp"
#include "pathprog/generator.hpp"
#include "pathprog/path_cover.hpp"
#include "pathprog/simulator.hpp"

using namespace pathprog;

namespace {

PathCollection random_collection(const DagTask& task, std::size_t max_paths, std::mt19937_64& rng) {
  std::set<Path> picked;
  const auto k = std::uniform_int_distribution<std::size_t>(1, max_paths)(rng);
  for (std::size_t i = 0; i < k; ++i) picked.insert(random_path(task, rng));
  return PathCollection(task, {picked.begin(), picked.end()});
}

// Arbitrary priorities that still rank every covered vertex below every uncovered one.
PriorityAssignment random_progression(const PathCollection& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> low(1, 10), high(11, 20);
  PriorityAssignment p;
  for (bool covered : c.covered()) p.priority.push_back(covered ? low(rng) : high(rng));
  return p;
}

DagTask random_layered(std::mt19937_64& rng) {
  GenParams params;
  params.parallelism = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
  params.min_layers = 2;
  params.max_layers = 6;
  params.connection_probability = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
  params.wcet_max = 20;
  params.seed = rng();
  return generate(params);
}

}  // namespace

TEST(Property, MakespanWithinBoundBothModes) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 400; ++i) {
    const auto task = i % 2 ? random_layered(rng) : test::random_dag(rng, 1, 14, 0.3);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const auto c = random_collection(task, m, rng);
    const auto prio = random_progression(c, rng);
    SimulationOptions opt;
    opt.collection = &c;
    const auto pre = simulate_dedicated(task, prio, m, opt);
    ASSERT_TRUE(pre.completed);
    ASSERT_TRUE(pre.invariant_violations.empty()) << pre.invariant_violations.front();
    ASSERT_LE(pre.makespan, bound_preemptive(task, c, m));
    ASSERT_EQ(pre, simulate_dedicated(task, prio, m, opt));
    if (c.n() + 1 <= m) {
      opt.mode = Preemption::NonPreemptive;
      const auto np = simulate_dedicated(task, prio, m, opt);
      ASSERT_TRUE(np.invariant_violations.empty()) << np.invariant_violations.front();
      ASSERT_LE(np.makespan, bound_nonpreemptive(task, c, m));
      ASSERT_EQ(np.preemptions, 0U);
    }
  }
}

TEST(Property, SustainableUnderShorterJobsAndMoreProcessors) {
  std::mt19937_64 rng(102);
  for (int i = 0; i < 60; ++i) {
    const auto task = random_layered(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const auto sel = npca(task, m);
    const auto pre = perturb_and_check(task, sel.collection, m, 50, rng());
    ASSERT_EQ(pre.violations, 0U) << pre.failures.front();
    if (sel.collection.n() + 1 <= m) {
      const auto np = perturb_and_check(task, sel.collection, m, 50, rng(), Preemption::NonPreemptive);
      ASSERT_EQ(np.violations, 0U) << np.failures.front();
    }
  }
}

TEST(Property, BoundsMonotoneInParameters) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 300; ++i) {
    const auto task = test::random_dag(rng, 2, 12, 0.3);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const auto c = random_collection(task, m - 1, rng);
    const Time pre = bound_preemptive(task, c, m);
    const Time np = bound_nonpreemptive(task, c, m);
    ASSERT_GE(np, pre);
    ASSERT_LE(bound_preemptive(task, c, m + 1), pre);
    ASSERT_LE(bound_nonpreemptive(task, c, m + 1), np);

    // shrink one wcet
    auto desc = task.description();
    const auto v = std::uniform_int_distribution<std::size_t>(0, task.size() - 1)(rng);
    desc.wcet[v] = std::uniform_int_distribution<Wcet>(0, desc.wcet[v])(rng);
    const DagTask smaller(desc);
    const PathCollection same(smaller, c.paths());
    ASSERT_LE(bound_preemptive(smaller, same, m), pre);
    ASSERT_LE(bound_nonpreemptive(smaller, same, m), np);
  }
}

TEST(Property, AddingPathsShrinksComplement) {
  std::mt19937_64 rng(104);
  for (int i = 0; i < 200; ++i) {
    const auto task = test::random_dag(rng, 2, 14, 0.3);
    std::vector<Path> paths{random_path(task, rng)};
    Wcet previous = PathCollection(task, paths).complement_volume();
    for (int k = 0; k < 4; ++k) {
      const auto p = random_path(task, rng);
      if (std::find(paths.begin(), paths.end(), p) != paths.end()) continue;
      paths.push_back(p);
      const Wcet now = PathCollection(task, paths).complement_volume();
      ASSERT_LE(now, previous);
      previous = now;
    }
  }
}

TEST(Property, GreedyCoverageRecurrence) {
  std::mt19937_64 rng(105);
  for (int i = 0; i < 300; ++i) {
    const auto task = test::random_dag(rng, 1, 16, 0.25);
    const auto w = path_cover(task).width;
    const auto g = greedy_coverage(task, task.size());
    const double c = static_cast<double>(total_volume(task));
    for (std::size_t n = 1; n <= g.prefix_volume.size(); ++n) {
      const double rest = c - static_cast<double>(g.prefix_volume[n - 1]);
      ASSERT_LE(rest, std::pow(1.0 - 1.0 / static_cast<double>(w), static_cast<double>(n)) * c + 1e-9);
    }
  }
}

TEST(Property, NpcaNeverWorseThanFederated) {
  std::mt19937_64 rng(106);
  for (int i = 0; i < 300; ++i) {
    const auto task = random_layered(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
    const auto a = analyze(task, m);
    ASSERT_LE(a.bound_preemptive, a.federated_bound);
    ASSERT_GE(a.bound_preemptive, a.lower_bound);
  }
}

TEST(Property, ProvisionedReservationsMeetDeadline) {
  std::mt19937_64 rng(107);
  const SupplyPreset presets[] = {SupplyPreset::Random, SupplyPreset::Latest, SupplyPreset::Fragmented};
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const auto task = random_layered(rng);
    DagTask timed = task;
    try {
      timed = assign_deadline(task, Time(3, 2), rng());
    } catch (const Error&) {
      continue;
    }
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    std::vector<std::pair<Reservation, PathCollection>> cases;
    if (auto g = provision_gang(timed, m)) cases.emplace_back(g->reservation, g->collection);
    if (auto o = provision_ordinary(timed, m)) cases.emplace_back(o->reservation, o->collection);
    for (const auto& [r, c] : cases) {
      for (auto preset : presets) {
        const auto supply = adversarial_supply(r, preset, rng());
        SimulationOptions opt;
        opt.collection = &c;
        const auto trace = simulate_supply(timed, PriorityAssignment::two_level(c), r, supply, opt);
        ASSERT_TRUE(trace.completed);
        ASSERT_LE(trace.makespan, Time(timed.deadline()));
        ASSERT_TRUE(trace.invariant_violations.empty()) << trace.invariant_violations.front();
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}
