#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pathprog/generator.hpp"
#include "pathprog/reservation.hpp"

using namespace pathprog;

namespace {

DagTask random_task_with_deadline(std::mt19937_64& rng, std::size_t max_vertices = 14) {
  const auto task = test::random_dag(rng, 2, max_vertices, 0.3, 30);
  const Wcet l = longest_path(task).volume;
  const Wcet c = total_volume(task);
  const std::int64_t d = std::uniform_int_distribution<std::int64_t>(std::max<Wcet>(l - 2, 1), c + 5)(rng);
  return task.with_timing(d, d);
}

}  // namespace

TEST(Gang, ExampleTwoProcessors) {
  const auto task = test::example_dag(16);
  const auto g = greedy_coverage(task, 2);
  const auto pair = gang_for_pair(task, g, 2, 2);
  EXPECT_EQ(pair.reservation.budget, Time(14));
  EXPECT_TRUE(satisfies_gang_condition(task, pair.reservation, pair.collection));

  const auto best = provision_gang(task, 2);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->reservation.budget, Time(14));
  EXPECT_EQ(best->waste, Time(10));
  // (2,1) and (2,2) tie on waste; the first probed pair wins
  EXPECT_EQ(best->reservation.m, 2U);
  EXPECT_EQ(best->reservation.n, 1U);
}

TEST(Gang, FullCoverPairOnFourProcessors) {
  const auto task = test::example_dag(16);
  const auto pair = gang_for_pair(task, greedy_coverage(task, 4), 4, 4);
  EXPECT_EQ(pair.reservation.budget, Time(10));
  EXPECT_EQ(pair.waste, Time(22));
  EXPECT_EQ(gang_waste(10, 18, 18, 4, 4), Time(22));
}

TEST(Gang, InfeasibleWhenDeadlineBelowLongestPath) {
  EXPECT_FALSE(provision_gang(test::example_dag(9), 8).has_value());
  EXPECT_FALSE(provision_gang_unbounded(test::example_dag(9)).has_value());
}

TEST(Gang, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto task = random_task_with_deadline(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto got = provision_gang(task, m);
    const auto want = test::oracle_gang(task, m);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (!got) continue;
    ASSERT_EQ(got->reservation.m, want->m);
    ASSERT_EQ(got->reservation.n, want->n);
    ASSERT_EQ(got->reservation.budget, want->budget);
    ASSERT_EQ(got->waste, want->waste);
    ASSERT_TRUE(satisfies_gang_condition(task, got->reservation, got->collection));
    ASSERT_GE(got->reservation.budget, Time(longest_path(task).volume));
  }
}

TEST(Gang, WasteIdentityOnEveryPair) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const auto task = random_task_with_deadline(rng);
    const auto g = greedy_coverage(task, 10);
    for (std::size_t m = 1; m <= 10; ++m) {
      for (std::size_t n = 1; n <= std::min(m, g.paths.size()); ++n) {
        const auto p = gang_for_pair(task, g, m, n);
        ASSERT_EQ(p.waste, p.reservation.budget * static_cast<std::int64_t>(m) - total_volume(task));
      }
    }
  }
}

TEST(Gang, UnboundedMatchesLargeBoundedSearch) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 200; ++i) {
    const auto task = random_task_with_deadline(rng, 12);
    const auto big = provision_gang(task, 400);
    const auto closed = provision_gang_unbounded(task);
    ASSERT_EQ(big.has_value(), closed.has_value());
    if (!big) continue;
    ASSERT_EQ(closed->waste, big->waste);
    ASSERT_EQ(closed->reservation.m, big->reservation.m);
    ASSERT_EQ(closed->reservation.n, big->reservation.n);
  }
}

TEST(Ordinary, ExamplePairFourThree) {
  const auto task = test::example_dag(16);
  const auto g = greedy_coverage(task, 4);
  const auto pair = ordinary_for_pair(task, g, 4, 3);
  EXPECT_EQ(pair.collection.complement_volume(), 2);
  EXPECT_EQ(pair.total_service, Time(54));
  EXPECT_EQ(pair.reservation.budgets, std::vector<Time>(4, Time(27, 2)));
  EXPECT_TRUE(satisfies_ordinary_condition(task, pair.reservation, pair.collection));
}

TEST(Ordinary, FullProbeMatchesOracle) {
  const auto task = test::example_dag(16);
  const auto got = provision_ordinary(task, 4);
  const auto want = test::oracle_ordinary(task, 4, 4);
  ASSERT_TRUE(got && want);
  EXPECT_EQ(got->total_service, want->service);
  EXPECT_EQ(got->total_service, Time(28));
  EXPECT_EQ(got->reservation.m(), want->m);
  EXPECT_EQ(got->reservation.n, want->n);
  EXPECT_EQ(got->reservation.budgets, std::vector<Time>(2, Time(14)));
}

TEST(Ordinary, MatchesExhaustiveOracleOnRandomTasks) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 300; ++i) {
    const auto task = random_task_with_deadline(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto got = provision_ordinary(task, m);
    const auto want = test::oracle_ordinary(task, m, m);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (!got) continue;
    ASSERT_EQ(got->total_service, want->service);
    ASSERT_EQ(got->reservation.m(), want->m);
    ASSERT_EQ(got->reservation.n, want->n);
    ASSERT_TRUE(satisfies_ordinary_condition(task, got->reservation, got->collection));
    const Time longest(longest_path(task).volume);
    for (const Time& e : got->reservation.budgets) {
      ASSERT_GE(e, longest);
      ASSERT_LT(e, Time(task.deadline()));
    }
  }
}

TEST(Ordinary, InfeasibleWhenDeadlineBelowLongestPath) {
  EXPECT_FALSE(provision_ordinary(test::example_dag(9), 8).has_value());
  EXPECT_FALSE(provision_uet_baseline(test::example_dag(9), 8).has_value());
}

TEST(Ordinary, UnboundedMatchesLargeBoundedSearch) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 200; ++i) {
    const auto task = random_task_with_deadline(rng, 12);
    const auto big = provision_ordinary(task, 400);
    const auto closed = provision_ordinary_unbounded(task);
    ASSERT_EQ(big.has_value(), closed.has_value());
    if (big) {
      ASSERT_EQ(closed->total_service, big->total_service);
      ASSERT_EQ(closed->reservation.m(), big->reservation.m());
      ASSERT_EQ(closed->reservation.n, big->reservation.n);
    }
    const auto uet_big = provision_uet_baseline(task, 400);
    const auto uet_closed = provision_uet_unbounded(task);
    ASSERT_EQ(uet_big.has_value(), uet_closed.has_value());
    if (uet_big) ASSERT_EQ(uet_big->total_service, uet_closed->total_service);
  }
}

TEST(Uet, ExampleExhaustiveOverM) {
  const auto task = test::example_dag(16);
  // E(m, 1) = 10m + 8 must lie strictly between 10m and 16m
  std::optional<Time> best;
  for (std::int64_t m = 1; m <= 6; ++m) {
    const Time e(10 * m + 8);
    if (e >= Time(16 * m) || e <= Time(10 * m)) continue;
    if (!best || e < *best) best = e;
  }
  const auto uet = provision_uet_baseline(task, 6);
  ASSERT_TRUE(uet.has_value());
  EXPECT_EQ(uet->total_service, *best);
  EXPECT_EQ(uet->reservation.n, 1U);
}

TEST(Uet, DeadlineEqualToLongestPath) {
  // E(1,1) = C = 18 > D = 10, and every larger m fails E < mD as well
  EXPECT_FALSE(provision_uet_baseline(test::example_dag(10), 9).has_value());
  EXPECT_FALSE(provision_uet_unbounded(test::example_dag(10)).has_value());
}

TEST(Uet, ChainDagFollowsVerbatimSkipRule) {
  // For a chain E(m,1) = m vol(pi*) exactly, which the E <= m xi[1] filter
  // skips; the gang search has no such filter and returns the chain itself.
  const auto task = test::chain({3, 4, 5}, 20);
  EXPECT_FALSE(provision_uet_baseline(task, 4).has_value());
  const auto gang = provision_gang(task, 4);
  ASSERT_TRUE(gang.has_value());
  EXPECT_EQ(gang->reservation.m, 1U);
  EXPECT_EQ(gang->reservation.budget, Time(12));
}

TEST(Uet, NeverCheaperThanOrdinary) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 300; ++i) {
    const auto task = random_task_with_deadline(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto ours = provision_ordinary(task, m);
    const auto uet = provision_uet_baseline(task, m);
    if (uet) {
      ASSERT_TRUE(ours.has_value());
      ASSERT_LE(ours->total_service, uet->total_service);
    }
  }
}

TEST(WasteRatio, Examples) {
  const auto task = test::example_dag(16);
  const Reservation gang = GangReservation{2, Time(14), 16, 16, 2};
  EXPECT_EQ(waste_ratio(gang, task), Time(1000, 28));
  EXPECT_EQ(format_fixed(waste_ratio(gang, task)), "35.7143");
  const Reservation ordinary = OrdinaryReservation{std::vector<Time>(4, Time(27, 2)), 16, 16, 3};
  EXPECT_EQ(format_fixed(waste_ratio(ordinary, task)), "66.6667");
  const Reservation exact = GangReservation{1, Time(18), 18, 18, 1};
  EXPECT_EQ(waste_ratio(exact, task), Time(0));
}

TEST(Reservation, Accessors) {
  const Reservation ordinary = OrdinaryReservation{{Time(3), Time(5)}, 9, 10, 1};
  EXPECT_EQ(reservation_count(ordinary), 2U);
  EXPECT_EQ(total_service(ordinary), Time(8));
  EXPECT_EQ(reservation_budget(ordinary, 1), Time(5));
  EXPECT_EQ(reservation_deadline(ordinary), 9);
  const Reservation gang = GangReservation{3, Time(4), 7, 7, 2};
  EXPECT_EQ(total_service(gang), Time(12));
  EXPECT_EQ(reservation_budget(gang, 2), Time(4));
}
