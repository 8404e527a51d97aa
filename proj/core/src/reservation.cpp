#include "pathprog/reservation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <tuple>
#include <type_traits>

namespace pathprog {

namespace {

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// Largest k >= 0 with k * k <= q.
std::int64_t isqrt_floor(const Time& q) {
  if (q <= 0) return 0;
  auto k = static_cast<std::int64_t>(std::sqrt(to_double(q)));
  while (k > 0 && Time(k * k) > q) --k;
  while (Time((k + 1) * (k + 1)) <= q) ++k;
  return k;
}

GreedyCoverage unbounded_greedy(const DagTask& task) { return greedy_coverage(task, task.size()); }

}  // namespace

Time OrdinaryReservation::total_service() const {
  return std::accumulate(budgets.begin(), budgets.end(), Time(0));
}

std::size_t reservation_count(const Reservation& r) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, GangReservation>) {
          return x.m;
        } else {
          return x.m();
        }
      },
      r);
}

Time total_service(const Reservation& r) {
  return std::visit([](const auto& x) { return x.total_service(); }, r);
}

std::int64_t reservation_deadline(const Reservation& r) {
  return std::visit([](const auto& x) { return x.deadline; }, r);
}

Time reservation_budget(const Reservation& r, std::size_t p) {
  if (const auto* g = std::get_if<GangReservation>(&r)) return g->budget;
  return std::get<OrdinaryReservation>(r).budgets.at(p);
}

Time gang_budget(Wcet longest, Wcet total, Wcet covered, std::size_t m, std::size_t n) {
  return Time(longest) + Time(total - covered, as_int(m - n + 1));
}

Time gang_waste(Wcet longest, Wcet total, Wcet covered, std::size_t m, std::size_t n) {
  return Time(as_int(m) * longest) + Time(as_int(m), as_int(m - n + 1)) * (total - covered) - total;
}

Time ordinary_service(Wcet longest, Wcet total, Wcet covered, std::int64_t deadline, std::size_t m,
                      std::size_t n) {
  return Time(as_int(m - n + 1) * longest + as_int(n - 1) * deadline + total - covered);
}

GangProvision gang_for_pair(const DagTask& task, const GreedyCoverage& greedy, std::size_t m, std::size_t n) {
  if (n == 0 || n > m || n > greedy.paths.size()) throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= m");
  const Wcet longest = greedy.prefix_volume.front();
  const Wcet total = total_volume(task);
  const Wcet covered = greedy.prefix_volume[n - 1];
  const Time budget = gang_budget(longest, total, covered, m, n);
  const Time waste = gang_waste(longest, total, covered, m, n);
  assert(waste == budget * as_int(m) - total);
  return GangProvision{GangReservation{m, budget, task.deadline(), task.period(), n},
                       greedy_collection(task, greedy, n), waste};
}

OrdinaryProvision ordinary_for_pair(const DagTask& task, const GreedyCoverage& greedy, std::size_t m,
                                    std::size_t n) {
  if (n == 0 || n > m || n > greedy.paths.size()) throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= m");
  const Time service = ordinary_service(greedy.prefix_volume.front(), total_volume(task), greedy.prefix_volume[n - 1],
                                        task.deadline(), m, n);
  OrdinaryReservation r{std::vector<Time>(m, service / as_int(m)), task.deadline(), task.period(), n};
  return OrdinaryProvision{std::move(r), greedy_collection(task, greedy, n), service};
}

std::optional<GangProvision> provision_gang(const DagTask& task, std::size_t processors) {
  return provision_gang(task, greedy_coverage(task, processors), processors);
}

std::optional<GangProvision> provision_gang(const DagTask& task, const GreedyCoverage& greedy,
                                            std::size_t processors) {
  if (processors == 0) throw Error(ErrorCode::InvalidArgument, "at least one processor required");
  if (greedy.paths.empty()) return std::nullopt;
  const Wcet longest = greedy.prefix_volume.front();
  const Wcet total = total_volume(task);
  const Time deadline(task.deadline());

  std::optional<Time> best;
  std::size_t best_m = 0;
  std::size_t best_n = 0;
  for (std::size_t m = 1; m <= processors; ++m) {
    for (std::size_t n = 1; n <= std::min(m, greedy.paths.size()); ++n) {
      const Wcet covered = greedy.prefix_volume[n - 1];
      const Time budget = gang_budget(longest, total, covered, m, n);
      if (budget > deadline) continue;
      const Time waste = gang_waste(longest, total, covered, m, n);
      assert(waste == budget * as_int(m) - total);
      if (!best || waste < *best) {
        best = waste;
        best_m = m;
        best_n = n;
      }
    }
  }
  if (!best) return std::nullopt;
  return gang_for_pair(task, greedy, best_m, best_n);
}

std::optional<GangProvision> provision_gang_unbounded(const DagTask& task) {
  return provision_gang_unbounded(task, unbounded_greedy(task));
}

std::optional<GangProvision> provision_gang_unbounded(const DagTask& task, const GreedyCoverage& greedy) {
  if (greedy.paths.empty()) return std::nullopt;
  const Wcet longest = greedy.prefix_volume.front();
  const Wcet total = total_volume(task);
  const std::int64_t slack = task.deadline() - longest;
  if (slack < 0) return std::nullopt;

  // With k = m - n + 1 and X = C - xi[n]:
  //   E = L + X/k <= D  <=>  k >= X/(D - L)
  //   W = kL + X + (n-1)L + (n-1)X/k - C, convex in k with real minimum sqrt((n-1)X/L).
  std::optional<std::tuple<Time, std::size_t, std::size_t>> best;
  for (std::size_t n = 1; n <= greedy.paths.size(); ++n) {
    const Wcet rest = total - greedy.prefix_volume[n - 1];
    std::int64_t k_min = 1;
    if (rest > 0) {
      if (slack == 0) continue;
      k_min = std::max<std::int64_t>(1, ceil_time(Time(rest, slack)).numerator());
    }
    std::vector<std::int64_t> candidates{k_min};
    if (n > 1 && rest > 0 && longest > 0) {
      const std::int64_t k_floor = isqrt_floor(Time(as_int(n - 1) * rest, longest));
      candidates.push_back(std::max(k_min, k_floor));
      candidates.push_back(std::max(k_min, k_floor + 1));
    }
    std::sort(candidates.begin(), candidates.end());
    for (std::int64_t k : candidates) {
      const std::size_t m = static_cast<std::size_t>(k) + n - 1;
      const Time waste = gang_waste(longest, total, greedy.prefix_volume[n - 1], m, n);
      const auto key = std::make_tuple(waste, m, n);
      if (!best || key < *best) best = key;
    }
  }
  if (!best) return std::nullopt;
  return gang_for_pair(task, greedy, std::get<1>(*best), std::get<2>(*best));
}

namespace {

std::optional<OrdinaryProvision> ordinary_search(const DagTask& task, const GreedyCoverage& greedy,
                                                 std::size_t processors, std::size_t max_n) {
  if (processors == 0) throw Error(ErrorCode::InvalidArgument, "at least one processor required");
  if (greedy.paths.empty()) return std::nullopt;
  const Wcet longest = greedy.prefix_volume.front();
  const Wcet total = total_volume(task);
  const std::int64_t deadline = task.deadline();

  std::optional<Time> best;
  std::size_t best_m = 0;
  std::size_t best_n = 0;
  for (std::size_t m = 1; m <= processors; ++m) {
    for (std::size_t n = 1; n <= std::min({m, greedy.paths.size(), max_n}); ++n) {
      const Time service = ordinary_service(longest, total, greedy.prefix_volume[n - 1], deadline, m, n);
      if (service >= Time(as_int(m) * deadline) || service <= Time(as_int(m) * longest)) continue;
      if (!best || service < *best) {
        best = service;
        best_m = m;
        best_n = n;
      }
    }
  }
  if (!best) return std::nullopt;
  return ordinary_for_pair(task, greedy, best_m, best_n);
}

std::optional<OrdinaryProvision> ordinary_search_unbounded(const DagTask& task, const GreedyCoverage& greedy,
                                                           std::size_t max_n) {
  if (greedy.paths.empty()) return std::nullopt;
  const Wcet longest = greedy.prefix_volume.front();
  const Wcet total = total_volume(task);
  const std::int64_t deadline = task.deadline();
  const std::int64_t slack = deadline - longest;
  // E < mD  <=>  C - xi[n] < (m - n + 1)(D - L): needs D > L.
  if (slack <= 0) return std::nullopt;

  std::optional<std::tuple<Time, std::size_t, std::size_t>> best;
  for (std::size_t n = 1; n <= std::min(greedy.paths.size(), max_n); ++n) {
    const Wcet rest = total - greedy.prefix_volume[n - 1];
    // E > mL  <=>  (n - 1)(D - L) + C - xi[n] > 0, independent of m.
    if (as_int(n - 1) * slack + rest <= 0) continue;
    // E grows with m, so take the smallest m with E < mD.
    const std::int64_t k = rest / slack + 1;
    const std::size_t m = static_cast<std::size_t>(k) + n - 1;
    const Time service = ordinary_service(longest, total, greedy.prefix_volume[n - 1], deadline, m, n);
    const auto key = std::make_tuple(service, m, n);
    if (!best || key < *best) best = key;
  }
  if (!best) return std::nullopt;
  return ordinary_for_pair(task, greedy, std::get<1>(*best), std::get<2>(*best));
}

}  // namespace

std::optional<OrdinaryProvision> provision_ordinary(const DagTask& task, std::size_t processors) {
  return provision_ordinary(task, greedy_coverage(task, processors), processors);
}

std::optional<OrdinaryProvision> provision_ordinary(const DagTask& task, const GreedyCoverage& greedy,
                                                    std::size_t processors) {
  return ordinary_search(task, greedy, processors, processors);
}

std::optional<OrdinaryProvision> provision_ordinary_unbounded(const DagTask& task) {
  return provision_ordinary_unbounded(task, unbounded_greedy(task));
}

std::optional<OrdinaryProvision> provision_ordinary_unbounded(const DagTask& task, const GreedyCoverage& greedy) {
  return ordinary_search_unbounded(task, greedy, greedy.paths.size());
}

std::optional<OrdinaryProvision> provision_uet_baseline(const DagTask& task, std::size_t processors) {
  return ordinary_search(task, greedy_coverage(task, 1), processors, 1);
}

std::optional<OrdinaryProvision> provision_uet_unbounded(const DagTask& task) {
  return ordinary_search_unbounded(task, greedy_coverage(task, 1), 1);
}

bool satisfies_gang_condition(const DagTask& task, const GangReservation& r, const PathCollection& collection) {
  if (collection.n() == 0 || collection.n() > r.m) return false;
  const Wcet longest = longest_path(task).volume;
  const Time needed = Time(longest) + Time(collection.complement_volume(), as_int(r.m - collection.n() + 1));
  return needed <= r.budget && r.budget <= Time(r.deadline);
}

bool satisfies_ordinary_condition(const DagTask& task, const OrdinaryReservation& r,
                                  const PathCollection& collection) {
  if (collection.n() == 0 || collection.n() > r.m()) return false;
  const Wcet longest = longest_path(task).volume;
  for (const Time& e : r.budgets) {
    if (e < Time(longest) || e > Time(r.deadline)) return false;
  }
  const Time needed = Time(as_int(r.m() - collection.n() + 1) * longest + collection.complement_volume() +
                           as_int(collection.n() - 1) * r.deadline);
  return r.total_service() >= needed;
}

Time waste_ratio(const Reservation& r, const DagTask& task) {
  const Time service = total_service(r);
  if (service <= 0) throw Error(ErrorCode::InvalidArgument, "reservation provides no service");
  return (service - total_volume(task)) / service * 100;
}

}  // namespace pathprog
