#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pathprog/collection.hpp"
#include "pathprog/dag.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

/// m co-scheduled reservations, each supplying `budget` within [a, a + D).
struct GangReservation {
  std::size_t m = 0;
  Time budget;
  std::int64_t deadline = 0;
  std::int64_t period = 0;
  std::size_t n = 0;  // size of the path collection the budget was sized for

  Time total_service() const { return budget * static_cast<std::int64_t>(m); }
};

/// m independent reservations with budgets E^1..E^m within [a, a + D).
struct OrdinaryReservation {
  std::vector<Time> budgets;
  std::int64_t deadline = 0;
  std::int64_t period = 0;
  std::size_t n = 0;

  std::size_t m() const noexcept { return budgets.size(); }
  Time total_service() const;
};

using Reservation = std::variant<GangReservation, OrdinaryReservation>;

std::size_t reservation_count(const Reservation& r);
Time total_service(const Reservation& r);
std::int64_t reservation_deadline(const Reservation& r);

/// Budget of reservation p (all equal for a gang).
Time reservation_budget(const Reservation& r, std::size_t p);

// Closed forms shared by the search loops. `covered` is xi[n], the volume
// covered by the greedy n-path collection; `longest` is xi[1].

/// E = vol(pi*) + (C - xi[n]) / (m - n + 1)
Time gang_budget(Wcet longest, Wcet total, Wcet covered, std::size_t m, std::size_t n);

/// W = m * xi[1] + m/(m - n + 1) * (C - xi[n]) - C
Time gang_waste(Wcet longest, Wcet total, Wcet covered, std::size_t m, std::size_t n);

/// Total service (m - n + 1) * xi[1] + (n - 1) * D + C - xi[n]
Time ordinary_service(Wcet longest, Wcet total, Wcet covered, std::int64_t deadline, std::size_t m, std::size_t n);

struct GangProvision {
  GangReservation reservation;
  PathCollection collection;
  Time waste;  // m * E - C
};

struct OrdinaryProvision {
  OrdinaryReservation reservation;
  PathCollection collection;
  Time total_service;
};

/// Minimal-waste feasible gang over 1 <= n <= m <= M. nullopt when no pair
/// satisfies E <= D.
std::optional<GangProvision> provision_gang(const DagTask& task, std::size_t processors);
std::optional<GangProvision> provision_gang(const DagTask& task, const GreedyCoverage& greedy,
                                            std::size_t processors);

/// Same objective with no upper limit on m (an unbounded processor pool).
/// Exact: the per-n waste is convex in m, so only O(1) candidates per n are
/// evaluated.
std::optional<GangProvision> provision_gang_unbounded(const DagTask& task);
std::optional<GangProvision> provision_gang_unbounded(const DagTask& task, const GreedyCoverage& greedy);

/// Minimal-service ordinary reservations over 1 <= n <= m <= M with the
/// total split evenly into m budgets.
std::optional<OrdinaryProvision> provision_ordinary(const DagTask& task, std::size_t processors);
std::optional<OrdinaryProvision> provision_ordinary(const DagTask& task, const GreedyCoverage& greedy,
                                                    std::size_t processors);

/// Unbounded-m variant. For fixed n the service grows with m, so the smallest
/// feasible m per n is the only candidate.
std::optional<OrdinaryProvision> provision_ordinary_unbounded(const DagTask& task);
std::optional<OrdinaryProvision> provision_ordinary_unbounded(const DagTask& task, const GreedyCoverage& greedy);

/// Single-path (n = 1) ordinary provisioning, the baseline this method
/// generalises.
std::optional<OrdinaryProvision> provision_uet_baseline(const DagTask& task, std::size_t processors);
std::optional<OrdinaryProvision> provision_uet_unbounded(const DagTask& task);

/// Gang/ordinary reservations for one explicit (m, n) pair using the greedy
/// n-path collection, without any feasibility filtering.
GangProvision gang_for_pair(const DagTask& task, const GreedyCoverage& greedy, std::size_t m, std::size_t n);
OrdinaryProvision ordinary_for_pair(const DagTask& task, const GreedyCoverage& greedy, std::size_t m,
                                    std::size_t n);

/// vol(pi*) + vol(V_s^c)/(m - n + 1) <= E <= D for `collection`.
bool satisfies_gang_condition(const DagTask& task, const GangReservation& r, const PathCollection& collection);

/// Every E^p in [vol(pi*), D] and sum E^p >= (m-n+1) vol(pi*) + vol(V_s^c) + (n-1) D.
bool satisfies_ordinary_condition(const DagTask& task, const OrdinaryReservation& r,
                                  const PathCollection& collection);

/// (S - C) / S * 100 with S the total reserved service.
Time waste_ratio(const Reservation& r, const DagTask& task);

}  // namespace pathprog
