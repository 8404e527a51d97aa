#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathprog/collection.hpp"
#include "pathprog/dag.hpp"
#include "pathprog/reservation.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

/// Fixed subjob priorities; a larger value means a higher priority.
struct PriorityAssignment {
  std::vector<int> priority;

  /// V_s -> 1, V_s^c -> 2.
  static PriorityAssignment two_level(const PathCollection& collection);

  /// Every covered vertex ranks strictly below every uncovered one.
  bool has_path_progression(const PathCollection& collection) const;
};

enum class Preemption { Preemptive, NonPreemptive };

/// Half-open [start, end).
struct Window {
  Time start;
  Time end;

  bool operator==(const Window&) const = default;
};

/// Service windows per reservation within [0, D).
struct SupplyTrace {
  std::vector<std::vector<Window>> windows;
};

/// Throws SupplyBudgetMismatch unless the trace has one window list per
/// reservation, windows are ordered, disjoint, inside [0, D), sum to the
/// budget, and (gang) are identical across reservations.
void check_supply(const Reservation& reservation, const SupplyTrace& supply);

enum class SupplyPreset {
  Random,      // a few randomly sized pieces separated by random gaps
  Latest,      // [D - E, D)
  Earliest,    // [0, E)
  Fragmented,  // k equal pieces each preceded by an equal gap, ending at D
};

/// Deterministic in (reservation, preset, seed). Gang reservations share one
/// window set.
SupplyTrace adversarial_supply(const Reservation& reservation, SupplyPreset preset, std::uint64_t seed,
                               std::size_t fragments = 8);

/// Every window is [0, D).
SupplyTrace full_supply(const Reservation& reservation);

struct Interval {
  Time start;
  Time end;
  std::optional<Vertex> vertex;  // nullopt: resource available but idle

  bool operator==(const Interval&) const = default;
};

struct ScheduleTrace {
  std::vector<std::vector<Interval>> intervals;  // per processor or reservation
  std::vector<Time> arrival;
  std::vector<Time> finish;
  std::vector<Time> exec_time;
  bool completed = false;  // false when the supply ran out first
  Time makespan;
  Path envelope;
  Time busy_time;     // envelope subjobs executing
  Time nonbusy_time;  // makespan - busy_time
  std::size_t preemptions = 0;
  Time idle_service;  // available but unused processor time before the makespan
  std::vector<std::string> invariant_violations;

  bool operator==(const ScheduleTrace&) const = default;
};

struct SimulationOptions {
  Preemption mode = Preemption::Preemptive;
  /// Actual execution times, each in [0, wcet]. Defaults to the WCETs.
  std::optional<std::vector<Time>> exec_times;
  /// Enables the online "at most n pending V_s subjobs" check.
  const PathCollection* collection = nullptr;
};

/// List-FP on M dedicated processors.
ScheduleTrace simulate_dedicated(const DagTask& task, const PriorityAssignment& priorities, std::size_t processors,
                                 const SimulationOptions& options = {});

/// List-FP on the reservations; at time t the m(t) reservations in service
/// act as processors. Preemptive only.
ScheduleTrace simulate_supply(const DagTask& task, const PriorityAssignment& priorities,
                              const Reservation& reservation, const SupplyTrace& supply,
                              const SimulationOptions& options = {});

/// Backward chain of latest-finishing predecessors from the last-finishing
/// subjob, returned in precedence order. Ties go to the smaller id.
Path extract_envelope(const ScheduleTrace& trace, const DagTask& task);

struct PerturbationReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  Time bound;
  Time max_makespan;
  std::vector<std::string> failures;
};

/// Random shorter execution times (quarter-unit grid in [0, wcet]) and
/// M' in [M, M + extra_processors]; every makespan is compared with the
/// bound for the original WCETs and M (the non-preemptive bound in non-preemptive mode).
PerturbationReport perturb_and_check(const DagTask& task, const PathCollection& collection, std::size_t processors,
                                     std::size_t trials, std::uint64_t seed,
                                     Preemption mode = Preemption::Preemptive, std::size_t extra_processors = 10);

/// One line per processor: "P1 | [0, 3) v1 | [3, 5) idle | ...". Vertices
/// are shown 1-based.
std::string render_gantt(const ScheduleTrace& trace);

}  // namespace pathprog
