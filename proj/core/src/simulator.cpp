#include "pathprog/simulator.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

#include "pathprog/bounds.hpp"

namespace pathprog {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string vertex_label(Vertex v) { return "v" + std::to_string(v + 1); }

// Service windows of all resources, scanned forward in time.
class ResourceClock {
 public:
  explicit ResourceClock(const std::vector<std::vector<Window>>& windows)
      : windows_(windows), cursor_(windows.size(), 0) {}

  void advance_to(const Time& t) {
    for (std::size_t r = 0; r < windows_.size(); ++r) {
      while (cursor_[r] < windows_[r].size() && windows_[r][cursor_[r]].end <= t) ++cursor_[r];
    }
  }

  bool available(std::size_t r, const Time& t) const {
    return cursor_[r] < windows_[r].size() && windows_[r][cursor_[r]].start <= t;
  }

  std::optional<Time> next_boundary(const Time& t) const {
    std::optional<Time> best;
    for (std::size_t r = 0; r < windows_.size(); ++r) {
      if (cursor_[r] >= windows_[r].size()) continue;
      const Window& w = windows_[r][cursor_[r]];
      const Time b = w.start > t ? w.start : w.end;
      if (!best || b < *best) best = b;
    }
    return best;
  }

  std::size_t size() const { return windows_.size(); }

 private:
  const std::vector<std::vector<Window>>& windows_;
  std::vector<std::size_t> cursor_;
};

void append_interval(std::vector<Interval>& lane, const Time& start, const Time& end, std::optional<Vertex> v) {
  if (!lane.empty() && lane.back().end == start && lane.back().vertex == v) {
    lane.back().end = end;
  } else {
    lane.push_back(Interval{start, end, v});
  }
}

std::vector<Time> resolve_exec_times(const DagTask& task, const SimulationOptions& options) {
  std::vector<Time> exec;
  if (options.exec_times) {
    if (options.exec_times->size() != task.size()) {
      throw Error(ErrorCode::InvalidArgument, "exec_times must have one entry per vertex");
    }
    exec = *options.exec_times;
    for (Vertex v = 0; v < task.size(); ++v) {
      if (exec[v] < 0 || exec[v] > Time(task.wcet(v))) {
        throw Error(ErrorCode::InvalidArgument, "execution time of " + vertex_label(v) + " outside [0, wcet]");
      }
    }
  } else {
    for (Vertex v = 0; v < task.size(); ++v) exec.emplace_back(task.wcet(v));
  }
  return exec;
}

void check_trace(const DagTask& task, ScheduleTrace& trace) {
  std::vector<Time> executed(task.size(), Time(0));
  for (std::size_t r = 0; r < trace.intervals.size(); ++r) {
    Time last(0);
    for (const auto& iv : trace.intervals[r]) {
      if (iv.start < last || iv.end <= iv.start) {
        trace.invariant_violations.push_back("overlapping intervals on resource " + std::to_string(r + 1));
      }
      last = iv.end;
      if (!iv.vertex) continue;
      const Vertex v = *iv.vertex;
      executed[v] += iv.end - iv.start;
      for (Vertex p : task.predecessors(v)) {
        if (iv.start < trace.finish[p]) {
          trace.invariant_violations.push_back(vertex_label(v) + " ran before predecessor " + vertex_label(p));
        }
      }
    }
  }
  for (Vertex v = 0; v < task.size(); ++v) {
    if (executed[v] != trace.exec_time[v]) {
      trace.invariant_violations.push_back(vertex_label(v) + " executed " + to_string(executed[v]) + " of " +
                                           to_string(trace.exec_time[v]));
    }
  }
  if (trace.busy_time + trace.nonbusy_time != trace.makespan) {
    trace.invariant_violations.push_back("busy and non-busy time do not add up to the makespan");
  }
}

void check_envelope(const DagTask& task, ScheduleTrace& trace) {
  const auto& env = trace.envelope.vertices;
  if (env.empty()) return;
  bool contiguous = trace.arrival[env.front()] == Time(0) && task.is_source(env.front()) &&
                    trace.finish[env.back()] == trace.makespan;
  for (std::size_t i = 1; i < env.size(); ++i) {
    contiguous = contiguous && trace.arrival[env[i]] == trace.finish[env[i - 1]];
  }
  if (!contiguous) trace.invariant_violations.push_back("envelope does not span [0, makespan) contiguously");
}

ScheduleTrace run(const DagTask& task, const PriorityAssignment& priorities,
                  const std::vector<std::vector<Window>>& windows, const SimulationOptions& options) {
  const std::size_t n = task.size();
  if (priorities.priority.size() != n) throw Error(ErrorCode::InvalidArgument, "priority per vertex required");
  const bool preemptive = options.mode == Preemption::Preemptive;
  const auto& prio = priorities.priority;

  ScheduleTrace trace;
  trace.exec_time = resolve_exec_times(task, options);
  trace.arrival.assign(n, Time(0));
  trace.finish.assign(n, Time(0));
  trace.intervals.resize(windows.size());

  std::vector<Time> remaining = trace.exec_time;
  std::vector<std::size_t> waiting_preds(n);
  std::vector<bool> done(n, false);
  std::vector<bool> was_preempted(n, false);
  std::vector<std::size_t> resource_of(n, kNone);
  std::vector<Vertex> pending;
  std::size_t finished = 0;

  for (Vertex v = 0; v < n; ++v) {
    waiting_preds[v] = task.predecessors(v).size();
    if (waiting_preds[v] == 0) pending.push_back(v);
  }

  ResourceClock clock(windows);
  Time t(0);
  while (true) {
    // Completions at t, including zero-length subjobs that finish on release.
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Vertex> still;
      std::vector<Vertex> released;
      for (Vertex v : pending) {
        if (remaining[v] != Time(0)) {
          still.push_back(v);
          continue;
        }
        done[v] = true;
        ++finished;
        trace.finish[v] = t;
        resource_of[v] = kNone;
        changed = true;
        for (Vertex s : task.successors(v)) {
          if (--waiting_preds[s] == 0) {
            trace.arrival[s] = t;
            released.push_back(s);
          }
        }
      }
      pending = std::move(still);
      pending.insert(pending.end(), released.begin(), released.end());
    }
    if (finished == n) {
      trace.completed = true;
      break;
    }

    clock.advance_to(t);
    std::vector<std::size_t> available;
    for (std::size_t r = 0; r < clock.size(); ++r) {
      if (clock.available(r, t)) available.push_back(r);
    }

    auto key = [&](Vertex v) {
      const bool running = resource_of[v] != kNone;
      return std::make_tuple(-prio[v], running ? 0 : 1, running && was_preempted[v] ? 1 : 0, v);
    };
    std::sort(pending.begin(), pending.end(), [&](Vertex a, Vertex b) { return key(a) < key(b); });

    std::vector<Vertex> selected;
    if (preemptive) {
      for (std::size_t i = 0; i < pending.size() && i < available.size(); ++i) selected.push_back(pending[i]);
    } else {
      for (Vertex v : pending) {
        if (resource_of[v] != kNone) selected.push_back(v);
      }
      for (Vertex v : pending) {
        if (selected.size() >= available.size()) break;
        if (resource_of[v] == kNone) selected.push_back(v);
      }
    }

    if (options.collection != nullptr) {
      const auto covered_pending = static_cast<std::size_t>(
          std::count_if(pending.begin(), pending.end(), [&](Vertex v) { return options.collection->is_covered(v); }));
      if (covered_pending > options.collection->n()) {
        trace.invariant_violations.push_back(std::to_string(covered_pending) + " pending V_s subjobs at t=" +
                                             to_string(t));
      }
    }
    if (selected.size() < pending.size() && selected.size() < available.size()) {
      trace.invariant_violations.push_back("idle resource with pending work at t=" + to_string(t));
    }
    if (preemptive && !selected.empty() && selected.size() < pending.size() &&
        prio[selected.back()] < prio[pending[selected.size()]]) {
      trace.invariant_violations.push_back("priority inversion at t=" + to_string(t));
    }

    // Resource assignment: keep running subjobs in place when possible.
    std::vector<bool> chosen(n, false);
    for (Vertex v : selected) chosen[v] = true;
    std::vector<Vertex> holder(clock.size(), static_cast<Vertex>(-1));
    std::vector<bool> is_available(clock.size(), false);
    for (std::size_t r : available) is_available[r] = true;
    for (Vertex v : pending) {
      if (resource_of[v] == kNone) continue;
      if (!chosen[v]) {
        ++trace.preemptions;
        was_preempted[v] = true;
        resource_of[v] = kNone;
      } else if (is_available[resource_of[v]]) {
        holder[resource_of[v]] = v;
      } else {
        resource_of[v] = kNone;
      }
    }
    std::size_t next_free = 0;
    for (Vertex v : selected) {
      if (resource_of[v] != kNone) continue;
      while (!is_available[available[next_free]] || holder[available[next_free]] != static_cast<Vertex>(-1)) {
        ++next_free;
      }
      resource_of[v] = available[next_free];
      holder[available[next_free]] = v;
    }

    std::optional<Time> next = clock.next_boundary(t);
    for (Vertex v : selected) {
      const Time end = t + remaining[v];
      if (!next || end < *next) next = end;
    }
    if (!next) break;  // supply exhausted with work left
    const Time dt = *next - t;

    for (std::size_t r : available) {
      const Vertex v = holder[r];
      if (v == static_cast<Vertex>(-1)) {
        append_interval(trace.intervals[r], t, *next, std::nullopt);
        trace.idle_service += dt;
      } else {
        append_interval(trace.intervals[r], t, *next, v);
        remaining[v] -= dt;
      }
    }
    t = *next;
  }

  if (!trace.completed) {
    trace.makespan = t;
    trace.invariant_violations.push_back("job incomplete when the supply ran out at t=" + to_string(t));
    return trace;
  }

  trace.makespan = Time(0);
  for (Vertex v = 0; v < n; ++v) trace.makespan = std::max(trace.makespan, trace.finish[v]);
  // Idle time after the last completion is not part of the job's schedule.
  for (auto& lane : trace.intervals) {
    while (!lane.empty() && lane.back().start >= trace.makespan) lane.pop_back();
    if (!lane.empty() && lane.back().end > trace.makespan) {
      trace.idle_service -= lane.back().end - trace.makespan;
      lane.back().end = trace.makespan;
    }
  }
  trace.envelope = extract_envelope(trace, task);
  trace.busy_time = Time(0);
  for (Vertex v : trace.envelope.vertices) trace.busy_time += trace.exec_time[v];
  trace.nonbusy_time = trace.makespan - trace.busy_time;
  check_trace(task, trace);
  check_envelope(task, trace);
  return trace;
}

std::vector<Window> normalize(std::vector<Window> windows) {
  std::vector<Window> out;
  for (const auto& w : windows) {
    if (w.end <= w.start) continue;
    if (!out.empty() && out.back().end == w.start) {
      out.back().end = w.end;
    } else {
      out.push_back(w);
    }
  }
  return out;
}

std::vector<Window> draw_windows(const Time& budget, const Time& deadline, SupplyPreset preset, std::mt19937_64& rng,
                                 std::size_t fragments) {
  const Time slack = deadline - budget;
  switch (preset) {
    case SupplyPreset::Latest:
      return normalize({Window{slack, deadline}});
    case SupplyPreset::Earliest:
      return normalize({Window{Time(0), budget}});
    case SupplyPreset::Fragmented: {
      const auto k = static_cast<std::int64_t>(std::max<std::size_t>(fragments, 1));
      const Time piece = budget / k;
      const Time gap = slack / k;
      std::vector<Window> out;
      for (std::int64_t i = 0; i < k; ++i) {
        const Time start = gap * (i + 1) + piece * i;
        out.push_back(Window{start, start + piece});
      }
      return normalize(std::move(out));
    }
    case SupplyPreset::Random: {
      std::uniform_int_distribution<std::int64_t> count(1, static_cast<std::int64_t>(std::max<std::size_t>(fragments, 1)));
      std::uniform_int_distribution<std::int64_t> piece_weight(1, 16);
      std::uniform_int_distribution<std::int64_t> gap_weight(0, 16);
      const std::int64_t k = count(rng);
      std::vector<std::int64_t> pieces(static_cast<std::size_t>(k));
      std::vector<std::int64_t> gaps(static_cast<std::size_t>(k + 1));
      for (auto& p : pieces) p = piece_weight(rng);
      for (auto& g : gaps) g = gap_weight(rng);
      std::int64_t piece_sum = 0;
      std::int64_t gap_sum = 0;
      for (auto p : pieces) piece_sum += p;
      for (auto g : gaps) gap_sum += g;
      if (gap_sum == 0) {
        gaps.back() = 1;
        gap_sum = 1;
      }
      std::vector<Window> out;
      Time cursor(0);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        cursor += slack * Time(gaps[i], gap_sum);
        const Time len = budget * Time(pieces[i], piece_sum);
        out.push_back(Window{cursor, cursor + len});
        cursor += len;
      }
      return normalize(std::move(out));
    }
  }
  return {};
}

}  // namespace

PriorityAssignment PriorityAssignment::two_level(const PathCollection& collection) {
  PriorityAssignment out;
  for (bool c : collection.covered()) out.priority.push_back(c ? 1 : 2);
  return out;
}

bool PriorityAssignment::has_path_progression(const PathCollection& collection) const {
  const auto& covered = collection.covered();
  if (covered.size() != priority.size()) return false;
  std::optional<int> max_covered;
  std::optional<int> min_uncovered;
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (covered[v]) {
      max_covered = std::max(max_covered.value_or(priority[v]), priority[v]);
    } else {
      min_uncovered = std::min(min_uncovered.value_or(priority[v]), priority[v]);
    }
  }
  return !max_covered || !min_uncovered || *max_covered < *min_uncovered;
}

void check_supply(const Reservation& reservation, const SupplyTrace& supply) {
  const std::size_t m = reservation_count(reservation);
  const Time deadline(reservation_deadline(reservation));
  auto fail = [](const std::string& what) { throw Error(ErrorCode::SupplyBudgetMismatch, what); };
  if (supply.windows.size() != m) {
    fail("supply has " + std::to_string(supply.windows.size()) + " window lists for " + std::to_string(m) +
         " reservations");
  }
  for (std::size_t p = 0; p < m; ++p) {
    Time sum(0);
    Time last(0);
    for (const auto& w : supply.windows[p]) {
      if (w.start < last || w.end <= w.start || w.end > deadline) {
        fail("reservation " + std::to_string(p + 1) + " has an unordered or out-of-range window");
      }
      sum += w.end - w.start;
      last = w.end;
    }
    if (sum != reservation_budget(reservation, p)) {
      fail("reservation " + std::to_string(p + 1) + " supplies " + to_string(sum) + " instead of " +
           to_string(reservation_budget(reservation, p)));
    }
  }
  if (std::holds_alternative<GangReservation>(reservation)) {
    for (std::size_t p = 1; p < m; ++p) {
      if (supply.windows[p] != supply.windows[0]) fail("gang reservations must share their windows");
    }
  }
}

SupplyTrace adversarial_supply(const Reservation& reservation, SupplyPreset preset, std::uint64_t seed,
                               std::size_t fragments) {
  const std::size_t m = reservation_count(reservation);
  const Time deadline(reservation_deadline(reservation));
  for (std::size_t p = 0; p < m; ++p) {
    const Time e = reservation_budget(reservation, p);
    if (e < 0 || e > deadline) throw Error(ErrorCode::InvalidArgument, "budget outside [0, D]");
  }
  std::seed_seq seq{seed};
  std::mt19937_64 rng(seq);
  SupplyTrace out;
  if (std::holds_alternative<GangReservation>(reservation)) {
    out.windows.assign(m, draw_windows(reservation_budget(reservation, 0), deadline, preset, rng, fragments));
  } else {
    for (std::size_t p = 0; p < m; ++p) {
      out.windows.push_back(draw_windows(reservation_budget(reservation, p), deadline, preset, rng, fragments));
    }
  }
  return out;
}

SupplyTrace full_supply(const Reservation& reservation) {
  const Time deadline(reservation_deadline(reservation));
  return SupplyTrace{std::vector<std::vector<Window>>(reservation_count(reservation), {Window{Time(0), deadline}})};
}

ScheduleTrace simulate_dedicated(const DagTask& task, const PriorityAssignment& priorities, std::size_t processors,
                                 const SimulationOptions& options) {
  if (processors == 0) throw Error(ErrorCode::InvalidArgument, "at least one processor required");
  // Any schedule ends by the total execution time, so one window covering it
  // models a dedicated processor.
  Time horizon(1);
  for (const Time& e : resolve_exec_times(task, options)) horizon += e;
  const std::vector<std::vector<Window>> windows(processors, {Window{Time(0), horizon}});
  return run(task, priorities, windows, options);
}

ScheduleTrace simulate_supply(const DagTask& task, const PriorityAssignment& priorities,
                              const Reservation& reservation, const SupplyTrace& supply,
                              const SimulationOptions& options) {
  if (options.mode != Preemption::Preemptive) {
    throw Error(ErrorCode::InvalidArgument, "reservation supply is simulated preemptively only");
  }
  check_supply(reservation, supply);
  return run(task, priorities, supply.windows, options);
}

Path extract_envelope(const ScheduleTrace& trace, const DagTask& task) {
  Path out;
  if (task.size() == 0 || trace.finish.size() != task.size()) return out;
  Vertex cur = 0;
  for (Vertex v = 1; v < task.size(); ++v) {
    if (trace.finish[v] > trace.finish[cur]) cur = v;
  }
  out.vertices.push_back(cur);
  while (!task.is_source(cur)) {
    const auto preds = task.predecessors(cur);
    Vertex best = preds.front();
    for (Vertex p : preds) {
      if (trace.finish[p] > trace.finish[best]) best = p;
    }
    cur = best;
    out.vertices.push_back(cur);
  }
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

PerturbationReport perturb_and_check(const DagTask& task, const PathCollection& collection, std::size_t processors,
                                     std::size_t trials, std::uint64_t seed, Preemption mode,
                                     std::size_t extra_processors) {
  PerturbationReport report;
  report.trials = trials;
  report.bound = mode == Preemption::Preemptive ? bound_preemptive(task, collection, processors)
                                                : bound_nonpreemptive(task, collection, processors);
  const auto priorities = PriorityAssignment::two_level(collection);
  std::seed_seq seq{seed};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> extra(0, extra_processors);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SimulationOptions options;
    options.mode = mode;
    options.collection = &collection;
    std::vector<Time> exec;
    for (Vertex v = 0; v < task.size(); ++v) {
      std::uniform_int_distribution<std::int64_t> quarters(0, 4 * task.wcet(v));
      exec.emplace_back(quarters(rng), 4);
    }
    options.exec_times = std::move(exec);
    const std::size_t m = processors + extra(rng);
    const auto trace = simulate_dedicated(task, priorities, m, options);
    report.max_makespan = std::max(report.max_makespan, trace.makespan);
    if (!trace.completed || trace.makespan > report.bound || !trace.invariant_violations.empty()) {
      ++report.violations;
      if (report.failures.size() < 10) {
        std::string what = "trial " + std::to_string(trial) + " on " + std::to_string(m) +
                           " processors: makespan " + to_string(trace.makespan);
        if (!trace.invariant_violations.empty()) what += ", " + trace.invariant_violations.front();
        report.failures.push_back(std::move(what));
      }
    }
  }
  return report;
}

std::string render_gantt(const ScheduleTrace& trace) {
  std::ostringstream out;
  for (std::size_t r = 0; r < trace.intervals.size(); ++r) {
    out << 'P' << r + 1;
    for (const auto& iv : trace.intervals[r]) {
      out << " | [" << to_string(iv.start) << ", " << to_string(iv.end) << ") "
          << (iv.vertex ? vertex_label(*iv.vertex) : "idle");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pathprog
