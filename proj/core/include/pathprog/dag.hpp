#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pathprog/error.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Raw task data as read from disk or produced by the generator. May violate
/// any of the DAG invariants; DagTask validates it on construction.
struct TaskDescription {
  std::vector<Wcet> wcet;  // indexed by vertex id, |V| = wcet.size()
  std::vector<Edge> edges;
  std::int64_t deadline = 1;
  std::int64_t period = 1;
};

/// Returns the first violated invariant, or nullopt when the description is a
/// valid DAG task.
std::optional<Error> validate(const TaskDescription& desc);

/// A full source-to-sink path, vertices in precedence order.
struct Path {
  std::vector<Vertex> vertices;

  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;
};

/// Validated, immutable sporadic DAG task (G, D, T) with per-vertex WCETs.
class DagTask {
 public:
  /// Throws Error when `desc` fails validate().
  explicit DagTask(TaskDescription desc);

  std::size_t size() const noexcept { return desc_.wcet.size(); }
  Wcet wcet(Vertex v) const { return desc_.wcet[v]; }
  std::span<const Wcet> wcets() const noexcept { return desc_.wcet; }
  std::span<const Edge> edges() const noexcept { return desc_.edges; }
  std::span<const Vertex> predecessors(Vertex v) const { return pred_[v]; }
  std::span<const Vertex> successors(Vertex v) const { return succ_[v]; }
  bool is_source(Vertex v) const { return pred_[v].empty(); }
  bool is_sink(Vertex v) const { return succ_[v].empty(); }

  std::int64_t deadline() const noexcept { return desc_.deadline; }
  std::int64_t period() const noexcept { return desc_.period; }

  /// Deterministic topological order (Kahn, smallest ready id first).
  std::span<const Vertex> topological_order() const noexcept { return topo_; }

  const TaskDescription& description() const noexcept { return desc_; }

  /// Copy with a different deadline and period; the graph is unchanged.
  DagTask with_timing(std::int64_t deadline, std::int64_t period) const;

 private:
  TaskDescription desc_;
  std::vector<std::vector<Vertex>> pred_;
  std::vector<std::vector<Vertex>> succ_;
  std::vector<Vertex> topo_;
};

/// Free-function form of DagTask::topological_order for symmetry with the
/// other graph operations.
std::vector<Vertex> topological_order(const DagTask& task);

/// Sum of all WCETs (C).
Wcet total_volume(const DagTask& task);

/// Summed WCET of the vertices of `path` under `wcet`.
Wcet path_volume(const Path& path, std::span<const Wcet> wcet);
Wcet path_volume(const Path& path, const DagTask& task);

struct WeightedPath {
  Path path;
  Wcet volume = 0;
};

/// Maximum-volume full path by DP over the topological order. Among paths of
/// equal volume the lexicographically smallest vertex sequence is returned.
/// `wcet_override`, when given, replaces the task's WCETs (|V| entries).
WeightedPath longest_path(const DagTask& task,
                          std::optional<std::span<const Wcet>> wcet_override = std::nullopt);

inline constexpr std::size_t kDefaultPathLimit = 1'000'000;

/// All full paths, lexicographically ordered. Throws PathExplosion when the
/// DAG has more than `limit` paths.
std::vector<Path> enumerate_paths(const DagTask& task, std::size_t limit = kDefaultPathLimit);

/// Number of full paths, saturating at limit + 1.
std::size_t count_paths(const DagTask& task, std::size_t limit = kDefaultPathLimit);

}  // namespace pathprog
