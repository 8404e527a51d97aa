#include "pathprog/dag.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <string>

namespace pathprog {

namespace {

// Kahn's algorithm with a min-heap of ready vertices. Returns fewer than n
// vertices when the graph has a cycle.
std::vector<Vertex> kahn(std::size_t n, const std::vector<std::vector<Vertex>>& succ) {
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& out : succ) {
    for (Vertex v : out) ++indegree[v];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    const Vertex u = ready.top();
    ready.pop();
    order.push_back(u);
    for (Vertex v : succ[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  return order;
}

}  // namespace

std::optional<Error> validate(const TaskDescription& desc) {
  const std::size_t n = desc.wcet.size();
  if (n == 0) return Error(ErrorCode::InvalidTask, "task has no vertices");
  for (std::size_t v = 0; v < n; ++v) {
    if (desc.wcet[v] < 0) {
      return Error(ErrorCode::NegativeWcet, "vertex " + std::to_string(v) + " has wcet " +
                                                std::to_string(desc.wcet[v]));
    }
  }
  std::set<Edge> seen;
  std::vector<std::vector<Vertex>> succ(n);
  for (const auto& [u, v] : desc.edges) {
    if (u >= n || v >= n) {
      return Error(ErrorCode::DanglingEdge,
                   "edge (" + std::to_string(u) + "," + std::to_string(v) + ") references a missing vertex");
    }
    if (u == v) return Error(ErrorCode::CyclicGraph, "self-loop on vertex " + std::to_string(u));
    if (!seen.insert({u, v}).second) {
      return Error(ErrorCode::DuplicateEdge,
                   "edge (" + std::to_string(u) + "," + std::to_string(v) + ") listed twice");
    }
    succ[u].push_back(v);
  }
  if (kahn(n, succ).size() != n) return Error(ErrorCode::CyclicGraph, "edge relation contains a cycle");
  if (desc.deadline <= 0) return Error(ErrorCode::InvalidTask, "deadline must be positive");
  if (desc.period <= 0) return Error(ErrorCode::InvalidTask, "period must be positive");
  return std::nullopt;
}

DagTask::DagTask(TaskDescription desc) : desc_(std::move(desc)) {
  if (auto err = validate(desc_)) throw *err;
  const std::size_t n = desc_.wcet.size();
  pred_.resize(n);
  succ_.resize(n);
  for (const auto& [u, v] : desc_.edges) {
    succ_[u].push_back(v);
    pred_[v].push_back(u);
  }
  for (auto& s : succ_) std::sort(s.begin(), s.end());
  for (auto& p : pred_) std::sort(p.begin(), p.end());
  topo_ = kahn(n, succ_);
}

DagTask DagTask::with_timing(std::int64_t deadline, std::int64_t period) const {
  TaskDescription d = desc_;
  d.deadline = deadline;
  d.period = period;
  return DagTask(std::move(d));
}

std::vector<Vertex> topological_order(const DagTask& task) {
  auto order = task.topological_order();
  return {order.begin(), order.end()};
}

Wcet total_volume(const DagTask& task) {
  Wcet sum = 0;
  for (Wcet w : task.wcets()) sum += w;
  return sum;
}

Wcet path_volume(const Path& path, std::span<const Wcet> wcet) {
  Wcet sum = 0;
  for (Vertex v : path.vertices) sum += wcet[v];
  return sum;
}

Wcet path_volume(const Path& path, const DagTask& task) { return path_volume(path, task.wcets()); }

WeightedPath longest_path(const DagTask& task, std::optional<std::span<const Wcet>> wcet_override) {
  const std::span<const Wcet> wcet = wcet_override.value_or(task.wcets());
  if (wcet.size() != task.size()) {
    throw Error(ErrorCode::InvalidArgument, "wcet override has wrong length");
  }
  const std::size_t n = task.size();

  // tail[v]: max volume of a path from v to any sink.
  std::vector<Wcet> tail(n, 0);
  const auto order = task.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    Wcet best = 0;
    for (Vertex s : task.successors(v)) best = std::max(best, tail[s]);
    tail[v] = wcet[v] + best;
  }

  // Walking forward from the smallest best source and always taking the
  // smallest best successor yields the lexicographically smallest optimum.
  std::optional<Vertex> start;
  for (Vertex v = 0; v < n; ++v) {
    if (task.is_source(v) && (!start || tail[v] > tail[*start])) start = v;
  }
  WeightedPath result;
  result.volume = tail[*start];
  Vertex cur = *start;
  result.path.vertices.push_back(cur);
  while (!task.is_sink(cur)) {
    const auto succ = task.successors(cur);
    Vertex next = succ.front();
    for (Vertex s : succ) {
      if (tail[s] > tail[next]) next = s;
    }
    cur = next;
    result.path.vertices.push_back(cur);
  }
  return result;
}

std::size_t count_paths(const DagTask& task, std::size_t limit) {
  const std::size_t cap = limit + 1;
  std::vector<std::size_t> from(task.size(), 0);
  const auto order = task.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (task.is_sink(v)) {
      from[v] = 1;
      continue;
    }
    std::size_t sum = 0;
    for (Vertex s : task.successors(v)) sum = std::min(cap, sum + from[s]);
    from[v] = sum;
  }
  std::size_t total = 0;
  for (Vertex v = 0; v < task.size(); ++v) {
    if (task.is_source(v)) total = std::min(cap, total + from[v]);
  }
  return total;
}

std::vector<Path> enumerate_paths(const DagTask& task, std::size_t limit) {
  const std::size_t count = count_paths(task, limit);
  if (count > limit) {
    throw Error(ErrorCode::PathExplosion, "more than " + std::to_string(limit) + " paths");
  }
  std::vector<Path> paths;
  paths.reserve(count);
  Path current;
  std::function<void(Vertex)> walk = [&](Vertex v) {
    current.vertices.push_back(v);
    if (task.is_sink(v)) {
      paths.push_back(current);
    } else {
      for (Vertex s : task.successors(v)) walk(s);
    }
    current.vertices.pop_back();
  };
  for (Vertex v = 0; v < task.size(); ++v) {
    if (task.is_source(v)) walk(v);
  }
  return paths;
}

}  // namespace pathprog
