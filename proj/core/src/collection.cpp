#include "pathprog/collection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>

#include "pathprog/path_cover.hpp"

namespace pathprog {

PathCollection::PathCollection(const DagTask& task, std::vector<Path> paths)
    : paths_(std::move(paths)), covered_(task.size(), false) {
  for (const auto& p : paths_) {
    for (Vertex v : p.vertices) {
      if (v >= task.size()) throw Error(ErrorCode::InvalidArgument, "path references a missing vertex");
      covered_[v] = true;
    }
  }
  for (Vertex v = 0; v < task.size(); ++v) {
    (covered_[v] ? covered_volume_ : complement_volume_) += task.wcet(v);
  }
}

std::vector<Vertex> PathCollection::covered_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < covered_.size(); ++v) {
    if (covered_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> PathCollection::complement_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < covered_.size(); ++v) {
    if (!covered_[v]) out.push_back(v);
  }
  return out;
}

GreedyCoverage greedy_coverage(const DagTask& task, std::size_t max_paths) {
  GreedyCoverage out;
  std::vector<Wcet> residual(task.wcets().begin(), task.wcets().end());
  Wcet covered = 0;
  for (std::size_t n = 1; n <= max_paths; ++n) {
    auto best = longest_path(task, std::span<const Wcet>(residual));
    if (best.volume == 0) break;
    covered += best.volume;
    for (Vertex v : best.path.vertices) residual[v] = 0;
    out.paths.push_back(std::move(best.path));
    out.prefix_volume.push_back(covered);
  }
  return out;
}

PathCollection greedy_collection(const DagTask& task, const GreedyCoverage& greedy, std::size_t n) {
  if (n == 0 || n > greedy.paths.size()) {
    throw Error(ErrorCode::InvalidArgument, "greedy collection size out of range");
  }
  return PathCollection(task, {greedy.paths.begin(), greedy.paths.begin() + static_cast<std::ptrdiff_t>(n)});
}

NpcaResult npca(const DagTask& task, std::size_t processors) {
  if (processors == 0) throw Error(ErrorCode::InvalidArgument, "at least one processor required");

  auto cover = path_cover(task);
  if (cover.width <= processors) {
    const std::size_t w = cover.width;
    PathCollection collection(task, std::move(cover.paths));
    return NpcaResult{std::move(collection), w, w, true, {}, Time(0)};
  }

  const Wcet total = total_volume(task);
  auto greedy = greedy_coverage(task, processors);

  std::optional<Time> best;
  std::size_t n_star = 0;
  for (std::size_t n = 1; n <= greedy.paths.size(); ++n) {
    const Time z(total - greedy.prefix_volume[n - 1], static_cast<std::int64_t>(processors - n + 1));
    if (!best || z < *best) {
      best = z;
      n_star = n;
    }
  }
  auto collection = greedy_collection(task, greedy, n_star);
  return NpcaResult{std::move(collection), n_star, cover.width, false, std::move(greedy.prefix_volume), *best};
}

OptimalCollection optimal_collection_bruteforce(const DagTask& task, std::size_t processors, std::size_t limit) {
  if (processors == 0) throw Error(ErrorCode::InvalidArgument, "at least one processor required");
  const auto paths = enumerate_paths(task, limit);
  const std::size_t words = (task.size() + 63) / 64;
  using Mask = std::vector<std::uint64_t>;

  std::vector<Mask> path_masks;
  for (const auto& p : paths) {
    Mask m(words, 0);
    for (Vertex v : p.vertices) m[v / 64] |= std::uint64_t{1} << (v % 64);
    path_masks.push_back(std::move(m));
  }

  struct Entry {
    std::size_t paths_used;
    std::vector<std::size_t> witness;
  };
  // Breadth-first over unions: a mask is recorded at the first level it can
  // be produced, i.e. with the fewest paths whose union it is.
  std::map<Mask, Entry> seen;
  std::vector<Mask> frontier;
  for (std::size_t i = 0; i < path_masks.size(); ++i) {
    if (seen.emplace(path_masks[i], Entry{1, {i}}).second) frontier.push_back(path_masks[i]);
  }
  for (std::size_t k = 2; k <= processors && !frontier.empty(); ++k) {
    std::vector<Mask> next;
    for (const auto& base : frontier) {
      const auto witness = seen.at(base).witness;
      for (std::size_t i = 0; i < path_masks.size(); ++i) {
        Mask u = base;
        for (std::size_t w = 0; w < words; ++w) u[w] |= path_masks[i][w];
        if (seen.contains(u)) continue;
        auto wit = witness;
        wit.push_back(i);
        seen.emplace(u, Entry{k, std::move(wit)});
        next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }

  const Wcet longest = longest_path(task).volume;
  const Wcet total = total_volume(task);
  std::optional<Time> best;
  const Entry* best_entry = nullptr;
  for (const auto& [mask, entry] : seen) {
    Wcet covered = 0;
    for (Vertex v = 0; v < task.size(); ++v) {
      if (mask[v / 64] >> (v % 64) & 1U) covered += task.wcet(v);
    }
    const Time bound =
        Time(longest) + Time(total - covered, static_cast<std::int64_t>(processors - entry.paths_used + 1));
    if (!best || bound < *best || (bound == *best && entry.paths_used < best_entry->paths_used)) {
      best = bound;
      best_entry = &entry;
    }
  }
  std::vector<Path> chosen;
  for (std::size_t i : best_entry->witness) chosen.push_back(paths[i]);
  return OptimalCollection{PathCollection(task, std::move(chosen)), *best};
}

double approximation_ratio_bound(std::size_t width, std::size_t processors, std::size_t n_star) {
  if (width == 0 || n_star == 0 || n_star > processors) {
    throw Error(ErrorCode::InvalidArgument, "approximation ratio needs w >= 1 and 1 <= n* <= M");
  }
  if (processors >= width) return 1.0;
  const double w = static_cast<double>(width);
  const double m = static_cast<double>(processors);
  const double n = static_cast<double>(n_star);
  return 1.0 + m / (m - n + 1.0) * std::pow(1.0 - 1.0 / w, n);
}

double approximation_guarantee(std::size_t width, std::size_t processors) {
  double best = approximation_ratio_bound(width, processors, 1);
  for (std::size_t n = 2; n <= processors; ++n) {
    best = std::min(best, approximation_ratio_bound(width, processors, n));
  }
  return best;
}

}  // namespace pathprog
