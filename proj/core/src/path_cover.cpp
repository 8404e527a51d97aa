#include "pathprog/path_cover.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

namespace pathprog {

namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(const std::vector<boost::dynamic_bitset<>>& adj)
      : adj_(adj), match_right_(adj.size(), kUnmatched), visited_(adj.size()) {}

  bool augment(std::size_t left) {
    for (auto r = adj_[left].find_first(); r != boost::dynamic_bitset<>::npos; r = adj_[left].find_next(r)) {
      if (visited_[r]) continue;
      visited_[r] = true;
      if (match_right_[r] == kUnmatched || augment(match_right_[r])) {
        match_right_[r] = left;
        return true;
      }
    }
    return false;
  }

  void reset_visited() { visited_.reset(); }
  const std::vector<std::size_t>& match_right() const { return match_right_; }

 private:
  const std::vector<boost::dynamic_bitset<>>& adj_;
  std::vector<std::size_t> match_right_;
  boost::dynamic_bitset<> visited_;
};

}  // namespace

std::vector<boost::dynamic_bitset<>> transitive_closure(const DagTask& task) {
  const std::size_t n = task.size();
  std::vector<boost::dynamic_bitset<>> reach(n, boost::dynamic_bitset<>(n));
  const auto order = task.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    for (Vertex s : task.successors(u)) {
      reach[u].set(s);
      reach[u] |= reach[s];
    }
  }
  return reach;
}

PathCover path_cover(const DagTask& task) {
  const std::size_t n = task.size();
  const auto reach = transitive_closure(task);

  BipartiteMatcher matcher(reach);
  for (Vertex u : task.topological_order()) {
    matcher.reset_visited();
    matcher.augment(u);
  }

  // next_in_chain[u] = v for every matched pair (u on the left, v on the right)
  std::vector<std::size_t> next_in_chain(n, kUnmatched);
  std::vector<bool> has_chain_pred(n, false);
  const auto& match_right = matcher.match_right();
  for (std::size_t v = 0; v < n; ++v) {
    if (match_right[v] != kUnmatched) {
      next_in_chain[match_right[v]] = v;
      has_chain_pred[v] = true;
    }
  }

  PathCover cover;
  for (Vertex head = 0; head < n; ++head) {
    if (has_chain_pred[head]) continue;

    std::vector<Vertex> chain;
    for (std::size_t v = head; v != kUnmatched; v = next_in_chain[v]) chain.push_back(static_cast<Vertex>(v));

    // Prefix back to a source through the smallest predecessors.
    std::vector<Vertex> prefix;
    for (Vertex v = chain.front(); !task.is_source(v);) {
      v = task.predecessors(v).front();
      prefix.push_back(v);
    }
    Path path;
    path.vertices.assign(prefix.rbegin(), prefix.rend());

    // Bridge consecutive chain members (comparable, not necessarily adjacent).
    for (std::size_t i = 0; i < chain.size(); ++i) {
      path.vertices.push_back(chain[i]);
      if (i + 1 == chain.size()) break;
      const Vertex target = chain[i + 1];
      Vertex cur = chain[i];
      while (true) {
        Vertex step = target;
        for (Vertex s : task.successors(cur)) {
          if (s == target || reach[s].test(target)) {
            step = s;
            break;
          }
        }
        if (step == target) break;
        path.vertices.push_back(step);
        cur = step;
      }
    }

    // Suffix to a sink through the smallest successors.
    for (Vertex v = chain.back(); !task.is_sink(v);) {
      v = task.successors(v).front();
      path.vertices.push_back(v);
    }
    cover.paths.push_back(std::move(path));
  }
  cover.width = cover.paths.size();
  return cover;
}

std::size_t max_antichain_bruteforce(const DagTask& task, std::size_t limit) {
  const std::size_t n = task.size();
  if (n >= 63 || (std::uint64_t{1} << n) > limit) {
    throw Error(ErrorCode::PathExplosion,
                "2^" + std::to_string(n) + " vertex subsets exceed the limit " + std::to_string(limit));
  }
  const auto reach = transitive_closure(task);
  std::vector<std::uint64_t> comparable(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (reach[u].test(v) || reach[v].test(u)) comparable[u] |= std::uint64_t{1} << v;
    }
  }
  std::size_t best = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool antichain = true;
    for (std::uint64_t rest = mask; rest != 0 && antichain; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      antichain = (comparable[v] & mask) == 0;
    }
    if (antichain) best = size;
  }
  return best;
}

}  // namespace pathprog
