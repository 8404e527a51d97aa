#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pathprog/dag.hpp"

namespace pathprog::test {

// The 9-vertex example DAG. Ids are the labels v1..v9 minus one.
inline DagTask example_dag(std::int64_t deadline = 16) {
  TaskDescription d;
  d.wcet = {3, 3, 1, 1, 2, 3, 2, 2, 1};
  d.edges = {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {4, 5}, {0, 6}, {6, 7}, {6, 4}, {4, 8}};
  d.deadline = deadline;
  d.period = deadline;
  return DagTask(std::move(d));
}

// Path from 1-based labels: P({1, 7, 5, 6}) is (v1, v7, v5, v6).
inline Path P(std::initializer_list<Vertex> labels) {
  Path p;
  for (Vertex l : labels) p.vertices.push_back(l - 1);
  return p;
}

// pi_1..pi_6 in the order the example lists them.
inline std::vector<Path> example_paths() {
  return {P({1, 2, 3}), P({1, 4, 5, 9}), P({1, 4, 5, 6}), P({1, 7, 5, 9}), P({1, 7, 5, 6}), P({1, 7, 8})};
}

inline DagTask chain(std::vector<Wcet> wcet, std::int64_t deadline = 100) {
  TaskDescription d;
  for (Vertex v = 0; v + 1 < wcet.size(); ++v) d.edges.emplace_back(v, v + 1);
  d.wcet = std::move(wcet);
  d.deadline = d.period = deadline;
  return DagTask(std::move(d));
}

inline DagTask isolated(std::vector<Wcet> wcet, std::int64_t deadline = 100) {
  TaskDescription d;
  d.wcet = std::move(wcet);
  d.deadline = d.period = deadline;
  return DagTask(std::move(d));
}

inline DagTask diamond(std::vector<Wcet> wcet = {1, 1, 1, 1}) {
  TaskDescription d;
  d.wcet = std::move(wcet);
  d.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return DagTask(std::move(d));
}

// Arbitrary (non-layered) DAG: a random vertex permutation fixes the
// precedence direction and every forward pair is an edge with probability p.
inline DagTask random_dag(std::mt19937_64& rng, std::size_t min_vertices, std::size_t max_vertices, double p,
                          Wcet max_wcet = 20, Wcet min_wcet = 1) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(min_vertices, max_vertices)(rng);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<Wcet> wcet(min_wcet, max_wcet);
  TaskDescription d;
  for (std::size_t i = 0; i < n; ++i) d.wcet.push_back(wcet(rng));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edge(rng)) d.edges.emplace_back(order[i], order[j]);
    }
  }
  Wcet total = 0;
  for (Wcet w : d.wcet) total += w;
  d.deadline = d.period = std::max<Wcet>(total, 1);
  return DagTask(std::move(d));
}

inline std::string data_file(const std::string& name) { return std::string(PATHPROG_TEST_DATA_DIR) + "/" + name; }

}  // namespace pathprog::test
