#pragma once

#include <cstddef>
#include <vector>

#include "pathprog/dag.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

/// An n-path collection psi together with its covered vertex set V_s and the
/// complement V_s^c.
class PathCollection {
 public:
  PathCollection(const DagTask& task, std::vector<Path> paths);

  std::size_t n() const noexcept { return paths_.size(); }
  const std::vector<Path>& paths() const noexcept { return paths_; }

  /// covered()[v] is true iff v lies on at least one path.
  const std::vector<bool>& covered() const noexcept { return covered_; }
  bool is_covered(Vertex v) const { return covered_[v]; }
  std::vector<Vertex> covered_vertices() const;
  std::vector<Vertex> complement_vertices() const;

  Wcet covered_volume() const noexcept { return covered_volume_; }
  Wcet complement_volume() const noexcept { return complement_volume_; }

 private:
  std::vector<Path> paths_;
  std::vector<bool> covered_;
  Wcet covered_volume_ = 0;
  Wcet complement_volume_ = 0;
};

/// Greedy maximum-coverage sequence shared by nPCA and the provisioning
/// algorithms: repeatedly take the longest path under the residual WCETs and
/// zero its vertices. Stops after `max_paths` paths or once the residual
/// longest path has volume zero.
struct GreedyCoverage {
  std::vector<Path> paths;          // pi*_1, pi*_2, ...
  std::vector<Wcet> prefix_volume;  // xi[n-1] = vol(V_s(psi_n))
};

GreedyCoverage greedy_coverage(const DagTask& task, std::size_t max_paths);

/// The first n greedy paths as a collection.
PathCollection greedy_collection(const DagTask& task, const GreedyCoverage& greedy, std::size_t n);

struct NpcaResult {
  PathCollection collection;
  std::size_t n_star = 0;
  std::size_t width = 0;
  bool full_cover = false;                   // returned the PathCover (w <= M)
  std::vector<Wcet> covered_volume_prefix;   // xi, empty on the full-cover branch
  Time objective;                            // z = vol(V_s^c) / (M - n* + 1)
};

/// n-path collection approximation for M processors.
NpcaResult npca(const DagTask& task, std::size_t processors);

struct OptimalCollection {
  PathCollection collection;
  Time bound;  // vol(pi*) + vol(V_s^c)/(M - n + 1)
};

/// Exhaustive search over all collections of at most M paths for the one
/// minimising the preemptive bound. Throws PathExplosion when the DAG has more
/// than `limit` paths. Test oracle for nPCA.
OptimalCollection optimal_collection_bruteforce(const DagTask& task, std::size_t processors,
                                                std::size_t limit = 4096);

/// Approximation factor of nPCA's collection relative to the optimal
/// makespan: 1 if M >= w, else 1 + M/(M-n*+1) * (1-1/w)^n*.
double approximation_ratio_bound(std::size_t width, std::size_t processors, std::size_t n_star);

/// min over 1 <= n <= M of the factor above; never exceeds 2 - 1/w.
double approximation_guarantee(std::size_t width, std::size_t processors);

}  // namespace pathprog
