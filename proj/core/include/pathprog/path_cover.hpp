#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pathprog/dag.hpp"

namespace pathprog {

/// Minimum set of full paths covering every vertex; |paths| equals the DAG
/// width (maximum antichain size).
struct PathCover {
  std::vector<Path> paths;
  std::size_t width = 0;
};

/// reach[u][v] is set iff there is a non-empty directed path u -> v.
std::vector<boost::dynamic_bitset<>> transitive_closure(const DagTask& task);

/// Dilworth decomposition via maximum bipartite matching on the transitive
/// closure, with each chain stretched into a full source-to-sink path.
PathCover path_cover(const DagTask& task);

/// Width by exhaustive subset search; test oracle for path_cover. Throws
/// PathExplosion when 2^|V| exceeds `limit`.
std::size_t max_antichain_bruteforce(const DagTask& task, std::size_t limit = std::size_t{1} << 22);

}  // namespace pathprog
