#pragma once

#include <cstddef>
#include <optional>

#include "pathprog/collection.hpp"
#include "pathprog/dag.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

/// Preemptive List-FP response-time bound on M dedicated processors:
/// vol(pi*) + vol(V_s^c)/(M - n + 1). Throws CollectionTooLarge if n > M.
Time bound_preemptive(const DagTask& task, const PathCollection& collection, std::size_t processors);

/// Non-preemptive bound vol(pi*) + vol(V_s^c)/(M - n). Requires n <= M - 1,
/// throws CollectionTooLarge otherwise.
Time bound_nonpreemptive(const DagTask& task, const PathCollection& collection, std::size_t processors);

/// Federated-scheduling bound vol(pi*) + (C - vol(pi*))/M.
Time bound_federated(const DagTask& task, std::size_t processors);

/// max(vol(pi*), C/M); no schedule on M processors can beat it.
Time bound_lower(const DagTask& task, std::size_t processors);

struct AnalysisResult {
  std::size_t processors = 0;
  Wcet longest_path_volume = 0;
  Wcet total_volume = 0;
  Time bound_preemptive;
  std::optional<Time> bound_nonpreemptive;
  Time federated_bound;
  Time lower_bound;
  NpcaResult selection;
};

/// nPCA collection plus every bound for it. The non-preemptive bound is only
/// present when n* <= M - 1.
AnalysisResult analyze(const DagTask& task, std::size_t processors);

struct NonPreemptiveAnalysis {
  NpcaResult selection;
  Time bound;
};

/// Collection minimising the non-preemptive bound. vol(V_s^c)/(M - n) over
/// n <= M - 1 is the nPCA objective for M - 1 processors, so this is nPCA
/// run with one processor fewer. nullopt when M < 2.
std::optional<NonPreemptiveAnalysis> analyze_nonpreemptive(const DagTask& task, std::size_t processors);

}  // namespace pathprog
