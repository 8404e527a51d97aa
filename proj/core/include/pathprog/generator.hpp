#pragma once

#include <cstdint>

#include "pathprog/dag.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

/// Layered random DAG parameters.
struct GenParams {
  std::size_t parallelism = 8;  // max subtasks per layer
  std::size_t min_layers = 5;
  std::size_t max_layers = 10;
  double connection_probability = 0.2;
  Wcet wcet_min = 1;
  Wcet wcet_max = 100;
  std::uint64_t seed = 0;
};

/// Name of the PRNG behind generate(); recorded in experiment output.
inline constexpr const char* kGeneratorRng = "mt19937_64";

/// Throws InvalidArgument on inconsistent parameters.
void validate(const GenParams& params);

/// Layer count uniform in [min_layers, max_layers], layer sizes uniform in
/// [1, parallelism]. Each subtask of layer l >= 2 draws an edge from every
/// subtask of layer l - 1 with probability p; a subtask left without
/// predecessors gets one uniformly chosen. Deadline and period are set to
/// the volume C as a placeholder until assign_deadline() replaces them.
DagTask generate(const GenParams& params);

/// Integer D drawn uniformly from the open interval
/// (vol(pi*), min(rho * vol(pi*), C)); T = D. Throws EmptyDeadlineInterval
/// when the interval holds no integer.
DagTask assign_deadline(const DagTask& task, const Time& rho, std::uint64_t seed);

}  // namespace pathprog
