#include "pathprog/bounds.hpp"

#include <algorithm>
#include <string>

namespace pathprog {

namespace {

void require_processors(std::size_t processors) {
  if (processors == 0) throw Error(ErrorCode::InvalidArgument, "at least one processor required");
}

}  // namespace

Time bound_preemptive(const DagTask& task, const PathCollection& collection, std::size_t processors) {
  require_processors(processors);
  const std::size_t n = collection.n();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty path collection");
  if (n > processors) {
    throw Error(ErrorCode::CollectionTooLarge,
                std::to_string(n) + " paths on " + std::to_string(processors) + " processors");
  }
  const auto denom = static_cast<std::int64_t>(processors - n + 1);
  return Time(longest_path(task).volume) + Time(collection.complement_volume(), denom);
}

Time bound_nonpreemptive(const DagTask& task, const PathCollection& collection, std::size_t processors) {
  require_processors(processors);
  const std::size_t n = collection.n();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty path collection");
  if (n >= processors) {
    throw Error(ErrorCode::CollectionTooLarge, "non-preemptive bound needs n <= M - 1, got n = " +
                                                   std::to_string(n) + ", M = " + std::to_string(processors));
  }
  const auto denom = static_cast<std::int64_t>(processors - n);
  return Time(longest_path(task).volume) + Time(collection.complement_volume(), denom);
}

Time bound_federated(const DagTask& task, std::size_t processors) {
  require_processors(processors);
  const Wcet longest = longest_path(task).volume;
  return Time(longest) + Time(total_volume(task) - longest, static_cast<std::int64_t>(processors));
}

Time bound_lower(const DagTask& task, std::size_t processors) {
  require_processors(processors);
  return std::max(Time(longest_path(task).volume),
                  Time(total_volume(task), static_cast<std::int64_t>(processors)));
}

AnalysisResult analyze(const DagTask& task, std::size_t processors) {
  auto selection = npca(task, processors);
  AnalysisResult r{
      .processors = processors,
      .longest_path_volume = longest_path(task).volume,
      .total_volume = total_volume(task),
      .bound_preemptive = bound_preemptive(task, selection.collection, processors),
      .bound_nonpreemptive = std::nullopt,
      .federated_bound = bound_federated(task, processors),
      .lower_bound = bound_lower(task, processors),
      .selection = std::move(selection),
  };
  if (r.selection.n_star + 1 <= processors) {
    r.bound_nonpreemptive = bound_nonpreemptive(task, r.selection.collection, processors);
  }
  return r;
}

std::optional<NonPreemptiveAnalysis> analyze_nonpreemptive(const DagTask& task, std::size_t processors) {
  require_processors(processors);
  if (processors < 2) return std::nullopt;
  auto selection = npca(task, processors - 1);
  const Time bound = bound_nonpreemptive(task, selection.collection, processors);
  return NonPreemptiveAnalysis{std::move(selection), bound};
}

}  // namespace pathprog
