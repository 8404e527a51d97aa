#include "pathprog/generator.hpp"

#include <algorithm>
#include <random>

namespace pathprog {

void validate(const GenParams& params) {
  if (params.parallelism == 0) throw Error(ErrorCode::InvalidArgument, "parallelism must be at least 1");
  if (params.min_layers == 0 || params.min_layers > params.max_layers) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= min_layers <= max_layers");
  }
  if (!(params.connection_probability >= 0.0 && params.connection_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "connection probability must lie in [0, 1]");
  }
  if (params.wcet_min < 0 || params.wcet_min > params.wcet_max) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= wcet_min <= wcet_max");
  }
}

DagTask generate(const GenParams& params) {
  validate(params);
  std::seed_seq seq{params.seed};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> layer_count(params.min_layers, params.max_layers);
  std::uniform_int_distribution<std::size_t> layer_size(1, params.parallelism);
  std::uniform_int_distribution<Wcet> wcet(params.wcet_min, params.wcet_max);
  std::bernoulli_distribution connect(params.connection_probability);

  TaskDescription desc;
  std::vector<Vertex> previous;
  const std::size_t layers = layer_count(rng);
  for (std::size_t l = 0; l < layers; ++l) {
    std::vector<Vertex> current;
    const std::size_t size = layer_size(rng);
    for (std::size_t i = 0; i < size; ++i) {
      const auto v = static_cast<Vertex>(desc.wcet.size());
      desc.wcet.push_back(wcet(rng));
      current.push_back(v);
      if (previous.empty()) continue;
      bool connected = false;
      for (Vertex u : previous) {
        if (connect(rng)) {
          desc.edges.emplace_back(u, v);
          connected = true;
        }
      }
      if (!connected) {
        std::uniform_int_distribution<std::size_t> pick(0, previous.size() - 1);
        desc.edges.emplace_back(previous[pick(rng)], v);
      }
    }
    previous = std::move(current);
  }
  Wcet total = 0;
  for (Wcet w : desc.wcet) total += w;
  desc.deadline = desc.period = std::max<Wcet>(total, 1);
  return DagTask(std::move(desc));
}

DagTask assign_deadline(const DagTask& task, const Time& rho, std::uint64_t seed) {
  if (rho <= 1) throw Error(ErrorCode::InvalidArgument, "rho must exceed 1");
  const Wcet longest = longest_path(task).volume;
  const Time upper = std::min(rho * longest, Time(total_volume(task)));
  // integers strictly between longest and upper
  const std::int64_t lo = longest + 1;
  const std::int64_t hi = ceil_time(upper).numerator() - 1;
  if (lo > hi) {
    throw Error(ErrorCode::EmptyDeadlineInterval,
                "no integer deadline in (" + std::to_string(longest) + ", " + to_string(upper) + ")");
  }
  std::seed_seq seq{seed};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::int64_t> pick(lo, hi);
  const std::int64_t deadline = pick(rng);
  return task.with_timing(deadline, deadline);
}

}  // namespace pathprog
