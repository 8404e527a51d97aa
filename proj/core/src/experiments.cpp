#include "pathprog/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "pathprog/bounds.hpp"
#include "pathprog/collection.hpp"
#include "pathprog/reservation.hpp"
#include "pathprog/simulator.hpp"

namespace pathprog {

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fixed(const Time& t) { return format_fixed(t, 4); }

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out + '\n';
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Results are
// written by index, so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Cell {
  std::size_t parallelism;
  double probability;
  std::size_t processors;  // makespan / validate
  Time rho;                // waste / uet
};

std::vector<Cell> processor_cells(const ExperimentConfig& c) {
  std::vector<Cell> out;
  for (auto p : c.parallelism) {
    for (auto q : c.connection_probabilities) {
      for (auto m : c.processors) out.push_back(Cell{p, q, m, Time(0)});
    }
  }
  return out;
}

std::vector<Cell> rho_cells(const ExperimentConfig& c) {
  std::vector<Cell> out;
  for (auto p : c.parallelism) {
    for (auto q : c.connection_probabilities) {
      for (const auto& r : c.rhos) out.push_back(Cell{p, q, 0, r});
    }
  }
  return out;
}

template <typename Row>
std::vector<Row> run_cells(const ExperimentConfig& config, const std::vector<Cell>& cells,
                           const std::function<Row(std::size_t, const Cell&, std::size_t)>& sample) {
  validate(config);
  std::vector<Row> rows(cells.size() * config.samples);
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    const std::size_t cell = i / config.samples;
    rows[i] = sample(cell, cells[cell], i % config.samples);
  });
  return rows;
}

DagTask sample_task(const ExperimentConfig& config, const Cell& cell, std::size_t cell_index, std::size_t sample) {
  GenParams params;
  params.parallelism = cell.parallelism;
  params.min_layers = config.min_layers;
  params.max_layers = config.max_layers;
  params.connection_probability = cell.probability;
  params.seed = derive_seed(config.seed, cell_index, sample, 0);
  return generate(params);
}

std::optional<DagTask> with_deadline(const DagTask& task, const ExperimentConfig& config, const Cell& cell,
                                     std::size_t cell_index, std::size_t sample) {
  try {
    return assign_deadline(task, cell.rho, derive_seed(config.seed, cell_index, sample, 1));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyDeadlineInterval) throw;
    return std::nullopt;
  }
}

std::size_t processor_budget(const ExperimentConfig& config, const DagTask& task) {
  return config.limit == ProcessorLimit::Fixed ? config.fixed_processors : task.size();
}

std::optional<GangProvision> gang_for(const ExperimentConfig& config, const DagTask& task) {
  if (config.limit == ProcessorLimit::Unbounded) return provision_gang_unbounded(task);
  return provision_gang(task, processor_budget(config, task));
}

std::optional<OrdinaryProvision> ordinary_for(const ExperimentConfig& config, const DagTask& task) {
  if (config.limit == ProcessorLimit::Unbounded) return provision_ordinary_unbounded(task);
  return provision_ordinary(task, processor_budget(config, task));
}

std::optional<OrdinaryProvision> uet_for(const ExperimentConfig& config, const DagTask& task) {
  if (config.limit == ProcessorLimit::Unbounded) return provision_uet_unbounded(task);
  return provision_uet_baseline(task, processor_budget(config, task));
}

bool supply_check(const DagTask& task, const Reservation& reservation, const PathCollection& collection,
                  std::uint64_t seed) {
  const auto supply = adversarial_supply(reservation, SupplyPreset::Random, seed);
  SimulationOptions options;
  options.collection = &collection;
  const auto trace = simulate_supply(task, PriorityAssignment::two_level(collection), reservation, supply, options);
  return trace.completed && trace.makespan <= Time(task.deadline()) && trace.invariant_violations.empty();
}

std::string limit_name(const ExperimentConfig& config) {
  switch (config.limit) {
    case ProcessorLimit::Unbounded: return "unbounded";
    case ProcessorLimit::VertexCount: return "|V|";
    case ProcessorLimit::Fixed: return std::to_string(config.fixed_processors);
  }
  return "";
}

std::string header_line(const ExperimentConfig& config) {
  return to_string(config.kind) + " experiment, " + std::to_string(config.samples) + " samples per cell, seed " +
         std::to_string(config.seed) + ", rng " + kGeneratorRng + "\n";
}

std::string summary_row(const char* label, const Summary& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "  %-10s %6zu %10.4f %10.4f %10.4f %10.4f %10.4f\n", label, s.count, s.min, s.median,
                s.mean, s.max, s.variance);
  return buf;
}

constexpr const char* kStatsHeader = "  %-10s %6s %10s %10s %10s %10s %10s\n";

std::string stats_header() {
  char buf[160];
  std::snprintf(buf, sizeof buf, kStatsHeader, "", "count", "min", "median", "mean", "max", "variance");
  return buf;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Makespan: return "makespan";
    case ExperimentKind::Waste: return "waste";
    case ExperimentKind::UetCompare: return "uet-compare";
    case ExperimentKind::Validate: return "validate";
  }
  return "";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "makespan") return ExperimentKind::Makespan;
  if (text == "waste") return ExperimentKind::Waste;
  if (text == "uet-compare" || text == "uet") return ExperimentKind::UetCompare;
  if (text == "validate") return ExperimentKind::Validate;
  throw Error(ErrorCode::InvalidArgument, "unknown experiment kind \"" + std::string(text) + "\"");
}

std::string to_string(SampleStatus status) {
  switch (status) {
    case SampleStatus::Ok: return "ok";
    case SampleStatus::EmptyDeadline: return "empty-deadline";
    case SampleStatus::Infeasible: return "infeasible";
  }
  return "";
}

void validate(const ExperimentConfig& config) {
  if (config.parallelism.empty() || config.connection_probabilities.empty()) {
    throw Error(ErrorCode::InvalidArgument, "generator grid must not be empty");
  }
  const bool needs_processors =
      config.kind == ExperimentKind::Makespan || config.kind == ExperimentKind::Validate;
  if (needs_processors && (config.processors.empty() ||
                           std::find(config.processors.begin(), config.processors.end(), 0U) !=
                               config.processors.end())) {
    throw Error(ErrorCode::InvalidArgument, "processor grid must be non-empty and positive");
  }
  if (!needs_processors && config.rhos.empty()) throw Error(ErrorCode::InvalidArgument, "rho grid must not be empty");
  if (config.samples == 0) throw Error(ErrorCode::InvalidArgument, "at least one sample per cell");
  if (config.limit == ProcessorLimit::Fixed && config.fixed_processors == 0) {
    throw Error(ErrorCode::InvalidArgument, "fixed processor limit must be positive");
  }
  for (auto p : config.parallelism) {
    GenParams params;
    params.parallelism = p;
    params.min_layers = config.min_layers;
    params.max_layers = config.max_layers;
    for (double q : config.connection_probabilities) {
      params.connection_probability = q;
      validate(params);
    }
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t cell, std::size_t sample, std::size_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(sample),
                    static_cast<std::uint32_t>(stream)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

Path random_path(const DagTask& task, std::mt19937_64& rng) {
  std::vector<Vertex> sources;
  for (Vertex v = 0; v < task.size(); ++v) {
    if (task.is_source(v)) sources.push_back(v);
  }
  Path path;
  Vertex cur = sources[std::uniform_int_distribution<std::size_t>(0, sources.size() - 1)(rng)];
  path.vertices.push_back(cur);
  while (!task.is_sink(cur)) {
    const auto succ = task.successors(cur);
    cur = succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)];
    path.vertices.push_back(cur);
  }
  return path;
}

Summary summarize(std::vector<double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.variance = sq / static_cast<double>(values.size());
  return s;
}

std::vector<MakespanRow> run_makespan_experiment(const ExperimentConfig& config) {
  const auto cells = processor_cells(config);
  return run_cells<MakespanRow>(config, cells, [&](std::size_t ci, const Cell& cell, std::size_t s) {
    const DagTask task = sample_task(config, cell, ci, s);
    const auto analysis = analyze(task, cell.processors);
    MakespanRow row;
    row.cell = ci;
    row.sample = s;
    row.parallelism = cell.parallelism;
    row.probability = cell.probability;
    row.processors = cell.processors;
    row.vertices = task.size();
    row.width = analysis.selection.width;
    row.longest = analysis.longest_path_volume;
    row.total = analysis.total_volume;
    row.n_star = analysis.selection.n_star;
    row.our = analysis.bound_preemptive;
    row.fed = analysis.federated_bound;
    row.lower = analysis.lower_bound;
    row.our_relative = row.our / row.lower * 100;
    row.fed_relative = row.fed / row.lower * 100;
    SimulationOptions options;
    options.collection = &analysis.selection.collection;
    const auto trace = simulate_dedicated(task, PriorityAssignment::two_level(analysis.selection.collection),
                                          cell.processors, options);
    row.simulated = trace.makespan;
    row.simulation_ok = trace.completed && trace.makespan <= row.our && trace.invariant_violations.empty() &&
                        row.our <= row.fed && row.our_relative >= 100;
    return row;
  });
}

std::vector<WasteRow> run_waste_experiment(const ExperimentConfig& config) {
  const auto cells = rho_cells(config);
  return run_cells<WasteRow>(config, cells, [&](std::size_t ci, const Cell& cell, std::size_t s) {
    const DagTask generated = sample_task(config, cell, ci, s);
    WasteRow row;
    row.cell = ci;
    row.sample = s;
    row.parallelism = cell.parallelism;
    row.probability = cell.probability;
    row.rho = cell.rho;
    row.vertices = generated.size();
    row.longest = longest_path(generated).volume;
    row.total = total_volume(generated);
    const auto task = with_deadline(generated, config, cell, ci, s);
    if (!task) {
      row.gang_status = row.ordinary_status = SampleStatus::EmptyDeadline;
      return row;
    }
    row.deadline = task->deadline();
    if (auto gang = gang_for(config, *task)) {
      row.gang_m = gang->reservation.m;
      row.gang_n = gang->reservation.n;
      row.gang_budget = gang->reservation.budget;
      row.gang_waste_ratio = waste_ratio(gang->reservation, *task);
      row.simulation_ok = row.simulation_ok &&
                          satisfies_gang_condition(*task, gang->reservation, gang->collection) &&
                          supply_check(*task, gang->reservation, gang->collection, derive_seed(config.seed, ci, s, 2));
    } else {
      row.gang_status = SampleStatus::Infeasible;
    }
    if (auto ord = ordinary_for(config, *task)) {
      row.ordinary_m = ord->reservation.m();
      row.ordinary_n = ord->reservation.n;
      row.ordinary_service = ord->total_service;
      row.ordinary_waste_ratio = waste_ratio(ord->reservation, *task);
      row.simulation_ok = row.simulation_ok &&
                          satisfies_ordinary_condition(*task, ord->reservation, ord->collection) &&
                          supply_check(*task, ord->reservation, ord->collection, derive_seed(config.seed, ci, s, 3));
    } else {
      row.ordinary_status = SampleStatus::Infeasible;
    }
    return row;
  });
}

std::vector<UetRow> run_uet_experiment(const ExperimentConfig& config) {
  const auto cells = rho_cells(config);
  return run_cells<UetRow>(config, cells, [&](std::size_t ci, const Cell& cell, std::size_t s) {
    const DagTask generated = sample_task(config, cell, ci, s);
    UetRow row;
    row.cell = ci;
    row.sample = s;
    row.parallelism = cell.parallelism;
    row.probability = cell.probability;
    row.rho = cell.rho;
    row.vertices = generated.size();
    row.longest = longest_path(generated).volume;
    row.total = total_volume(generated);
    const auto task = with_deadline(generated, config, cell, ci, s);
    if (!task) {
      row.our_status = row.uet_status = SampleStatus::EmptyDeadline;
      return row;
    }
    row.deadline = task->deadline();
    const auto ours = ordinary_for(config, *task);
    if (ours) {
      row.our_m = ours->reservation.m();
      row.our_n = ours->reservation.n;
      row.our_service = ours->total_service;
      row.simulation_ok =
          satisfies_ordinary_condition(*task, ours->reservation, ours->collection) &&
          supply_check(*task, ours->reservation, ours->collection, derive_seed(config.seed, ci, s, 3));
    } else {
      row.our_status = SampleStatus::Infeasible;
    }
    if (auto uet = uet_for(config, *task)) {
      row.uet_m = uet->reservation.m();
      row.uet_service = uet->total_service;
    } else {
      row.uet_status = SampleStatus::Infeasible;
    }
    if (row.both_feasible()) {
      row.service_ratio = row.our_service / row.uet_service * 100;
      row.size_difference = static_cast<std::int64_t>(row.uet_m) - static_cast<std::int64_t>(row.our_m);
    }
    return row;
  });
}

std::vector<ValidateRow> run_validate_experiment(const ExperimentConfig& config) {
  const auto cells = processor_cells(config);
  const auto per_sample = run_cells<std::vector<ValidateRow>>(
      config, cells, [&](std::size_t ci, const Cell& cell, std::size_t s) {
        const DagTask task = sample_task(config, cell, ci, s);
        std::mt19937_64 rng(derive_seed(config.seed, ci, s, 4));
        const std::size_t m = cell.processors;

        std::vector<std::pair<std::string, PathCollection>> collections;
        collections.emplace_back("npca", npca(task, m).collection);
        std::set<Path> picked;
        const auto wanted = std::uniform_int_distribution<std::size_t>(1, m)(rng);
        for (std::size_t i = 0; i < wanted; ++i) picked.insert(random_path(task, rng));
        collections.emplace_back("random", PathCollection(task, {picked.begin(), picked.end()}));

        std::vector<ValidateRow> rows;
        for (const auto& [name, collection] : collections) {
          ValidateRow row;
          row.cell = ci;
          row.sample = s;
          row.parallelism = cell.parallelism;
          row.probability = cell.probability;
          row.processors = m;
          row.collection = name;
          row.n = collection.n();
          const auto priorities = PriorityAssignment::two_level(collection);
          SimulationOptions options;
          options.collection = &collection;
          row.preemptive_bound = bound_preemptive(task, collection, m);
          const auto pre = simulate_dedicated(task, priorities, m, options);
          row.preemptive_makespan = pre.makespan;
          row.ok = pre.completed && pre.makespan <= row.preemptive_bound && pre.invariant_violations.empty();
          if (collection.n() + 1 <= m) {
            options.mode = Preemption::NonPreemptive;
            row.nonpreemptive_bound = bound_nonpreemptive(task, collection, m);
            const auto np = simulate_dedicated(task, priorities, m, options);
            row.nonpreemptive_makespan = np.makespan;
            row.ok = row.ok && np.completed && np.makespan <= *row.nonpreemptive_bound &&
                     np.invariant_violations.empty();
          }
          if (config.perturbations > 0) {
            const auto report =
                perturb_and_check(task, collection, m, config.perturbations, derive_seed(config.seed, ci, s, 5));
            row.perturbation_violations = report.violations;
            row.ok = row.ok && report.violations == 0;
          }
          rows.push_back(std::move(row));
        }
        return rows;
      });
  std::vector<ValidateRow> out;
  for (const auto& rows : per_sample) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

std::vector<MakespanCellSummary> summarize_makespan(const std::vector<MakespanRow>& rows) {
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> by_cell;
  std::map<std::size_t, MakespanCellSummary> meta;
  for (const auto& r : rows) {
    by_cell[r.cell].first.push_back(to_double(r.our_relative));
    by_cell[r.cell].second.push_back(to_double(r.fed_relative));
    meta[r.cell] = MakespanCellSummary{r.parallelism, r.probability, r.processors, {}, {}};
  }
  std::vector<MakespanCellSummary> out;
  for (auto& [cell, values] : by_cell) {
    auto s = meta[cell];
    s.our = summarize(values.first);
    s.fed = summarize(values.second);
    out.push_back(s);
  }
  return out;
}

std::vector<WasteLevelSummary> summarize_waste(const std::vector<WasteRow>& rows) {
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> values;
  std::map<std::size_t, WasteLevelSummary> out;
  for (const auto& r : rows) {
    auto& s = out[r.parallelism];
    s.parallelism = r.parallelism;
    auto& v = values[r.parallelism];
    if (r.gang_status == SampleStatus::EmptyDeadline) {
      ++s.empty_deadline;
      continue;
    }
    if (r.gang_status == SampleStatus::Ok) {
      v.first.push_back(to_double(r.gang_waste_ratio));
    } else {
      ++s.gang_infeasible;
    }
    if (r.ordinary_status == SampleStatus::Ok) {
      v.second.push_back(to_double(r.ordinary_waste_ratio));
    } else {
      ++s.ordinary_infeasible;
    }
  }
  std::vector<WasteLevelSummary> result;
  for (auto& [p, s] : out) {
    s.gang = summarize(values[p].first);
    s.ordinary = summarize(values[p].second);
    result.push_back(s);
  }
  return result;
}

std::vector<UetLevelSummary> summarize_uet(const std::vector<UetRow>& rows) {
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> values;
  std::map<std::size_t, UetLevelSummary> out;
  for (const auto& r : rows) {
    auto& s = out[r.parallelism];
    s.parallelism = r.parallelism;
    if (r.our_status == SampleStatus::EmptyDeadline) {
      ++s.empty_deadline;
      continue;
    }
    if (r.our_status == SampleStatus::Ok && r.uet_status == SampleStatus::Infeasible) ++s.uet_only_infeasible;
    if (!r.both_feasible()) continue;
    ++s.both_feasible;
    if (r.our_service > r.uet_service) ++s.service_violations;
    values[r.parallelism].first.push_back(to_double(r.service_ratio));
    values[r.parallelism].second.push_back(static_cast<double>(r.size_difference));
  }
  std::vector<UetLevelSummary> result;
  for (auto& [p, s] : out) {
    s.service_ratio = summarize(values[p].first);
    s.size_difference = summarize(values[p].second);
    result.push_back(s);
  }
  return result;
}

ExperimentOutput render(const ExperimentConfig& config, const std::vector<MakespanRow>& rows) {
  ExperimentOutput out;
  out.csv = join({"cell", "sample", "parallelism", "probability", "processors", "vertices", "width", "longest",
                  "total", "n_star", "our", "fed", "lower", "our_relative", "fed_relative", "simulated",
                  "simulation_ok"});
  for (const auto& r : rows) {
    out.csv += join({std::to_string(r.cell), std::to_string(r.sample), std::to_string(r.parallelism),
                     fixed(r.probability), std::to_string(r.processors), std::to_string(r.vertices),
                     std::to_string(r.width), std::to_string(r.longest), std::to_string(r.total),
                     std::to_string(r.n_star), fixed(r.our), fixed(r.fed), fixed(r.lower), fixed(r.our_relative),
                     fixed(r.fed_relative), fixed(r.simulated), r.simulation_ok ? "1" : "0"});
    if (!r.simulation_ok) ++out.invariant_violations;
  }
  out.summary = header_line(config) + "relative makespan, percent of max(vol(pi*), C/M)\n";
  for (const auto& s : summarize_makespan(rows)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "P=%zu p=%.4f M=%zu\n", s.parallelism, s.probability, s.processors);
    out.summary += buf + stats_header() + summary_row("OUR", s.our) + summary_row("FED", s.fed);
  }
  out.summary += "simulation check failures: " + std::to_string(out.invariant_violations) + "\n";
  return out;
}

ExperimentOutput render(const ExperimentConfig& config, const std::vector<WasteRow>& rows) {
  ExperimentOutput out;
  out.csv = join({"cell", "sample", "parallelism", "probability", "rho", "vertices", "longest", "total", "deadline",
                  "gang_status", "gang_m", "gang_n", "gang_budget", "gang_waste", "ordinary_status", "ordinary_m",
                  "ordinary_n", "ordinary_service", "ordinary_waste", "simulation_ok"});
  for (const auto& r : rows) {
    out.csv += join({std::to_string(r.cell), std::to_string(r.sample), std::to_string(r.parallelism),
                     fixed(r.probability), fixed(r.rho), std::to_string(r.vertices), std::to_string(r.longest),
                     std::to_string(r.total), std::to_string(r.deadline), to_string(r.gang_status),
                     std::to_string(r.gang_m), std::to_string(r.gang_n), fixed(r.gang_budget),
                     fixed(r.gang_waste_ratio), to_string(r.ordinary_status), std::to_string(r.ordinary_m),
                     std::to_string(r.ordinary_n), fixed(r.ordinary_service), fixed(r.ordinary_waste_ratio),
                     r.simulation_ok ? "1" : "0"});
    if (!r.simulation_ok) ++out.invariant_violations;
  }
  out.summary = header_line(config) + "waste ratio in percent, processor limit " + limit_name(config) + "\n";
  for (const auto& s : summarize_waste(rows)) {
    out.summary += "P=" + std::to_string(s.parallelism) + " (empty deadline interval " +
                   std::to_string(s.empty_deadline) + ", gang infeasible " + std::to_string(s.gang_infeasible) +
                   ", ordinary infeasible " + std::to_string(s.ordinary_infeasible) + ")\n";
    out.summary += stats_header() + summary_row("gang", s.gang) + summary_row("ordinary", s.ordinary);
  }
  out.summary += "simulation check failures: " + std::to_string(out.invariant_violations) + "\n";
  return out;
}

ExperimentOutput render(const ExperimentConfig& config, const std::vector<UetRow>& rows) {
  ExperimentOutput out;
  out.csv = join({"cell", "sample", "parallelism", "probability", "rho", "vertices", "longest", "total", "deadline",
                  "our_status", "our_m", "our_n", "our_service", "uet_status", "uet_m", "uet_service",
                  "service_ratio", "size_difference", "simulation_ok"});
  for (const auto& r : rows) {
    out.csv += join({std::to_string(r.cell), std::to_string(r.sample), std::to_string(r.parallelism),
                     fixed(r.probability), fixed(r.rho), std::to_string(r.vertices), std::to_string(r.longest),
                     std::to_string(r.total), std::to_string(r.deadline), to_string(r.our_status),
                     std::to_string(r.our_m), std::to_string(r.our_n), fixed(r.our_service), to_string(r.uet_status),
                     std::to_string(r.uet_m), fixed(r.uet_service), fixed(r.service_ratio),
                     std::to_string(r.size_difference), r.simulation_ok ? "1" : "0"});
    const bool violated = !r.simulation_ok || (r.both_feasible() && r.our_service > r.uet_service);
    if (violated) ++out.invariant_violations;
  }
  out.summary = header_line(config) + "OUR-ORD vs UET, processor limit " + limit_name(config) + "\n";
  for (const auto& s : summarize_uet(rows)) {
    out.summary += "P=" + std::to_string(s.parallelism) + " (both feasible " + std::to_string(s.both_feasible) +
                   ", UET-only infeasible " + std::to_string(s.uet_only_infeasible) + ", empty deadline interval " +
                   std::to_string(s.empty_deadline) + ")\n";
    out.summary += stats_header() + summary_row("ratio %", s.service_ratio) + summary_row("size diff", s.size_difference);
  }
  out.summary += "invariant failures: " + std::to_string(out.invariant_violations) + "\n";
  return out;
}

ExperimentOutput render(const ExperimentConfig& config, const std::vector<ValidateRow>& rows) {
  ExperimentOutput out;
  out.csv = join({"cell", "sample", "parallelism", "probability", "processors", "collection", "n",
                  "preemptive_bound", "preemptive_makespan", "nonpreemptive_bound", "nonpreemptive_makespan",
                  "perturbation_violations", "ok"});
  for (const auto& r : rows) {
    out.csv += join({std::to_string(r.cell), std::to_string(r.sample), std::to_string(r.parallelism),
                     fixed(r.probability), std::to_string(r.processors), r.collection, std::to_string(r.n),
                     fixed(r.preemptive_bound), fixed(r.preemptive_makespan),
                     r.nonpreemptive_bound ? fixed(*r.nonpreemptive_bound) : "",
                     r.nonpreemptive_makespan ? fixed(*r.nonpreemptive_makespan) : "",
                     std::to_string(r.perturbation_violations), r.ok ? "1" : "0"});
    if (!r.ok) ++out.invariant_violations;
  }
  out.summary = header_line(config) + std::to_string(rows.size()) + " (DAG, collection, M) instances, " +
                std::to_string(out.invariant_violations) + " violations\n";
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Makespan: return render(config, run_makespan_experiment(config));
    case ExperimentKind::Waste: return render(config, run_waste_experiment(config));
    case ExperimentKind::UetCompare: return render(config, run_uet_experiment(config));
    case ExperimentKind::Validate: return render(config, run_validate_experiment(config));
  }
  return {};
}

std::filesystem::path default_output_dir() {
  if (const char* dir = std::getenv("PATHPROG_OUTPUT_DIR"); dir != nullptr && *dir != '\0') return dir;
  return "results";
}

}  // namespace pathprog
