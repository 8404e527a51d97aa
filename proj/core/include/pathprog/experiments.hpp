#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pathprog/dag.hpp"
#include "pathprog/generator.hpp"
#include "pathprog/time.hpp"

namespace pathprog {

enum class ExperimentKind { Makespan, Waste, UetCompare, Validate };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

/// How many processors the reservation searches may use.
enum class ProcessorLimit {
  Unbounded,    // exact optimum over every m
  VertexCount,  // M = |V|
  Fixed,        // M = ExperimentConfig::fixed_processors
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Makespan;
  std::vector<std::size_t> parallelism{4, 8, 16};
  std::vector<double> connection_probabilities{0.1, 0.2, 0.3};
  std::size_t min_layers = 5;
  std::size_t max_layers = 10;
  std::vector<std::size_t> processors{2, 4, 8, 16};  // makespan and validate cells
  std::vector<Time> rhos{Time(6, 5), Time(7, 5), Time(8, 5), Time(9, 5)};  // waste and uet cells
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  ProcessorLimit limit = ProcessorLimit::Unbounded;
  std::size_t fixed_processors = 16;
  std::size_t perturbations = 0;  // extra perturbed simulations per validate sample
  std::size_t threads = 1;
};

/// Throws InvalidArgument on empty grids or zero samples.
void validate(const ExperimentConfig& config);

/// Independent 64-bit seed for (cell, sample, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::size_t cell, std::size_t sample, std::size_t stream);

/// Uniform random full path: random source, then random successors.
Path random_path(const DagTask& task, std::mt19937_64& rng);

struct Summary {
  std::size_t count = 0;
  double min = 0;
  double median = 0;
  double mean = 0;
  double max = 0;
  double variance = 0;  // population variance
};

Summary summarize(std::vector<double> values);

enum class SampleStatus { Ok, EmptyDeadline, Infeasible };
std::string to_string(SampleStatus status);

struct MakespanRow {
  std::size_t cell = 0;
  std::size_t sample = 0;
  std::size_t parallelism = 0;
  double probability = 0;
  std::size_t processors = 0;
  std::size_t vertices = 0;
  std::size_t width = 0;
  Wcet longest = 0;
  Wcet total = 0;
  std::size_t n_star = 0;
  Time our;
  Time fed;
  Time lower;
  Time our_relative;  // percent of the lower bound
  Time fed_relative;
  Time simulated;
  bool simulation_ok = false;
};

struct WasteRow {
  std::size_t cell = 0;
  std::size_t sample = 0;
  std::size_t parallelism = 0;
  double probability = 0;
  Time rho;
  std::size_t vertices = 0;
  Wcet longest = 0;
  Wcet total = 0;
  std::int64_t deadline = 0;
  SampleStatus gang_status = SampleStatus::Ok;
  std::size_t gang_m = 0;
  std::size_t gang_n = 0;
  Time gang_budget;
  Time gang_waste_ratio;
  SampleStatus ordinary_status = SampleStatus::Ok;
  std::size_t ordinary_m = 0;
  std::size_t ordinary_n = 0;
  Time ordinary_service;
  Time ordinary_waste_ratio;
  bool simulation_ok = true;
};

struct UetRow {
  std::size_t cell = 0;
  std::size_t sample = 0;
  std::size_t parallelism = 0;
  double probability = 0;
  Time rho;
  std::size_t vertices = 0;
  Wcet longest = 0;
  Wcet total = 0;
  std::int64_t deadline = 0;
  SampleStatus our_status = SampleStatus::Ok;
  std::size_t our_m = 0;
  std::size_t our_n = 0;
  Time our_service;
  SampleStatus uet_status = SampleStatus::Ok;
  std::size_t uet_m = 0;
  Time uet_service;
  Time service_ratio;  // OUR / UET in percent, both feasible only
  std::int64_t size_difference = 0;  // UET m - OUR m
  bool simulation_ok = true;

  bool both_feasible() const { return our_status == SampleStatus::Ok && uet_status == SampleStatus::Ok; }
};

struct ValidateRow {
  std::size_t cell = 0;
  std::size_t sample = 0;
  std::size_t parallelism = 0;
  double probability = 0;
  std::size_t processors = 0;
  std::string collection;  // "npca" or "random"
  std::size_t n = 0;
  Time preemptive_bound;
  Time preemptive_makespan;
  std::optional<Time> nonpreemptive_bound;
  std::optional<Time> nonpreemptive_makespan;
  std::size_t perturbation_violations = 0;
  bool ok = false;
};

struct ExperimentOutput {
  std::string csv;
  std::string summary;
  std::size_t invariant_violations = 0;
};

std::vector<MakespanRow> run_makespan_experiment(const ExperimentConfig& config);
std::vector<WasteRow> run_waste_experiment(const ExperimentConfig& config);
std::vector<UetRow> run_uet_experiment(const ExperimentConfig& config);
std::vector<ValidateRow> run_validate_experiment(const ExperimentConfig& config);

/// Per-cell (makespan, validate) or per-parallelism (waste, uet) statistics.
struct MakespanCellSummary {
  std::size_t parallelism = 0;
  double probability = 0;
  std::size_t processors = 0;
  Summary our;
  Summary fed;
};
std::vector<MakespanCellSummary> summarize_makespan(const std::vector<MakespanRow>& rows);

struct WasteLevelSummary {
  std::size_t parallelism = 0;
  Summary gang;
  Summary ordinary;
  std::size_t empty_deadline = 0;
  std::size_t gang_infeasible = 0;
  std::size_t ordinary_infeasible = 0;
};
std::vector<WasteLevelSummary> summarize_waste(const std::vector<WasteRow>& rows);

struct UetLevelSummary {
  std::size_t parallelism = 0;
  Summary service_ratio;  // percent
  Summary size_difference;
  std::size_t both_feasible = 0;
  std::size_t uet_only_infeasible = 0;
  std::size_t empty_deadline = 0;
  std::size_t service_violations = 0;  // OUR > UET
};
std::vector<UetLevelSummary> summarize_uet(const std::vector<UetRow>& rows);

ExperimentOutput render(const ExperimentConfig& config, const std::vector<MakespanRow>& rows);
ExperimentOutput render(const ExperimentConfig& config, const std::vector<WasteRow>& rows);
ExperimentOutput render(const ExperimentConfig& config, const std::vector<UetRow>& rows);
ExperimentOutput render(const ExperimentConfig& config, const std::vector<ValidateRow>& rows);

/// Runs config.kind and renders it.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Directory from PATHPROG_OUTPUT_DIR, else "results".
std::filesystem::path default_output_dir();

}  // namespace pathprog
