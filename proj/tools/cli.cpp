#include "cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <string>
#include <vector>

#include "pathprog/bounds.hpp"
#include "pathprog/collection.hpp"
#include "pathprog/experiments.hpp"
#include "pathprog/generator.hpp"
#include "pathprog/io.hpp"
#include "pathprog/reservation.hpp"
#include "pathprog/simulator.hpp"

namespace pathprog::cli {

namespace {

std::string label(const Path& path) {
  std::string out = "(";
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (i) out += ',';
    out += 'v' + std::to_string(path.vertices[i] + 1);
  }
  return out + ")";
}

std::string labels(const PathCollection& collection) {
  std::string out;
  for (const auto& p : collection.paths()) out += (out.empty() ? "" : " ") + label(p);
  return out;
}

SupplyPreset parse_preset(const std::string& name) {
  if (name == "random") return SupplyPreset::Random;
  if (name == "latest") return SupplyPreset::Latest;
  if (name == "earliest") return SupplyPreset::Earliest;
  if (name == "fragmented") return SupplyPreset::Fragmented;
  throw Error(ErrorCode::InvalidArgument, "unknown supply preset \"" + name + "\"");
}

struct GenerateArgs {
  GenParams params;
  std::string rho;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  DagTask task = generate(a.params);
  if (!a.rho.empty()) task = assign_deadline(task, parse_time(a.rho), a.params.seed);
  if (a.output.empty()) {
    out << task_to_json(task);
  } else {
    save_task(task, a.output);
    out << "wrote " << a.output << " (" << task.size() << " vertices, deadline " << task.deadline() << ")\n";
  }
  return kExitOk;
}

struct AnalyzeArgs {
  std::string task;
  std::size_t processors = 0;
  bool nonpreemptive = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const DagTask task = load_task(a.task);
  const auto r = analyze(task, a.processors);
  out << "OUR " << format_fixed(r.bound_preemptive) << ", FED " << format_fixed(r.federated_bound) << ", LB "
      << format_fixed(r.lower_bound) << "\n";
  out << "vol(pi*) " << r.longest_path_volume << ", C " << r.total_volume << ", width " << r.selection.width
      << ", M " << a.processors << "\n";
  out << "n* " << r.selection.n_star << (r.selection.full_cover ? " (full path cover)" : "") << "\n";
  out << "psi " << labels(r.selection.collection) << "\n";
  if (a.nonpreemptive) {
    if (auto np = analyze_nonpreemptive(task, a.processors)) {
      out << "OUR-NP " << format_fixed(np->bound) << " with n* " << np->selection.n_star << "\n";
      out << "psi-NP " << labels(np->selection.collection) << "\n";
    } else {
      out << "OUR-NP n/a (needs M >= 2)\n";
    }
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string task;
  std::size_t processors = 0;
  bool nonpreemptive = false;
  std::size_t perturb = 0;
  std::uint64_t seed = 0;
  bool gantt = false;
  std::string trace_json;
  std::string reservation;
  std::string supply = "random";
};

int simulate_reservation(const SimulateArgs& a, const DagTask& task, std::ostream& out) {
  const Reservation reservation = parse_reservation(read_file(a.reservation));
  const std::size_t n = std::visit([](const auto& r) { return r.n; }, reservation);
  const auto greedy = greedy_coverage(task, n);
  if (greedy.paths.size() < n) throw Error(ErrorCode::InvalidArgument, "task has fewer greedy paths than n");
  const auto collection = greedy_collection(task, greedy, n);
  const bool condition = std::visit(
      [&](const auto& r) {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, GangReservation>) {
          return satisfies_gang_condition(task, r, collection);
        } else {
          return satisfies_ordinary_condition(task, r, collection);
        }
      },
      reservation);
  const auto supply = adversarial_supply(reservation, parse_preset(a.supply), a.seed);
  SimulationOptions options;
  options.collection = &collection;
  const auto trace = simulate_supply(task, PriorityAssignment::two_level(collection), reservation, supply, options);
  const Time deadline(reservation_deadline(reservation));
  const bool ok = trace.completed && trace.makespan <= deadline && trace.invariant_violations.empty();
  out << "supply " << a.supply << ", reservation condition " << (condition ? "holds" : "violated") << "\n";
  out << "completion " << format_fixed(trace.makespan) << (ok ? " <= " : " > ") << "deadline " << to_string(deadline)
      << "\n";
  out << "envelope " << label(trace.envelope) << "\n";
  for (const auto& v : trace.invariant_violations) out << "violation: " << v << "\n";
  if (a.gantt) out << render_gantt(trace);
  if (!a.trace_json.empty()) write_file(a.trace_json, trace_to_json(trace));
  return ok ? kExitOk : kExitViolation;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const DagTask task = load_task(a.task);
  if (!a.reservation.empty()) return simulate_reservation(a, task, out);
  if (a.processors == 0) throw Error(ErrorCode::InvalidArgument, "-M or --reservation is required");

  std::optional<PathCollection> collection;
  Time bound;
  Preemption mode = Preemption::Preemptive;
  if (a.nonpreemptive) {
    auto np = analyze_nonpreemptive(task, a.processors);
    if (!np) throw Error(ErrorCode::InvalidArgument, "non-preemptive analysis needs M >= 2");
    collection.emplace(std::move(np->selection.collection));
    bound = np->bound;
    mode = Preemption::NonPreemptive;
  } else {
    auto r = analyze(task, a.processors);
    collection.emplace(std::move(r.selection.collection));
    bound = r.bound_preemptive;
  }
  SimulationOptions options;
  options.mode = mode;
  options.collection = &*collection;
  const auto trace = simulate_dedicated(task, PriorityAssignment::two_level(*collection), a.processors, options);
  bool ok = trace.completed && trace.makespan <= bound && trace.invariant_violations.empty();
  out << "makespan " << format_fixed(trace.makespan) << (trace.makespan <= bound ? " <= " : " > ") << "bound "
      << format_fixed(bound) << "\n";
  out << "envelope " << label(trace.envelope) << ", busy " << format_fixed(trace.busy_time) << ", non-busy "
      << format_fixed(trace.nonbusy_time) << ", preemptions " << trace.preemptions << "\n";
  for (const auto& v : trace.invariant_violations) out << "violation: " << v << "\n";
  if (a.gantt) out << render_gantt(trace);
  if (!a.trace_json.empty()) write_file(a.trace_json, trace_to_json(trace));
  if (a.perturb > 0) {
    const auto report = perturb_and_check(task, *collection, a.processors, a.perturb, a.seed, mode);
    out << "perturbation " << report.trials << " trials, " << report.violations << " violations, max makespan "
        << format_fixed(report.max_makespan) << "\n";
    for (const auto& f : report.failures) out << "violation: " << f << "\n";
    ok = ok && report.violations == 0;
  }
  return ok ? kExitOk : kExitViolation;
}

struct ProvisionArgs {
  std::string task;
  std::string kind = "gang";
  std::size_t processors = 0;
  bool unbounded = false;
  std::string output;
};

int cmd_provision(const ProvisionArgs& a, std::ostream& out) {
  const DagTask task = load_task(a.task);
  if (!a.unbounded && a.processors == 0) throw Error(ErrorCode::InvalidArgument, "-M or --unbounded is required");
  std::optional<Reservation> reservation;
  if (a.kind == "gang") {
    auto g = a.unbounded ? provision_gang_unbounded(task) : provision_gang(task, a.processors);
    if (g) {
      out << "gang m " << g->reservation.m << ", n " << g->reservation.n << ", budget "
          << format_fixed(g->reservation.budget) << ", deadline " << g->reservation.deadline << ", waste "
          << format_fixed(g->waste) << "\n";
      out << "psi " << labels(g->collection) << "\n";
      reservation = g->reservation;
    }
  } else if (a.kind == "ordinary" || a.kind == "uet") {
    std::optional<OrdinaryProvision> o;
    if (a.kind == "ordinary") {
      o = a.unbounded ? provision_ordinary_unbounded(task) : provision_ordinary(task, a.processors);
    } else {
      o = a.unbounded ? provision_uet_unbounded(task) : provision_uet_baseline(task, a.processors);
    }
    if (o) {
      out << a.kind << " m " << o->reservation.m() << ", n " << o->reservation.n << ", budgets "
          << format_fixed(o->reservation.budgets.front()) << " x " << o->reservation.m() << ", total service "
          << format_fixed(o->total_service) << ", deadline " << o->reservation.deadline << "\n";
      out << "psi " << labels(o->collection) << "\n";
      reservation = o->reservation;
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown kind \"" + a.kind + "\"");
  }
  if (!reservation) {
    out << "Infeasible\n";
    return kExitOk;
  }
  out << "waste ratio " << format_fixed(waste_ratio(*reservation, task)) << "%\n";
  if (!a.output.empty()) write_file(a.output, reservation_to_json(*reservation));
  return kExitOk;
}

struct ExperimentArgs {
  std::string kind = "makespan";
  ExperimentConfig config;
  std::vector<std::string> rhos;
  std::string limit = "unbounded";
  std::string output_dir;
};

int cmd_experiment(ExperimentArgs a, std::ostream& out) {
  a.config.kind = parse_experiment_kind(a.kind);
  if (!a.rhos.empty()) {
    a.config.rhos.clear();
    for (const auto& r : a.rhos) a.config.rhos.push_back(parse_time(r));
  }
  if (a.limit == "unbounded") {
    a.config.limit = ProcessorLimit::Unbounded;
  } else if (a.limit == "vertices") {
    a.config.limit = ProcessorLimit::VertexCount;
  } else {
    a.config.limit = ProcessorLimit::Fixed;
    try {
      a.config.fixed_processors = std::stoul(a.limit);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--limit takes unbounded, vertices or a processor count");
    }
  }
  const auto result = run_experiment(a.config);
  const std::filesystem::path dir = a.output_dir.empty() ? default_output_dir() : std::filesystem::path(a.output_dir);
  const std::string stem = to_string(a.config.kind);
  write_file(dir / (stem + ".csv"), result.csv);
  write_file(dir / (stem + "_summary.txt"), result.summary);
  out << result.summary;
  out << "wrote " << (dir / (stem + ".csv")).string() << "\n";
  return result.invariant_violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel path progression analysis, provisioning and simulation for DAG tasks", "pathprog"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a layered random DAG task");
  generate_cmd->add_option("--parallelism", gen.params.parallelism, "Max subtasks per layer")->capture_default_str();
  generate_cmd->add_option("--min-layers", gen.params.min_layers)->capture_default_str();
  generate_cmd->add_option("--max-layers", gen.params.max_layers)->capture_default_str();
  generate_cmd->add_option("--conn-prob", gen.params.connection_probability, "Edge probability")
      ->capture_default_str();
  generate_cmd->add_option("--wcet-min", gen.params.wcet_min)->capture_default_str();
  generate_cmd->add_option("--wcet-max", gen.params.wcet_max)->capture_default_str();
  generate_cmd->add_option("--seed", gen.params.seed)->capture_default_str();
  generate_cmd->add_option("--rho", gen.rho, "Draw D in (vol(pi*), min(rho vol(pi*), C)); default D = T = C");
  generate_cmd->add_option("-o,--output", gen.output, "Output file (stdout if omitted)");

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Response-time bounds for M dedicated processors");
  analyze_cmd->add_option("task", an.task, "Task JSON file")->required();
  analyze_cmd->add_option("-M,--processors", an.processors)->required()->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--non-preemptive", an.nonpreemptive, "Also report the non-preemptive bound");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate one job under List-FP");
  simulate_cmd->add_option("task", sim.task, "Task JSON file")->required();
  simulate_cmd->add_option("-M,--processors", sim.processors)->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--non-preemptive", sim.nonpreemptive);
  simulate_cmd->add_option("--perturb", sim.perturb, "Number of perturbed re-runs (shorter jobs, more processors)");
  simulate_cmd->add_option("--seed", sim.seed)->capture_default_str();
  simulate_cmd->add_flag("--gantt", sim.gantt, "Print the schedule per processor");
  simulate_cmd->add_option("--trace-json", sim.trace_json, "Write the trace as JSON");
  simulate_cmd->add_option("--reservation", sim.reservation, "Reservation JSON; simulate under its supply");
  simulate_cmd->add_option("--supply", sim.supply, "random, latest, earliest or fragmented")
      ->check(CLI::IsMember({"random", "latest", "earliest", "fragmented"}))
      ->capture_default_str();

  ProvisionArgs prov;
  auto* provision_cmd = app.add_subcommand("provision", "Size gang, ordinary or UET reservations");
  provision_cmd->add_option("task", prov.task, "Task JSON file (deadline is taken from it)")->required();
  provision_cmd->add_option("--kind", prov.kind)
      ->check(CLI::IsMember({"gang", "ordinary", "uet"}))
      ->capture_default_str();
  provision_cmd->add_option("-M,--processors", prov.processors)->check(CLI::PositiveNumber);
  provision_cmd->add_flag("--unbounded", prov.unbounded, "No limit on the number of reservations");
  provision_cmd->add_option("-o,--output", prov.output, "Write the reservation as JSON");

  ExperimentArgs exp;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a batch experiment and write CSV + summary");
  experiment_cmd->add_option("--kind", exp.kind)
      ->check(CLI::IsMember({"makespan", "waste", "uet-compare", "uet", "validate"}))
      ->capture_default_str();
  experiment_cmd->add_option("--parallelism", exp.config.parallelism)->delimiter(',');
  experiment_cmd->add_option("--conn-prob", exp.config.connection_probabilities)->delimiter(',');
  experiment_cmd->add_option("--processors", exp.config.processors)->delimiter(',');
  experiment_cmd->add_option("--rho", exp.rhos, "e.g. 1.2,1.4,1.6,1.8")->delimiter(',');
  experiment_cmd->add_option("--min-layers", exp.config.min_layers)->capture_default_str();
  experiment_cmd->add_option("--max-layers", exp.config.max_layers)->capture_default_str();
  experiment_cmd->add_option("--samples", exp.config.samples)->capture_default_str();
  experiment_cmd->add_option("--seed", exp.config.seed)->capture_default_str();
  experiment_cmd->add_option("--limit", exp.limit, "unbounded, vertices or a processor count")
      ->capture_default_str();
  experiment_cmd->add_option("--perturb", exp.config.perturbations, "Perturbed runs per validate instance");
  experiment_cmd->add_option("--threads", exp.config.threads)->capture_default_str();
  experiment_cmd->add_option("--output-dir", exp.output_dir, "Defaults to $PATHPROG_OUTPUT_DIR or ./results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen, out);
    if (*analyze_cmd) return cmd_analyze(an, out);
    if (*simulate_cmd) return cmd_simulate(sim, out);
    if (*provision_cmd) return cmd_provision(prov, out);
    if (*experiment_cmd) return cmd_experiment(exp, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pathprog::cli
