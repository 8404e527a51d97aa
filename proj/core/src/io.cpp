#include "pathprog/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pathprog {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <typename T>
T field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + name + "\"");
  }
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + name + "\": " + e.what());
  }
}

Time time_from_json(const json& value) {
  if (value.is_string()) return parse_time(value.get<std::string>());
  if (value.is_number_integer()) return Time(value.get<std::int64_t>());
  throw Error(ErrorCode::ParseError, "time values must be integers or strings");
}

json times_to_json(const std::vector<Time>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(to_string(t));
  return out;
}

}  // namespace

TaskDescription parse_task_description(std::string_view text) {
  const json doc = parse_json(text);
  const auto vertices = field<json>(doc, "vertices");
  if (!vertices.is_array()) throw Error(ErrorCode::ParseError, "\"vertices\" must be an array");

  TaskDescription desc;
  desc.wcet.assign(vertices.size(), 0);
  std::vector<bool> seen(vertices.size(), false);
  for (const auto& v : vertices) {
    const auto id = field<std::int64_t>(v, "id");
    if (id < 0 || static_cast<std::size_t>(id) >= vertices.size() || seen[static_cast<std::size_t>(id)]) {
      throw Error(ErrorCode::InvalidTask, "vertex ids must be exactly 0.." + std::to_string(vertices.size() - 1));
    }
    seen[static_cast<std::size_t>(id)] = true;
    desc.wcet[static_cast<std::size_t>(id)] = field<Wcet>(v, "wcet");
  }
  for (const auto& e : field<json>(doc, "edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw Error(ErrorCode::ParseError, "edges must be [from, to] integer pairs");
    }
    const auto u = e[0].get<std::int64_t>();
    const auto v = e[1].get<std::int64_t>();
    if (u < 0 || v < 0) throw Error(ErrorCode::DanglingEdge, "negative vertex id in edge");
    desc.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  desc.deadline = doc.contains("deadline") ? field<std::int64_t>(doc, "deadline") : 1;
  desc.period = doc.contains("period") ? field<std::int64_t>(doc, "period") : desc.deadline;
  return desc;
}

DagTask parse_task(std::string_view text) { return DagTask(parse_task_description(text)); }

std::string task_to_json(const DagTask& task) {
  json doc;
  doc["vertices"] = json::array();
  for (Vertex v = 0; v < task.size(); ++v) doc["vertices"].push_back({{"id", v}, {"wcet", task.wcet(v)}});
  doc["edges"] = json::array();
  for (const auto& [u, v] : task.edges()) doc["edges"].push_back({u, v});
  doc["deadline"] = task.deadline();
  doc["period"] = task.period();
  return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& file, std::string_view contents) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + file.string());
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + file.string());
}

DagTask load_task(const std::filesystem::path& file) { return parse_task(read_file(file)); }

void save_task(const DagTask& task, const std::filesystem::path& file) { write_file(file, task_to_json(task)); }

std::string reservation_to_json(const Reservation& reservation) {
  json doc;
  std::vector<Time> budgets;
  for (std::size_t p = 0; p < reservation_count(reservation); ++p) {
    budgets.push_back(reservation_budget(reservation, p));
  }
  std::visit(
      [&](const auto& r) {
        doc["kind"] = std::is_same_v<std::decay_t<decltype(r)>, GangReservation> ? "gang" : "ordinary";
        doc["m"] = reservation_count(reservation);
        doc["budgets"] = times_to_json(budgets);
        doc["deadline"] = r.deadline;
        doc["period"] = r.period;
        doc["n"] = r.n;
      },
      reservation);
  return doc.dump(2) + "\n";
}

Reservation parse_reservation(std::string_view text) {
  const json doc = parse_json(text);
  const auto kind = field<std::string>(doc, "kind");
  const auto m = field<std::size_t>(doc, "m");
  std::vector<Time> budgets;
  for (const auto& b : field<json>(doc, "budgets")) budgets.push_back(time_from_json(b));
  const auto deadline = field<std::int64_t>(doc, "deadline");
  const auto period = doc.contains("period") ? field<std::int64_t>(doc, "period") : deadline;
  const auto n = field<std::size_t>(doc, "n");
  if (kind == "gang") {
    if (budgets.empty() || std::any_of(budgets.begin(), budgets.end(), [&](const Time& b) { return b != budgets[0]; })) {
      throw Error(ErrorCode::ParseError, "gang budgets must be equal");
    }
    if (budgets.size() != 1 && budgets.size() != m) throw Error(ErrorCode::ParseError, "budget count differs from m");
    return GangReservation{m, budgets[0], deadline, period, n};
  }
  if (kind == "ordinary") {
    if (budgets.size() != m) throw Error(ErrorCode::ParseError, "budget count differs from m");
    return OrdinaryReservation{std::move(budgets), deadline, period, n};
  }
  throw Error(ErrorCode::ParseError, "unknown reservation kind \"" + kind + "\"");
}

std::string trace_to_json(const ScheduleTrace& trace) {
  json doc;
  doc["completed"] = trace.completed;
  doc["makespan"] = to_string(trace.makespan);
  doc["processors"] = json::array();
  for (const auto& lane : trace.intervals) {
    json arr = json::array();
    for (const auto& iv : lane) {
      arr.push_back({{"start", to_string(iv.start)},
                     {"end", to_string(iv.end)},
                     {"vertex", iv.vertex ? json(*iv.vertex) : json(nullptr)}});
    }
    doc["processors"].push_back(std::move(arr));
  }
  doc["arrival"] = times_to_json(trace.arrival);
  doc["finish"] = times_to_json(trace.finish);
  doc["exec_time"] = times_to_json(trace.exec_time);
  doc["envelope"] = trace.envelope.vertices;
  doc["busy_time"] = to_string(trace.busy_time);
  doc["nonbusy_time"] = to_string(trace.nonbusy_time);
  doc["preemptions"] = trace.preemptions;
  doc["idle_service"] = to_string(trace.idle_service);
  doc["invariant_violations"] = trace.invariant_violations;
  return doc.dump(2) + "\n";
}

}  // namespace pathprog
