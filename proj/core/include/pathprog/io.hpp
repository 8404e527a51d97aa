#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pathprog/dag.hpp"
#include "pathprog/reservation.hpp"
#include "pathprog/simulator.hpp"

namespace pathprog {

// Task files: {"vertices": [{"id": 0, "wcet": 3}, ...], "edges": [[0, 1], ...],
//              "deadline": 16, "period": 16}
// Malformed JSON or missing fields raise ParseError; graph problems raise the
// matching validation error.

TaskDescription parse_task_description(std::string_view json);
DagTask parse_task(std::string_view json);
std::string task_to_json(const DagTask& task);

DagTask load_task(const std::filesystem::path& file);
void save_task(const DagTask& task, const std::filesystem::path& file);

// {"kind": "gang"|"ordinary", "m": 2, "budgets": ["14", ...], "deadline": 16,
//  "period": 16, "n": 2}; budgets are rationals written as "a/b" or integers.
std::string reservation_to_json(const Reservation& reservation);
Reservation parse_reservation(std::string_view json);

// {"makespan": "10", "completed": true, "processors": [[{"start", "end",
//  "vertex"}, ...], ...], "arrival": [...], "finish": [...], "envelope": [...],
//  ...}; "vertex" is null for idle intervals.
std::string trace_to_json(const ScheduleTrace& trace);

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::string_view contents);

}  // namespace pathprog
