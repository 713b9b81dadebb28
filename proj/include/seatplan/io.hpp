#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "seatplan/ils.hpp"
#include "seatplan/model.hpp"

namespace seatplan {

using json = nlohmann::json;

// A file could not be read or written.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A document is not valid JSON or does not follow the expected schema.
class FormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(std::filesystem::path const& path);
void write_file(std::filesystem::path const& path, std::string const& text);

Instance instance_from_json(json const& doc);
json instance_to_json(Instance const& instance);
Instance load_instance(std::filesystem::path const& path);
void save_instance(Instance const& instance,
                   std::filesystem::path const& path);

// {"seats": {"<id>": [row, pos]}} over real students only.
json assignment_to_json(Problem const& problem, Assignment const& assignment);
// Reads real-student seats; filler students take the remaining desks in
// column order. Students missing from the document stay unassigned.
Assignment assignment_from_json(Problem const& problem, json const& doc);
Assignment load_assignment(Problem const& problem,
                           std::filesystem::path const& path);

json violations_to_json(ViolationCounts const& counts);
json active_edges_to_json(std::vector<ActiveEdge> const& edges);
// Full evaluation of an assignment: f, f_p, feasibility, violations and
// active edges.
json evaluation_to_json(Problem const& problem, Assignment const& assignment);
json solve_result_to_json(Problem const& problem, SolveResult const& result,
                          bool include_timing = true);

// Row-per-line text chart; position 1 (the board side) comes first.
std::string seat_chart(Problem const& problem, Assignment const& assignment);

}  // namespace seatplan
