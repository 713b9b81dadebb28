#include "seatplan/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace seatplan {

std::string read_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(std::filesystem::path const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

namespace {

json parse(std::string const& text, std::string const& origin) {
  try {
    return json::parse(text);
  } catch (json::parse_error const& e) {
    throw FormatError(origin + ": " + e.what());
  }
}

int get_int(json const& doc, char const* key) {
  auto const it = doc.find(key);
  if (it == doc.end()) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  if (!it->is_number_integer()) {
    throw FormatError(std::string("field '") + key + "' must be an integer");
  }
  return it->get<int>();
}

std::vector<int> get_ints(json const& doc, char const* key, bool required) {
  auto const it = doc.find(key);
  if (it == doc.end() || (!required && it->is_null())) {
    if (required) {
      throw FormatError(std::string("missing field '") + key + "'");
    }
    return {};
  }
  if (!it->is_array()) {
    throw FormatError(std::string("field '") + key + "' must be an array");
  }
  std::vector<int> out;
  for (auto const& item : *it) {
    if (!item.is_number_integer()) {
      throw FormatError(std::string("field '") + key +
                        "' must hold integers");
    }
    out.push_back(item.get<int>());
  }
  return out;
}

std::vector<StudentId> to_internal(std::vector<int> ids) {
  for (auto& id : ids) {
    id -= 1;
  }
  return ids;
}

std::vector<int> to_external(std::vector<StudentId> ids) {
  for (auto& id : ids) {
    id += 1;
  }
  return ids;
}

Seat parse_seat(json const& value, std::string const& key) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
      !value[1].is_number_integer()) {
    throw FormatError("seat of student " + key + " must be [row, pos]");
  }
  return {value[0].get<int>(), value[1].get<int>()};
}

}  // namespace

Instance instance_from_json(json const& doc) {
  if (!doc.is_object()) {
    throw FormatError("instance must be a JSON object");
  }
  Instance instance;
  if (auto const it = doc.find("name"); it != doc.end() && it->is_string()) {
    instance.name = it->get<std::string>();
  }
  instance.rows = get_ints(doc, "rows", true);
  instance.students = get_int(doc, "students");
  instance.d_min = get_int(doc, "d_min");
  if (doc.contains("d_min_same_row") && !doc["d_min_same_row"].is_null()) {
    instance.d_min_same_row = get_int(doc, "d_min_same_row");
  }
  if (doc.contains("psi") && !doc["psi"].is_null()) {
    instance.psi = get_int(doc, "psi");
  }
  if (auto const it = doc.find("conflicts"); it != doc.end()) {
    if (!it->is_array()) {
      throw FormatError("field 'conflicts' must be an array of pairs");
    }
    for (auto const& pair : *it) {
      if (!pair.is_array() || pair.size() != 2 ||
          !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
        throw FormatError("every conflict must be a pair of student ids");
      }
      instance.conflicts.push_back(
          {pair[0].get<int>() - 1, pair[1].get<int>() - 1});
    }
  }
  instance.front = to_internal(get_ints(doc, "front", false));
  instance.back = to_internal(get_ints(doc, "back", false));
  return instance;
}

json instance_to_json(Instance const& instance) {
  json doc;
  if (!instance.name.empty()) {
    doc["name"] = instance.name;
  }
  doc["rows"] = instance.rows;
  doc["students"] = instance.students;
  json conflicts = json::array();
  for (auto const& e : instance.conflicts) {
    conflicts.push_back({e.i + 1, e.j + 1});
  }
  doc["conflicts"] = std::move(conflicts);
  doc["front"] = to_external(instance.front);
  doc["back"] = to_external(instance.back);
  doc["d_min"] = instance.d_min;
  if (instance.d_min_same_row) {
    doc["d_min_same_row"] = *instance.d_min_same_row;
  }
  if (instance.psi) {
    doc["psi"] = *instance.psi;
  }
  return doc;
}

Instance load_instance(std::filesystem::path const& path) {
  try {
    return instance_from_json(parse(read_file(path), path.string()));
  } catch (FormatError const& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_instance(Instance const& instance,
                   std::filesystem::path const& path) {
  write_file(path, instance_to_json(instance).dump(2) + "\n");
}

json assignment_to_json(Problem const& problem, Assignment const& assignment) {
  json seats = json::object();
  for (StudentId s = 0; s < problem.num_real_students(); ++s) {
    if (auto const& seat = assignment.seat_of[s]) {
      seats[std::to_string(s + 1)] = {seat->row, seat->pos};
    }
  }
  return {{"seats", std::move(seats)}};
}

Assignment assignment_from_json(Problem const& problem, json const& doc) {
  if (!doc.is_object() || !doc.contains("seats") ||
      !doc["seats"].is_object()) {
    throw FormatError("assignment must be {\"seats\": {id: [row, pos]}}");
  }
  Assignment out(problem.num_students());
  for (auto const& [key, value] : doc["seats"].items()) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) {
        throw std::invalid_argument(key);
      }
    } catch (std::exception const&) {
      throw FormatError("student id '" + key + "' is not an integer");
    }
    if (id < 1 || id > problem.num_real_students()) {
      throw FormatError("unknown student " + key);
    }
    out.seat_of[id - 1] = parse_seat(value, key);
  }

  std::vector<bool> taken(problem.num_seats(), false);
  for (auto const& seat : out.seat_of) {
    if (seat && problem.contains(*seat)) {
      taken[problem.seat_index(*seat)] = true;
    }
  }
  int next = 0;
  for (StudentId s = problem.num_real_students(); s < out.size(); ++s) {
    while (next < problem.num_seats() && taken[next]) {
      ++next;
    }
    if (next < problem.num_seats()) {
      out.seat_of[s] = problem.seat_at(next);
      taken[next] = true;
    }
  }
  return out;
}

Assignment load_assignment(Problem const& problem,
                           std::filesystem::path const& path) {
  return assignment_from_json(problem, parse(read_file(path), path.string()));
}

json violations_to_json(ViolationCounts const& counts) {
  return {{"alpha", counts.alpha},
          {"beta", counts.beta},
          {"gamma", counts.gamma},
          {"delta", counts.delta}};
}

json active_edges_to_json(std::vector<ActiveEdge> const& edges) {
  json out = json::array();
  for (auto const& e : edges) {
    out.push_back({{"i", e.i + 1},
                   {"j", e.j + 1},
                   {"row", e.row},
                   {"k", e.k},
                   {"z", e.z},
                   {"distance", e.distance}});
  }
  return out;
}

json evaluation_to_json(Problem const& problem, Assignment const& assignment) {
  auto const counts = violations(problem, assignment);
  auto const f = objective(problem, assignment);
  return {{"f", f},
          {"f_p", f - problem.phi() * counts.total()},
          {"feasible", is_feasible(problem, assignment)},
          {"violations", violations_to_json(counts)},
          {"active_edges",
           active_edges_to_json(active_edges(problem, assignment))}};
}

json solve_result_to_json(Problem const& problem, SolveResult const& result,
                          bool include_timing) {
  json doc = evaluation_to_json(problem, result.assignment);
  doc["assignment"] = assignment_to_json(problem, result.assignment);
  doc["iterations"] = result.iterations;
  doc["stagnation_hit"] = result.stagnation_hit;
  doc["seed"] = result.seed;
  doc["initial"] = {{"f", result.initial.f},
                    {"f_p", result.initial.penalized},
                    {"feasible", result.initial.feasible}};
  if (include_timing) {
    doc["elapsed"] = result.elapsed;
    doc["elapsed_ms"] = result.elapsed * 1000.0;
    doc["time_limit_hit"] = result.time_limit_hit;
  }
  if (!result.trace.empty()) {
    json trace = json::array();
    for (auto const& point : result.trace) {
      trace.push_back(
          {point.iteration, point.penalized, point.best_penalized});
    }
    doc["trace"] = std::move(trace);
  }
  return doc;
}

std::string seat_chart(Problem const& problem, Assignment const& assignment) {
  std::vector<StudentId> at(problem.num_seats(), -1);
  for (StudentId s = 0; s < problem.num_real_students(); ++s) {
    if (auto const& seat = assignment.seat_of[s];
        seat && problem.contains(*seat)) {
      at[problem.seat_index(*seat)] = s;
    }
  }
  auto const width =
      std::max<int>(2, std::to_string(problem.num_real_students()).size());
  std::ostringstream out;
  for (int row = 1; row <= problem.num_rows(); ++row) {
    out << "row " << row << " |";
    for (int pos = 1; pos <= problem.row_size(row); ++pos) {
      auto const s = at[problem.seat_index({row, pos})];
      out << ' ' << std::setw(width)
          << (s < 0 ? std::string(".") : std::to_string(s + 1));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace seatplan
