#include "seatplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace seatplan {

bool ValidationReport::valid() const {
  return std::none_of(issues.begin(), issues.end(), [](auto const& issue) {
    return issue.severity == Severity::kError;
  });
}

bool ValidationReport::mentions(std::string const& fragment) const {
  return std::any_of(issues.begin(), issues.end(), [&](auto const& issue) {
    return issue.message.find(fragment) != std::string::npos;
  });
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (auto const& issue : issues) {
    out << (issue.severity == Severity::kError ? "error: " : "warning: ")
        << issue.message << '\n';
  }
  return out.str();
}

namespace {

void check_threshold(ValidationReport& report, char const* name, int value,
                     int shortest_row) {
  if (value < 2) {
    report.issues.push_back(
        {Severity::kError, std::string(name) + " below 2 (got " +
                               std::to_string(value) + ")"});
  }
  if (shortest_row > 0 && value > shortest_row) {
    report.issues.push_back(
        {Severity::kError, std::string(name) + " exceeds shortest row (" +
                               std::to_string(value) + " > " +
                               std::to_string(shortest_row) + ")"});
  }
}

void check_ids(ValidationReport& report, char const* what,
               std::vector<StudentId> const& ids, int students) {
  std::set<StudentId> seen;
  for (auto id : ids) {
    if (id < 0 || id >= students) {
      report.issues.push_back({Severity::kError,
                               std::string(what) + " lists unknown student " +
                                   std::to_string(id + 1)});
    } else if (!seen.insert(id).second) {
      report.issues.push_back({Severity::kError,
                               std::string(what) + " lists student " +
                                   std::to_string(id + 1) + " twice"});
    }
  }
}

}  // namespace

ValidationReport validate_instance(Instance const& instance) {
  ValidationReport report;
  auto const& rows = instance.rows;
  if (rows.empty()) {
    report.issues.push_back({Severity::kError, "layout has no rows"});
  }
  int total = 0;
  int shortest = 0;
  int longest = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto const size = rows[r];
    if (size < 1) {
      report.issues.push_back(
          {Severity::kError, "row " + std::to_string(r + 1) + " has no desks"});
      continue;
    }
    if (size < 4) {
      report.issues.push_back(
          {Severity::kWarning, "front/back overlap in row " +
                                   std::to_string(r + 1) + " (" +
                                   std::to_string(size) + " desks)"});
    }
    total += size;
    shortest = shortest == 0 ? size : std::min(shortest, size);
    longest = std::max(longest, size);
  }

  if (instance.students < 0) {
    report.issues.push_back({Severity::kError, "negative student count"});
  } else if (instance.students > total) {
    report.issues.push_back(
        {Severity::kError, "more students than desks (" +
                               std::to_string(instance.students) + " > " +
                               std::to_string(total) + ")"});
  }

  check_threshold(report, "d_min", instance.d_min, shortest);
  if (instance.d_min_same_row) {
    check_threshold(report, "d_min_same_row", *instance.d_min_same_row,
                    shortest);
  }

  auto const psi = instance.psi.value_or(longest);
  if (psi <= longest - 1) {
    report.issues.push_back(
        {Severity::kError, "psi must exceed the longest seat separation (" +
                               std::to_string(psi) +
                               " <= " + std::to_string(longest - 1) + ")"});
  }

  std::set<std::pair<StudentId, StudentId>> pairs;
  for (auto const& e : instance.conflicts) {
    auto const label = "(" + std::to_string(e.i + 1) + "," +
                       std::to_string(e.j + 1) + ")";
    if (e.i < 0 || e.j < 0 || e.i >= instance.students ||
        e.j >= instance.students) {
      report.issues.push_back(
          {Severity::kError, "conflict " + label + " names unknown student"});
      continue;
    }
    if (e.i == e.j) {
      report.issues.push_back(
          {Severity::kError, "conflict " + label + " is a self-loop"});
      continue;
    }
    if (!pairs.insert(std::minmax(e.i, e.j)).second) {
      report.issues.push_back(
          {Severity::kError, "conflict " + label + " is duplicated"});
    }
  }

  check_ids(report, "front", instance.front, instance.students);
  check_ids(report, "back", instance.back, instance.students);
  for (auto id : instance.front) {
    if (std::find(instance.back.begin(), instance.back.end(), id) !=
        instance.back.end()) {
      report.issues.push_back({Severity::kError,
                               "student " + std::to_string(id + 1) +
                                   " requires both front and back"});
    }
  }
  return report;
}

InvalidInstance::InvalidInstance(ValidationReport report)
    : std::runtime_error("invalid instance:\n" + report.summary()),
      report_(std::move(report)) {}

Problem::Problem(Instance instance) : instance_(std::move(instance)) {
  auto report = validate_instance(instance_);
  if (!report.valid()) {
    throw InvalidInstance(std::move(report));
  }
  for (auto& e : instance_.conflicts) {
    if (e.i > e.j) {
      std::swap(e.i, e.j);
    }
  }
  std::sort(instance_.conflicts.begin(), instance_.conflicts.end());

  row_sizes_ = instance_.rows;
  for (auto size : row_sizes_) {
    first_index_.push_back(num_seats_);
    for (int p = 1; p <= size; ++p) {
      seats_.push_back(
          {static_cast<int>(first_index_.size()), p});
    }
    num_seats_ += size;
    max_row_ = std::max(max_row_, size);
  }

  requirement_.assign(num_seats_, Requirement::kNone);
  for (auto id : instance_.front) {
    requirement_[id] = Requirement::kFront;
  }
  for (auto id : instance_.back) {
    requirement_[id] = Requirement::kBack;
  }

  adjacency_.resize(num_seats_);
  conflict_matrix_.assign(
      static_cast<std::size_t>(num_seats_) * num_seats_, 0);
  for (auto const& e : instance_.conflicts) {
    adjacency_[e.i].push_back(e.j);
    adjacency_[e.j].push_back(e.i);
    conflict_matrix_[static_cast<std::size_t>(e.i) * num_seats_ + e.j] = 1;
    conflict_matrix_[static_cast<std::size_t>(e.j) * num_seats_ + e.i] = 1;
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
  }

  d_min_ = instance_.d_min;
  d_min_same_row_ = instance_.d_min_same_row.value_or(d_min_);
  psi_ = instance_.psi.value_or(max_row_);
  phi_ = std::max<Score>(
      1, 2 * static_cast<Score>(instance_.conflicts.size()) *
             std::abs(d_min_ - psi_));
}

bool Problem::in_conflict(StudentId a, StudentId b) const {
  return conflict_matrix_[static_cast<std::size_t>(a) * num_seats_ + b] != 0;
}

bool Problem::contains(Seat seat) const {
  return seat.row >= 1 && seat.row <= num_rows() && seat.pos >= 1 &&
         seat.pos <= row_size(seat.row);
}

bool Problem::satisfies(StudentId s, Seat seat) const {
  switch (requirement_[s]) {
    case Requirement::kFront:
      return is_front(seat);
    case Requirement::kBack:
      return is_back(seat);
    case Requirement::kNone:
      break;
  }
  return true;
}

int seat_column(std::vector<int> const& rows, int row, int pos) {
  if (row < 1 || row > static_cast<int>(rows.size()) || pos < 1 ||
      pos > rows[row - 1]) {
    throw std::out_of_range("seat (" + std::to_string(row) + "," +
                            std::to_string(pos) + ") outside layout");
  }
  int first = 1;
  for (int r = 1; r < row; ++r) {
    first += rows[r - 1];
  }
  return first + (pos - 1);
}

Seat column_seat(std::vector<int> const& rows, int column) {
  int first = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (column >= first && column < first + rows[r]) {
      return {static_cast<int>(r + 1), column - first + 1};
    }
    first += rows[r];
  }
  throw std::out_of_range("column " + std::to_string(column) +
                          " outside layout");
}

bool Assignment::total() const {
  return std::all_of(seat_of.begin(), seat_of.end(),
                     [](auto const& seat) { return seat.has_value(); });
}

bool Assignment::injective() const {
  std::set<Seat> used;
  for (auto const& seat : seat_of) {
    if (seat && !used.insert(*seat).second) {
      return false;
    }
  }
  return true;
}

std::vector<ActiveEdge> active_edges(Problem const& problem,
                                     Assignment const& assignment) {
  std::vector<ActiveEdge> result;
  for (auto const& e : problem.edges()) {
    auto const& a = assignment.seat_of[e.i];
    auto const& b = assignment.seat_of[e.j];
    if (!a || !b || std::abs(a->row - b->row) != 1) {
      continue;
    }
    auto const flip = a->row > b->row;
    auto const& lower = flip ? *b : *a;
    auto const& upper = flip ? *a : *b;
    result.push_back({flip ? e.j : e.i, flip ? e.i : e.j, lower.row,
                      lower.pos, upper.pos, std::abs(upper.pos - lower.pos)});
  }
  std::sort(result.begin(), result.end(), [](auto const& x, auto const& y) {
    return std::tie(x.row, x.i, x.j) < std::tie(y.row, y.i, y.j);
  });
  return result;
}

Score objective(Problem const& problem, Assignment const& assignment) {
  Score f = 0;
  for (auto const& e : problem.edges()) {
    auto const& a = assignment.seat_of[e.i];
    auto const& b = assignment.seat_of[e.j];
    if (a && b && std::abs(a->row - b->row) == 1) {
      f += std::abs(a->pos - b->pos) - problem.psi();
    }
  }
  return f;
}

ViolationCounts violations(Problem const& problem,
                           Assignment const& assignment) {
  ViolationCounts counts;
  for (StudentId s = 0; s < assignment.size(); ++s) {
    auto const& seat = assignment.seat_of[s];
    if (!seat) {
      continue;
    }
    if (problem.requirement(s) == Requirement::kFront &&
        !problem.is_front(*seat)) {
      ++counts.alpha;
    }
    if (problem.requirement(s) == Requirement::kBack &&
        !problem.is_back(*seat)) {
      ++counts.beta;
    }
  }
  for (auto const& e : problem.edges()) {
    auto const& a = assignment.seat_of[e.i];
    auto const& b = assignment.seat_of[e.j];
    if (!a || !b) {
      continue;
    }
    auto const row_gap = std::abs(a->row - b->row);
    auto const distance = std::abs(a->pos - b->pos);
    if (row_gap == 0 && distance < problem.d_min_same_row()) {
      ++counts.gamma;
    } else if (row_gap == 1 && distance < problem.d_min()) {
      ++counts.delta;
    }
  }
  return counts;
}

Score penalized_objective(Problem const& problem,
                          Assignment const& assignment) {
  return objective(problem, assignment) -
         problem.phi() * violations(problem, assignment).total();
}

FeasibilityResult check_feasibility(Problem const& problem,
                                    Assignment const& assignment) {
  if (assignment.size() != problem.num_students()) {
    return {false, "assignment covers " + std::to_string(assignment.size()) +
                       " students, expected " +
                       std::to_string(problem.num_students())};
  }
  for (StudentId s = 0; s < assignment.size(); ++s) {
    auto const& seat = assignment.seat_of[s];
    if (!seat) {
      return {false, "student " + std::to_string(s + 1) + " has no seat"};
    }
    if (!problem.contains(*seat)) {
      return {false, "student " + std::to_string(s + 1) +
                         " sits outside the layout"};
    }
  }
  if (!assignment.injective()) {
    return {false, "two students share a seat"};
  }
  auto const v = violations(problem, assignment);
  if (v.total() != 0) {
    std::ostringstream out;
    out << "constraint violations: alpha=" << v.alpha << " beta=" << v.beta
        << " gamma=" << v.gamma << " delta=" << v.delta;
    return {false, out.str()};
  }
  return {true, {}};
}

bool is_feasible(Problem const& problem, Assignment const& assignment) {
  return check_feasibility(problem, assignment).feasible;
}

double gap(double z_bks, double z_primal) {
  return std::abs(z_bks - z_primal) / (std::abs(z_primal) + 1e-10);
}

}  // namespace seatplan
