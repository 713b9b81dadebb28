#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seatplan {

using Score = std::int64_t;

// Students are 0-based internally; every wire format uses 1-based ids.
using StudentId = int;

enum class Requirement : int { kBack = -1, kNone = 0, kFront = 1 };

// A desk, addressed by 1-based row and 1-based position within the row.
// Position 1 is nearest the board.
struct Seat {
  int row = 0;
  int pos = 0;

  friend bool operator==(Seat const&, Seat const&) = default;
  friend auto operator<=>(Seat const&, Seat const&) = default;
};

struct Edge {
  StudentId i = 0;
  StudentId j = 0;

  friend bool operator==(Edge const&, Edge const&) = default;
  friend auto operator<=>(Edge const&, Edge const&) = default;
};

// Raw classroom description, mirroring the instance JSON file.
struct Instance {
  std::string name;
  std::vector<int> rows;
  int students = 0;
  std::vector<Edge> conflicts;
  std::vector<StudentId> front;
  std::vector<StudentId> back;
  int d_min = 2;
  std::optional<int> d_min_same_row;
  std::optional<int> psi;
};

enum class Severity { kWarning, kError };

struct ValidationIssue {
  Severity severity = Severity::kError;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const;
  bool mentions(std::string const& fragment) const;
  std::string summary() const;
};

ValidationReport validate_instance(Instance const& instance);

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(ValidationReport report);
  ValidationReport const& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Validated, padded and indexed view of an Instance. Filler students
// (no requirement, no conflicts) are appended so that every desk holds
// exactly one student. Seats are also addressed by a 0-based seat index
// equal to seat_column(...) - 1.
class Problem {
 public:
  explicit Problem(Instance instance);

  Instance const& instance() const { return instance_; }

  int num_rows() const { return static_cast<int>(row_sizes_.size()); }
  int row_size(int row) const { return row_sizes_[row - 1]; }
  std::vector<int> const& row_sizes() const { return row_sizes_; }
  int max_row_size() const { return max_row_; }
  int num_seats() const { return num_seats_; }
  int num_students() const { return num_seats_; }
  int num_real_students() const { return instance_.students; }
  bool is_filler(StudentId s) const { return s >= instance_.students; }

  int d_min() const { return d_min_; }
  int d_min_same_row() const { return d_min_same_row_; }
  int psi() const { return psi_; }
  Score phi() const { return phi_; }

  Requirement requirement(StudentId s) const { return requirement_[s]; }
  std::vector<Edge> const& edges() const { return instance_.conflicts; }
  std::size_t num_edges() const { return instance_.conflicts.size(); }
  std::vector<StudentId> const& neighbors(StudentId s) const {
    return adjacency_[s];
  }
  int degree(StudentId s) const {
    return static_cast<int>(adjacency_[s].size());
  }
  bool in_conflict(StudentId a, StudentId b) const;

  int first_column(int row) const { return first_index_[row - 1] + 1; }
  int last_column(int row) const {
    return first_index_[row - 1] + row_sizes_[row - 1];
  }
  int seat_index(Seat seat) const {
    return first_index_[seat.row - 1] + seat.pos - 1;
  }
  Seat seat_at(int index) const { return seats_[index]; }
  bool contains(Seat seat) const;

  bool is_front(Seat seat) const { return seat.pos <= 2; }
  bool is_back(Seat seat) const {
    return seat.pos >= row_size(seat.row) - 1;
  }
  bool satisfies(StudentId s, Seat seat) const;

 private:
  Instance instance_;
  std::vector<int> row_sizes_;
  std::vector<int> first_index_;
  std::vector<Seat> seats_;
  std::vector<Requirement> requirement_;
  std::vector<std::vector<StudentId>> adjacency_;
  std::vector<std::uint8_t> conflict_matrix_;
  int num_seats_ = 0;
  int max_row_ = 0;
  int d_min_ = 2;
  int d_min_same_row_ = 2;
  int psi_ = 0;
  Score phi_ = 1;
};

// 1-based column of seat (row, pos) in the student-by-desk matrix.
int seat_column(std::vector<int> const& rows, int row, int pos);
Seat column_seat(std::vector<int> const& rows, int column);

// Student -> seat map. Entries may be empty for partial solutions.
struct Assignment {
  std::vector<std::optional<Seat>> seat_of;

  Assignment() = default;
  explicit Assignment(int students) : seat_of(students) {}

  int size() const { return static_cast<int>(seat_of.size()); }
  bool total() const;
  bool injective() const;
  friend bool operator==(Assignment const&, Assignment const&) = default;
};

struct ActiveEdge {
  StudentId i = 0;
  StudentId j = 0;  // i sits in `row`, j in `row + 1`
  int row = 0;  // lower of the two consecutive rows
  int k = 0;    // position of the endpoint in `row`
  int z = 0;    // position of the endpoint in `row + 1`
  int distance = 0;

  friend bool operator==(ActiveEdge const&, ActiveEdge const&) = default;
};

struct ViolationCounts {
  int alpha = 0;  // front requirement unmet
  int beta = 0;   // back requirement unmet
  int gamma = 0;  // same-row conflict closer than d_min'
  int delta = 0;  // consecutive-row conflict closer than d_min

  int total() const { return alpha + beta + gamma + delta; }
  friend bool operator==(ViolationCounts const&,
                         ViolationCounts const&) = default;
};

std::vector<ActiveEdge> active_edges(Problem const& problem,
                                     Assignment const& assignment);
Score objective(Problem const& problem, Assignment const& assignment);
ViolationCounts violations(Problem const& problem,
                           Assignment const& assignment);
Score penalized_objective(Problem const& problem,
                          Assignment const& assignment);

struct FeasibilityResult {
  bool feasible = false;
  std::string reason;
  explicit operator bool() const { return feasible; }
};

FeasibilityResult check_feasibility(Problem const& problem,
                                    Assignment const& assignment);
bool is_feasible(Problem const& problem, Assignment const& assignment);

double gap(double z_bks, double z_primal);

}  // namespace seatplan
