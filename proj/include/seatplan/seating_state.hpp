#pragma once

#include <initializer_list>
#include <vector>

#include "seatplan/model.hpp"

namespace seatplan {

// Objective bookkeeping for a set of students. Differences of two tallies
// may hold negative counts.
struct Tally {
  Score f = 0;
  ViolationCounts v;
  int active = 0;

  Score penalized(Score phi) const { return f - phi * v.total(); }
  Tally& operator+=(Tally const& o);
  Tally& operator-=(Tally const& o);
  friend Tally operator-(Tally a, Tally const& b) { return a -= b; }
  friend bool operator==(Tally const&, Tally const&) = default;
};

inline constexpr int kNoSeat = -1;
inline constexpr StudentId kNoStudent = -1;

// Mutable seat map with incrementally maintained objective, violation
// counts and active-edge count. Seats are 0-based seat indices. Pinned
// students never move through swap_seats; callers check movable().
class SeatingState {
 public:
  explicit SeatingState(Problem const& problem);
  SeatingState(Problem const& problem, Assignment const& assignment);

  Problem const& problem() const { return *problem_; }

  int seat_of(StudentId s) const { return seat_of_[s]; }
  StudentId occupant(int seat) const { return occupant_[seat]; }
  bool assigned(StudentId s) const { return seat_of_[s] != kNoSeat; }
  Seat seat(StudentId s) const { return problem_->seat_at(seat_of_[s]); }

  void pin(StudentId s) { pinned_[s] = true; }
  bool pinned(StudentId s) const { return pinned_[s]; }
  std::vector<bool> const& pins() const { return pinned_; }
  // A seat can take part in a swap when it is empty or its occupant is
  // not pinned.
  bool movable(int seat) const {
    return occupant_[seat] == kNoStudent || !pinned_[occupant_[seat]];
  }

  Tally const& totals() const { return totals_; }
  Score f() const { return totals_.f; }
  Score penalized() const { return totals_.penalized(problem_->phi()); }
  ViolationCounts const& counts() const { return totals_.v; }
  int active_count() const { return totals_.active; }
  bool feasible() const;

  void place(StudentId s, int seat);
  void unplace(StudentId s);
  // Exchanges the occupants of two seats; either seat may be empty.
  void swap_seats(int a, int b);
  // Change in totals that swap_seats(a, b) would cause.
  Tally swap_delta(int a, int b);

  // Contribution of the given students: their requirement terms plus every
  // conflict edge touching them, each edge counted once.
  Tally tally(std::initializer_list<StudentId> students) const;

  bool requirement_met(StudentId s) const;
  // True when the pair's distance constraint holds (or does not apply).
  bool pair_ok(StudentId a, StudentId b) const;

  Assignment assignment() const;
  std::vector<StudentId> unassigned() const;

 private:
  void add_student_terms(StudentId s, Tally& out) const;
  void add_edge_terms(StudentId a, StudentId b, Tally& out) const;

  Problem const* problem_;
  std::vector<int> seat_of_;
  std::vector<StudentId> occupant_;
  std::vector<bool> pinned_;
  Tally totals_;
};

}  // namespace seatplan
