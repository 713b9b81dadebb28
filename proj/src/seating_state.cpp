#include "seatplan/seating_state.hpp"

#include <algorithm>
#include <cstdlib>

namespace seatplan {

Tally& Tally::operator+=(Tally const& o) {
  f += o.f;
  v.alpha += o.v.alpha;
  v.beta += o.v.beta;
  v.gamma += o.v.gamma;
  v.delta += o.v.delta;
  active += o.active;
  return *this;
}

Tally& Tally::operator-=(Tally const& o) {
  f -= o.f;
  v.alpha -= o.v.alpha;
  v.beta -= o.v.beta;
  v.gamma -= o.v.gamma;
  v.delta -= o.v.delta;
  active -= o.active;
  return *this;
}

SeatingState::SeatingState(Problem const& problem)
    : problem_(&problem),
      seat_of_(problem.num_students(), kNoSeat),
      occupant_(problem.num_seats(), kNoStudent),
      pinned_(problem.num_students(), false) {}

SeatingState::SeatingState(Problem const& problem,
                           Assignment const& assignment)
    : SeatingState(problem) {
  for (StudentId s = 0; s < assignment.size(); ++s) {
    if (auto const& seat = assignment.seat_of[s]) {
      place(s, problem.seat_index(*seat));
    }
  }
}

bool SeatingState::feasible() const {
  return totals_.v.total() == 0 &&
         std::none_of(seat_of_.begin(), seat_of_.end(),
                      [](int seat) { return seat == kNoSeat; });
}

void SeatingState::add_student_terms(StudentId s, Tally& out) const {
  if (seat_of_[s] == kNoSeat) {
    return;
  }
  auto const seat = problem_->seat_at(seat_of_[s]);
  switch (problem_->requirement(s)) {
    case Requirement::kFront:
      out.v.alpha += problem_->is_front(seat) ? 0 : 1;
      break;
    case Requirement::kBack:
      out.v.beta += problem_->is_back(seat) ? 0 : 1;
      break;
    case Requirement::kNone:
      break;
  }
}

void SeatingState::add_edge_terms(StudentId a, StudentId b,
                                  Tally& out) const {
  if (seat_of_[a] == kNoSeat || seat_of_[b] == kNoSeat) {
    return;
  }
  auto const sa = problem_->seat_at(seat_of_[a]);
  auto const sb = problem_->seat_at(seat_of_[b]);
  auto const row_gap = std::abs(sa.row - sb.row);
  auto const distance = std::abs(sa.pos - sb.pos);
  if (row_gap == 0) {
    out.v.gamma += distance < problem_->d_min_same_row() ? 1 : 0;
  } else if (row_gap == 1) {
    out.f += distance - problem_->psi();
    out.active += 1;
    out.v.delta += distance < problem_->d_min() ? 1 : 0;
  }
}

Tally SeatingState::tally(std::initializer_list<StudentId> students) const {
  Tally out;
  for (auto s : students) {
    if (s == kNoStudent) {
      continue;
    }
    add_student_terms(s, out);
    for (auto j : problem_->neighbors(s)) {
      bool counted_elsewhere = false;
      for (auto other : students) {
        if (other == j && j < s) {
          counted_elsewhere = true;
        }
      }
      if (!counted_elsewhere) {
        add_edge_terms(s, j, out);
      }
    }
  }
  return out;
}

void SeatingState::place(StudentId s, int seat) {
  auto const before = tally({s});
  if (seat_of_[s] != kNoSeat) {
    occupant_[seat_of_[s]] = kNoStudent;
  }
  seat_of_[s] = seat;
  occupant_[seat] = s;
  totals_ += tally({s}) - before;
}

void SeatingState::unplace(StudentId s) {
  if (seat_of_[s] == kNoSeat) {
    return;
  }
  totals_ -= tally({s});
  occupant_[seat_of_[s]] = kNoStudent;
  seat_of_[s] = kNoSeat;
}

void SeatingState::swap_seats(int a, int b) {
  if (a == b) {
    return;
  }
  auto const u = occupant_[a];
  auto const v = occupant_[b];
  auto const before = tally({u, v});
  occupant_[a] = v;
  occupant_[b] = u;
  if (u != kNoStudent) {
    seat_of_[u] = b;
  }
  if (v != kNoStudent) {
    seat_of_[v] = a;
  }
  totals_ += tally({u, v}) - before;
}

Tally SeatingState::swap_delta(int a, int b) {
  auto const start = totals_;
  swap_seats(a, b);
  auto const delta = totals_ - start;
  swap_seats(a, b);
  return delta;
}

bool SeatingState::requirement_met(StudentId s) const {
  Tally t;
  add_student_terms(s, t);
  return t.v.total() == 0;
}

bool SeatingState::pair_ok(StudentId a, StudentId b) const {
  if (!problem_->in_conflict(a, b)) {
    return true;
  }
  Tally t;
  add_edge_terms(a, b, t);
  return t.v.total() == 0;
}

Assignment SeatingState::assignment() const {
  Assignment out(problem_->num_students());
  for (StudentId s = 0; s < out.size(); ++s) {
    if (seat_of_[s] != kNoSeat) {
      out.seat_of[s] = problem_->seat_at(seat_of_[s]);
    }
  }
  return out;
}

std::vector<StudentId> SeatingState::unassigned() const {
  std::vector<StudentId> out;
  for (StudentId s = 0; s < static_cast<int>(seat_of_.size()); ++s) {
    if (seat_of_[s] == kNoSeat) {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace seatplan
