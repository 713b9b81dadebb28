#include "seatplan/constructor.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "seatplan/seating_state.hpp"

namespace seatplan {

void validate_locks(Problem const& problem, Locks const& locks) {
  std::set<StudentId> students;
  std::set<Seat> seats;
  for (auto const& lock : locks) {
    if (lock.student < 0 || lock.student >= problem.num_real_students()) {
      throw InvalidLocks("lock names unknown student " +
                         std::to_string(lock.student + 1));
    }
    if (!problem.contains(lock.seat)) {
      throw InvalidLocks("lock for student " +
                         std::to_string(lock.student + 1) +
                         " points outside the layout");
    }
    if (!students.insert(lock.student).second) {
      throw InvalidLocks("student " + std::to_string(lock.student + 1) +
                         " is locked twice");
    }
    if (!seats.insert(lock.seat).second) {
      throw InvalidLocks("seat (" + std::to_string(lock.seat.row) + "," +
                         std::to_string(lock.seat.pos) +
                         ") is locked twice");
    }
  }
}

WeightMatrix::WeightMatrix(int n, double scale)
    : size(n), delta(scale), cells(static_cast<std::size_t>(n) * n, 0.0) {}

double WeightMatrix::min() const {
  return cells.empty() ? 0.0 : *std::min_element(cells.begin(), cells.end());
}

void WeightMatrix::normalize() {
  auto const lowest = min();
  for (auto& cell : cells) {
    cell -= lowest;
  }
}

std::string WeightMatrix::to_csv() const {
  std::ostringstream out;
  out << "student";
  for (int c = 1; c <= size; ++c) {
    out << ",d" << c;
  }
  out << '\n';
  char buffer[32];
  for (int s = 0; s < size; ++s) {
    out << s + 1;
    for (int c = 0; c < size; ++c) {
      std::snprintf(buffer, sizeof(buffer), ",%.1f", at(s, c));
      out << buffer;
    }
    out << '\n';
  }
  return out.str();
}

namespace detail {

std::vector<StudentId> simulation_order(Problem const& problem, Rng& rng) {
  std::vector<StudentId> order;
  for (StudentId s = 0; s < problem.num_students(); ++s) {
    if (problem.degree(s) > 0) {
      order.push_back(s);
    }
  }
  shuffle(rng, order);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    auto const key = [&](StudentId s) {
      return std::pair{-problem.degree(s),
                       problem.requirement(s) == Requirement::kNone ? 1 : 0};
    };
    return key(a) < key(b);
  });
  return order;
}

void apply_pivot(WeightMatrix& matrix, Problem const& problem,
                 StudentId student, int seat) {
  auto const n = matrix.size;
  auto const delta = matrix.delta;
  for (int c = 0; c < n; ++c) {
    if (c != seat) {
      matrix.at(student, c) += 2 * delta;
    }
  }
  for (StudentId s = 0; s < n; ++s) {
    if (s != student) {
      matrix.at(s, seat) += 2 * delta;
    }
  }

  auto const pivot = problem.seat_at(seat);
  auto const same_row_reach = problem.d_min_same_row() - 1;
  for (auto j : problem.neighbors(student)) {
    for (int row = std::max(1, pivot.row - 1);
         row <= std::min(problem.num_rows(), pivot.row + 1); ++row) {
      for (int pos = 1; pos <= problem.row_size(row); ++pos) {
        auto const column = problem.seat_index({row, pos});
        auto const distance = std::abs(pos - pivot.pos);
        auto& cell = matrix.at(j, column);
        if (row == pivot.row) {
          if (distance == 0) {
            continue;
          }
          if (distance <= same_row_reach) {
            cell += 2 * delta;
          } else {
            cell += delta - 0.1 * distance;
          }
        } else if (distance <= 1) {
          cell += 2 * delta;
        } else {
          cell += 2 * delta - 0.1 * distance;
        }
      }
    }
  }
}

}  // namespace detail

WeightMatrix build_weight_matrix(Problem const& problem, Rng& rng,
                                 Locks const& locks) {
  auto const n = problem.num_students();
  WeightMatrix matrix(n, problem.max_row_size() + 1);
  matrix.order = detail::simulation_order(problem, rng);

  auto const preference_weight = -static_cast<double>(n) * matrix.delta;
  for (auto s : matrix.order) {
    auto const requirement = problem.requirement(s);
    if (requirement == Requirement::kNone) {
      continue;
    }
    for (int row = 1; row <= problem.num_rows(); ++row) {
      auto const size = problem.row_size(row);
      auto const positions = requirement == Requirement::kFront
                                 ? std::pair{1, std::min(2, size)}
                                 : std::pair{std::max(1, size - 1), size};
      for (int pos = positions.first; pos <= positions.second; ++pos) {
        matrix.at(s, problem.seat_index({row, pos})) = preference_weight;
      }
    }
  }

  std::vector<int> locked_seat(n, kNoSeat);
  std::vector<bool> used(problem.num_seats(), false);
  for (auto const& lock : locks) {
    locked_seat[lock.student] = problem.seat_index(lock.seat);
    used[locked_seat[lock.student]] = true;
  }

  for (auto s : matrix.order) {
    auto seat = locked_seat[s];
    if (seat == kNoSeat) {
      std::vector<int> candidates;
      for (int c = 0; c < problem.num_seats(); ++c) {
        if (!used[c] && problem.satisfies(s, problem.seat_at(c))) {
          candidates.push_back(c);
        }
      }
      if (candidates.empty()) {
        throw ConstructionError("no free seat honouring the requirement of "
                                "student " +
                                std::to_string(s + 1));
      }
      seat = pick(rng, candidates);
      used[seat] = true;
    }
    detail::apply_pivot(matrix, problem, s, seat);
  }
  return matrix;
}

namespace {

SeatingState state_from(Problem const& problem,
                        PartialSolution const& partial) {
  SeatingState state(problem, partial.seats);
  for (StudentId s = 0; s < static_cast<int>(partial.pinned.size()); ++s) {
    if (partial.pinned[s]) {
      state.pin(s);
    }
  }
  return state;
}

std::vector<StudentId> ordered_unassigned(Problem const& problem,
                                          SeatingState const& state) {
  auto out = state.unassigned();
  std::stable_sort(out.begin(), out.end(), [&](auto a, auto b) {
    return problem.degree(a) > problem.degree(b);
  });
  return out;
}

PartialSolution to_partial(Problem const& problem,
                           SeatingState const& state) {
  return {state.assignment(), ordered_unassigned(problem, state),
          state.pins()};
}

// True when `seat` keeps every already seated neighbour of `s` at the
// relaxed separation, or strictly clear of rows seat.row-1..seat.row+1.
bool clear_of_neighbours(Problem const& problem, SeatingState const& state,
                         StudentId s, Seat seat, bool relaxed) {
  for (auto j : problem.neighbors(s)) {
    if (!state.assigned(j)) {
      continue;
    }
    auto const other = state.seat(j);
    auto const row_gap = std::abs(other.row - seat.row);
    if (row_gap > 1) {
      continue;
    }
    if (!relaxed) {
      return false;
    }
    auto const distance = std::abs(other.pos - seat.pos);
    if (row_gap == 0 && distance < problem.d_min_same_row()) {
      return false;
    }
    if (row_gap == 1 && distance <= 1) {
      return false;
    }
  }
  return true;
}

}  // namespace

PartialSolution construct_partial(Problem const& problem, WeightMatrix matrix,
                                  Locks const& locks) {
  matrix.normalize();
  SeatingState state(problem);
  for (auto const& lock : locks) {
    state.place(lock.student, problem.seat_index(lock.seat));
    state.pin(lock.student);
  }

  for (auto s : matrix.order) {
    if (state.assigned(s)) {
      continue;
    }
    int best = kNoSeat;
    for (bool relaxed : {false, true}) {
      auto best_value = std::numeric_limits<double>::infinity();
      for (int c = 0; c < problem.num_seats(); ++c) {
        if (state.occupant(c) != kNoStudent ||
            !clear_of_neighbours(problem, state, s, problem.seat_at(c),
                                 relaxed)) {
          continue;
        }
        if (matrix.at(s, c) < best_value) {
          best_value = matrix.at(s, c);
          best = c;
        }
      }
      if (best != kNoSeat) {
        break;
      }
    }
    if (best == kNoSeat) {
      continue;
    }
    state.place(s, best);

    auto const chosen = problem.seat_at(best);
    for (auto j : problem.neighbors(s)) {
      for (int row = std::max(1, chosen.row - 1);
           row <= std::min(problem.num_rows(), chosen.row + 1); ++row) {
        for (int pos = chosen.pos - 1; pos <= chosen.pos + 1; ++pos) {
          if (pos < 1 || pos > problem.row_size(row) ||
              (row == chosen.row && pos == chosen.pos)) {
            continue;
          }
          matrix.at(j, problem.seat_index({row, pos})) += matrix.delta;
        }
      }
    }
  }
  return to_partial(problem, state);
}

PartialSolution improve_partial_swaps(Problem const& problem,
                                      PartialSolution partial) {
  auto state = state_from(problem, partial);
  auto const phi = problem.phi();
  bool improved = true;
  while (improved) {
    improved = false;
    for (StudentId s = 0; s < problem.num_students(); ++s) {
      if (!state.assigned(s) || state.pinned(s)) {
        continue;
      }
      for (int c = 0; c < problem.num_seats(); ++c) {
        if (state.occupant(c) != kNoStudent) {
          continue;
        }
        if (state.swap_delta(state.seat_of(s), c).penalized(phi) > 0) {
          state.swap_seats(state.seat_of(s), c);
          improved = true;
          break;
        }
      }
    }
  }
  return to_partial(problem, state);
}

Assignment complete_solution(Problem const& problem,
                             PartialSolution const& partial, Rng& rng) {
  auto state = state_from(problem, partial);

  std::vector<StudentId> careful;
  for (auto s : ordered_unassigned(problem, state)) {
    if (problem.degree(s) > 0) {
      careful.push_back(s);
    }
  }
  for (auto s : state.unassigned()) {
    if (problem.degree(s) == 0 &&
        problem.requirement(s) != Requirement::kNone) {
      careful.push_back(s);
    }
  }

  for (auto s : careful) {
    for (int c = 0; c < problem.num_seats(); ++c) {
      if (state.occupant(c) != kNoStudent) {
        continue;
      }
      auto const seat = problem.seat_at(c);
      if (problem.satisfies(s, seat) &&
          clear_of_neighbours(problem, state, s, seat, true)) {
        auto const before = state.counts().total();
        state.place(s, c);
        if (state.counts().total() == before) {
          break;
        }
        state.unplace(s);
      }
    }
  }

  std::vector<int> free_seats;
  for (int c = 0; c < problem.num_seats(); ++c) {
    if (state.occupant(c) == kNoStudent) {
      free_seats.push_back(c);
    }
  }
  shuffle(rng, free_seats);
  auto const rest = state.unassigned();
  for (std::size_t k = 0; k < rest.size(); ++k) {
    state.place(rest[k], free_seats[k]);
  }
  return state.assignment();
}

Assignment initial_solution(Problem const& problem, Rng& rng,
                            Locks const& locks) {
  validate_locks(problem, locks);
  for (int attempt = 1;; ++attempt) {
    try {
      auto matrix = build_weight_matrix(problem, rng, locks);
      auto partial = construct_partial(problem, std::move(matrix), locks);
      partial = improve_partial_swaps(problem, std::move(partial));
      return complete_solution(problem, partial, rng);
    } catch (ConstructionError const&) {
      if (attempt == kConstructionAttempts) {
        throw;
      }
    }
  }
}

}  // namespace seatplan
