#include "seatplan/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "seatplan/seating_state.hpp"

namespace seatplan {

std::string to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::kOptimal:
      return "optimal";
    case OracleStatus::kInfeasible:
      return "infeasible";
    case OracleStatus::kBudgetExceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

namespace {

class Search {
 public:
  Search(Problem const& problem, std::int64_t budget)
      : problem_(problem), state_(problem), budget_(budget) {
    for (StudentId s = 0; s < problem.num_students(); ++s) {
      if (problem.degree(s) > 0 ||
          problem.requirement(s) != Requirement::kNone) {
        order_.push_back(s);
      }
    }
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) {
      return problem.degree(a) > problem.degree(b);
    });
  }

  OracleResult run() {
    descend(0);
    OracleResult result;
    result.nodes = nodes_;
    result.best_penalized = best_;
    if (best_seats_) {
      result.witness = *best_seats_;
    }
    if (exhausted_) {
      result.status = OracleStatus::kBudgetExceeded;
    } else if (best_feasible_) {
      result.status = OracleStatus::kOptimal;
      result.best_f = best_;
    } else {
      result.status = OracleStatus::kInfeasible;
    }
    return result;
  }

 private:
  void descend(std::size_t depth) {
    if (exhausted_) {
      return;
    }
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    // Unplaced students can only add non-positive terms.
    if (best_seats_ && state_.penalized() <= best_) {
      return;
    }
    if (depth == order_.size()) {
      record();
      return;
    }
    auto const s = order_[depth];
    for (int c = 0; c < problem_.num_seats(); ++c) {
      if (state_.occupant(c) != kNoStudent) {
        continue;
      }
      state_.place(s, c);
      descend(depth + 1);
      state_.unplace(s);
      if (exhausted_) {
        return;
      }
    }
  }

  void record() {
    best_ = state_.penalized();
    best_feasible_ = state_.counts().total() == 0;
    auto seats = state_.assignment();
    int next = 0;
    for (StudentId s = 0; s < seats.size(); ++s) {
      if (seats.seat_of[s]) {
        continue;
      }
      while (state_.occupant(next) != kNoStudent) {
        ++next;
      }
      seats.seat_of[s] = problem_.seat_at(next++);
    }
    best_seats_ = std::move(seats);
  }

  Problem const& problem_;
  SeatingState state_;
  std::vector<StudentId> order_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
  Score best_ = std::numeric_limits<Score>::min();
  bool best_feasible_ = false;
  std::optional<Assignment> best_seats_;
};

}  // namespace

OracleResult brute_force(Problem const& problem, std::int64_t node_budget) {
  return Search(problem, node_budget).run();
}

}  // namespace seatplan
