#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "seatplan/model.hpp"
#include "seatplan/random.hpp"

namespace seatplan {

// A student pinned to a seat by the caller.
struct Lock {
  StudentId student = 0;
  Seat seat;
};
using Locks = std::vector<Lock>;

// Throws InvalidLocks when locks repeat a student or seat, name an unknown
// student, or point outside the layout.
void validate_locks(Problem const& problem, Locks const& locks);

class InvalidLocks : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ConstructionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Student-by-desk cost surface. Rows are students, columns are 0-based
// seat indices (desk column minus one).
struct WeightMatrix {
  int size = 0;
  double delta = 0.0;
  std::vector<double> cells;
  // Conflict students in simulation order.
  std::vector<StudentId> order;

  WeightMatrix() = default;
  WeightMatrix(int n, double scale);

  double& at(StudentId s, int seat) {
    return cells[static_cast<std::size_t>(s) * size + seat];
  }
  double at(StudentId s, int seat) const {
    return cells[static_cast<std::size_t>(s) * size + seat];
  }
  double min() const;
  void normalize();
  std::string to_csv() const;
};

namespace detail {

// Conflict students ordered by degree (descending), then students with a
// seat requirement before neutral ones; remaining ties in random order.
std::vector<StudentId> simulation_order(Problem const& problem, Rng& rng);

// Scores the weight matrix with `student` hypothetically seated at `seat`.
void apply_pivot(WeightMatrix& matrix, Problem const& problem,
                 StudentId student, int seat);

}  // namespace detail

// Builds the weight matrix by simulated placement of every conflict
// student. Throws ConstructionError when a student cannot be given a
// free seat that honours its requirement.
WeightMatrix build_weight_matrix(Problem const& problem, Rng& rng,
                                 Locks const& locks = {});

struct PartialSolution {
  Assignment seats;
  // Students without a seat, conflict students first (degree descending).
  std::vector<StudentId> unassigned;
  std::vector<bool> pinned;
};

PartialSolution construct_partial(Problem const& problem, WeightMatrix matrix,
                                  Locks const& locks = {});

PartialSolution improve_partial_swaps(Problem const& problem,
                                      PartialSolution partial);

Assignment complete_solution(Problem const& problem,
                             PartialSolution const& partial, Rng& rng);

Assignment initial_solution(Problem const& problem, Rng& rng,
                            Locks const& locks = {});

inline constexpr int kConstructionAttempts = 16;

}  // namespace seatplan
