#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seatplan/model.hpp"
#include "seatplan/random.hpp"

namespace testing {

using namespace seatplan;

std::string data_path(std::string const& file);
Instance data_instance(std::string const& file);

// rows [4,4], 8 students, conflict (1,2), student 1 in front,
// d_min = d_min' = 2, psi 4.
Instance tiny();
// Conflict clique on students 1..4, rows [4,4].
Instance k4();

Assignment seats(Problem const& problem,
                 std::vector<std::pair<int, Seat>> const& placed);
Assignment random_assignment(Problem const& problem, Rng& rng);

// Small random instance with two rows of 4 or 5 desks, full roster, a
// random conflict graph and up to two front and two back students. It may
// be infeasible.
Instance micro_instance(std::uint64_t seed);

struct NaiveOptimum {
  bool feasible = false;
  Score best_f = 0;
  Score best_penalized = 0;
  std::int64_t permutations = 0;
};

// Plain evaluation of every student-to-seat permutation.
NaiveOptimum naive_optimum(Problem const& problem);

// Calls `visit` with every permutation of students over seats.
void for_each_assignment(Problem const& problem,
                         std::function<void(Assignment const&)> const& visit);

struct PlainScore {
  Score f = 0;
  int violations = 0;
};
// Objective and violation count computed straight from the definitions.
PlainScore plain_score(Problem const& problem, Assignment const& assignment);

}  // namespace testing
