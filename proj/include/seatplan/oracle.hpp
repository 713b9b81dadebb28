#pragma once

#include <cstdint>
#include <string>

#include "seatplan/model.hpp"

namespace seatplan {

enum class OracleStatus { kOptimal, kInfeasible, kBudgetExceeded };

std::string to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::kBudgetExceeded;
  // Optimal objective; meaningful only when status is kOptimal.
  Score best_f = 0;
  // Best penalized objective over all seatings (best so far when the
  // budget ran out).
  Score best_penalized = 0;
  Assignment witness;
  std::int64_t nodes = 0;
};

inline constexpr std::int64_t kDefaultNodeBudget = 200'000'000;

// Exhaustive branch-and-bound over seats for every student with a conflict
// or a requirement; interchangeable students (no conflict, no requirement)
// fill the remaining desks in column order. Maximizes the penalized
// objective, whose optimum is feasible exactly when the instance is.
OracleResult brute_force(Problem const& problem,
                         std::int64_t node_budget = kDefaultNodeBudget);

}  // namespace seatplan
