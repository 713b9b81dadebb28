#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace testing {

struct PropertyReport {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first_failure;

  bool passed() const { return checks > 0 && failures == 0; }
  void fail(std::string const& what);
};

// Random neighbourhood, perturbation and refinement applications on random
// seatings, some with pinned students. Each result must be a permutation,
// keep pins in place and carry totals equal to a fresh evaluation.
PropertyReport permutation_preservation(int applications = 10'000,
                                        std::uint64_t seed = 11);

// local_search and refine never lower f_p; refine never adds active edges
// and never shortens an edge that stays active.
PropertyReport penalized_monotonicity(int trajectories = 1'000,
                                      std::uint64_t seed = 23);

// Every infeasible seating of TINY scores below every feasible one.
PropertyReport penalty_separation();

PropertyReport gap_identities();

// Every active edge of every evaluated seating has Psi - d > 0, and
// dropping it from the conflict set raises f by exactly that amount.
PropertyReport psi_dominance(int samples = 400, std::uint64_t seed = 37);

std::vector<PropertyReport> all_properties();

}  // namespace testing
