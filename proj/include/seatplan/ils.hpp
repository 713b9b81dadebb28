#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seatplan/constructor.hpp"
#include "seatplan/model.hpp"
#include "seatplan/random.hpp"
#include "seatplan/seating_state.hpp"

namespace seatplan {

struct SolveParams {
  double theta = 0.25;       // perturbation degree
  int it_max = 10000;        // iteration budget
  int eta_max = 500;         // consecutive non-improving iterations
  double psi = 0.35;         // Swap I: fraction of each row selected
  double gamma = 0.35;       // Swap I: fraction of candidate seats tried
  int candidates_min = 8;
  int candidates_max = 30;
  std::uint64_t seed = 1;
  // Stop as soon as the incumbent reaches the upper bound f_p = 0.
  bool stop_at_bound = true;
  // Wall-clock cap on the main loop; 0 disables it.
  double time_limit_seconds = 0.0;
  bool record_trace = false;

  // Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  Score penalized = 0;
  Score best_penalized = 0;
};

struct RefineStep {
  int phase = 0;
  StudentId student = 0;
  Seat from;
  Seat to;
  int active_edges = 0;
  Score f = 0;
  Score penalized = 0;
};

struct Snapshot {
  Score f = 0;
  Score penalized = 0;
  bool feasible = false;
  double elapsed = 0.0;
};

struct SolveResult {
  Assignment assignment;
  Score f = 0;
  Score penalized = 0;
  bool feasible = false;
  ViolationCounts violations;
  int iterations = 0;
  bool stagnation_hit = false;
  bool time_limit_hit = false;
  double elapsed = 0.0;
  std::uint64_t seed = 0;
  // Constructive phase output, before any local search.
  Snapshot initial;
  std::vector<TracePoint> trace;
  std::vector<RefineStep> refine_trace;
};

// Neighbourhoods operate on a SeatingState in place; pinned students never
// move. Each returns true when it changed the state.
bool swap1(SeatingState& state, SolveParams const& params, Rng& rng);
bool swap2(SeatingState& state);
bool swap3(SeatingState& state);
bool swap4(SeatingState& state);
void local_search(SeatingState& state, SolveParams const& params, Rng& rng);
void perturb(SeatingState& state, double theta, Rng& rng);
void refine(SeatingState& state, std::vector<RefineStep>* trace = nullptr);

// Number of students perturbed for a given degree.
int perturbation_size(int students, double theta);
// Number of students Swap I selects from a row.
int row_selection_size(int row_size, double fraction);

// Assignment-level convenience wrappers.
Assignment swap1(Problem const& problem, Assignment const& assignment,
                 SolveParams const& params, Rng& rng);
Assignment swap2(Problem const& problem, Assignment const& assignment);
Assignment swap3(Problem const& problem, Assignment const& assignment);
Assignment swap4(Problem const& problem, Assignment const& assignment);
Assignment local_search(Problem const& problem, Assignment const& assignment,
                        SolveParams const& params, Rng& rng);
Assignment perturb(Problem const& problem, Assignment const& assignment,
                   double theta, Rng& rng);
Assignment refine(Problem const& problem, Assignment const& assignment);

SolveResult solve(Problem const& problem, SolveParams const& params,
                  Locks const& locks = {});

std::string trace_csv(std::vector<TracePoint> const& trace);
std::string refine_trace_csv(std::vector<RefineStep> const& trace);

}  // namespace seatplan
