#include "seatplan/ils.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace seatplan {

void SolveParams::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta out of range (0,1]");
  }
  if (it_max < 1) {
    throw std::invalid_argument("it_max must be at least 1");
  }
  if (eta_max < 1) {
    throw std::invalid_argument("eta_max must be at least 1");
  }
  if (!(psi > 0.0 && psi < 1.0)) {
    throw std::invalid_argument("psi out of range (0,1)");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma out of range (0,1)");
  }
  if (candidates_min < 1 || candidates_max < candidates_min) {
    throw std::invalid_argument("candidate clamp must satisfy 1 <= min <= max");
  }
  if (time_limit_seconds < 0.0) {
    throw std::invalid_argument("time limit must be non-negative");
  }
}

int perturbation_size(int students, double theta) {
  return std::max(1, ceil_fraction(students, theta));
}

int row_selection_size(int row_size, double fraction) {
  return std::max(1, ceil_fraction(row_size, fraction));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<StudentId> students_in_row(SeatingState const& state, int row) {
  auto const& problem = state.problem();
  std::vector<StudentId> out;
  for (int pos = 1; pos <= problem.row_size(row); ++pos) {
    auto const seat = problem.seat_index({row, pos});
    if (state.occupant(seat) != kNoStudent && state.movable(seat)) {
      out.push_back(state.occupant(seat));
    }
  }
  return out;
}

std::vector<int> swap1_candidates(SeatingState const& state, StudentId s,
                                  SolveParams const& params, Rng& rng) {
  auto const& problem = state.problem();
  auto const own = state.seat_of(s);
  auto const here = problem.seat_at(own);
  std::vector<int> out;
  auto const requirement = problem.requirement(s);
  if (requirement != Requirement::kNone) {
    for (int c = 0; c < problem.num_seats(); ++c) {
      if (c != own && state.movable(c) &&
          problem.satisfies(s, problem.seat_at(c))) {
        out.push_back(c);
      }
    }
    return out;
  }

  std::vector<int> other_rows;
  for (int row = 1; row <= problem.num_rows(); ++row) {
    if (row != here.row) {
      other_rows.push_back(row);
    }
  }
  shuffle(rng, other_rows);
  other_rows.resize(std::min<std::size_t>(2, other_rows.size()));
  other_rows.push_back(here.row);
  for (auto row : other_rows) {
    for (int pos = 1; pos <= problem.row_size(row); ++pos) {
      auto const c = problem.seat_index({row, pos});
      if (c != own && state.movable(c)) {
        out.push_back(c);
      }
    }
  }
  auto const limit = std::clamp(ceil_fraction(static_cast<int>(out.size()),
                                              params.gamma),
                                params.candidates_min, params.candidates_max);
  shuffle(rng, out);
  if (static_cast<int>(out.size()) > limit) {
    out.resize(limit);
  }
  return out;
}

// Moves the misplaced students of one requirement class onto the seats
// reserved for it. Every exchange strictly lowers the misplaced count.
bool requirement_swaps(SeatingState& state, Requirement requirement) {
  auto const& problem = state.problem();
  auto const phi = problem.phi();
  auto const misplaced = [&](Tally const& t) {
    return requirement == Requirement::kFront ? t.v.alpha : t.v.beta;
  };
  bool changed_any = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (StudentId s = 0; s < problem.num_students(); ++s) {
      if (problem.requirement(s) != requirement || state.pinned(s) ||
          state.requirement_met(s)) {
        continue;
      }
      auto const own = state.seat_of(s);
      int best = kNoSeat;
      Score best_gain = 0;
      for (int c = 0; c < problem.num_seats(); ++c) {
        if (c == own || !state.movable(c) ||
            !problem.satisfies(s, problem.seat_at(c))) {
          continue;
        }
        auto const d = state.swap_delta(own, c);
        if (misplaced(d) >= 0) {
          continue;
        }
        auto const gain = d.penalized(phi);
        if (gain >= 0 && (best == kNoSeat || gain > best_gain)) {
          best = c;
          best_gain = gain;
        }
      }
      if (best != kNoSeat) {
        state.swap_seats(own, best);
        changed = changed_any = true;
      }
    }
  }
  return changed_any;
}

std::vector<std::pair<StudentId, StudentId>> close_active_pairs(
    SeatingState const& state) {
  auto const& problem = state.problem();
  std::vector<std::pair<StudentId, StudentId>> out;
  for (auto const& e : problem.edges()) {
    if (!state.assigned(e.i) || !state.assigned(e.j)) {
      continue;
    }
    auto const a = state.seat(e.i);
    auto const b = state.seat(e.j);
    if (std::abs(a.row - b.row) == 1 &&
        std::abs(a.pos - b.pos) < problem.d_min()) {
      out.emplace_back(e.i, e.j);
    }
  }
  return out;
}

// Satisfaction flags of every constraint touching u or v, in a fixed order.
std::vector<bool> constraint_status(SeatingState const& state, StudentId u,
                                    StudentId v) {
  auto const& problem = state.problem();
  std::vector<bool> out;
  for (auto s : {u, v}) {
    if (s == kNoStudent) {
      continue;
    }
    out.push_back(state.requirement_met(s));
    for (auto j : problem.neighbors(s)) {
      out.push_back(state.pair_ok(s, j));
    }
  }
  return out;
}

std::map<std::pair<StudentId, StudentId>, int> active_distances(
    SeatingState const& state) {
  auto const& problem = state.problem();
  std::map<std::pair<StudentId, StudentId>, int> out;
  for (auto const& e : problem.edges()) {
    if (!state.assigned(e.i) || !state.assigned(e.j)) {
      continue;
    }
    auto const a = state.seat(e.i);
    auto const b = state.seat(e.j);
    if (std::abs(a.row - b.row) == 1) {
      out[{e.i, e.j}] = std::abs(a.pos - b.pos);
    }
  }
  return out;
}

bool distances_preserved(
    std::map<std::pair<StudentId, StudentId>, int> const& before,
    std::map<std::pair<StudentId, StudentId>, int> const& after) {
  for (auto const& [edge, distance] : after) {
    auto const it = before.find(edge);
    if (it == before.end() || distance < it->second) {
      return false;
    }
  }
  return true;
}

void record(std::vector<RefineStep>* trace, SeatingState const& state,
            int phase, StudentId s, Seat from) {
  if (trace != nullptr) {
    trace->push_back({phase, s, from, state.seat(s), state.active_count(),
                      state.f(), state.penalized()});
  }
}

void minimize_active_edges(SeatingState& state,
                           std::vector<RefineStep>* trace) {
  auto const& problem = state.problem();
  auto const phi = problem.phi();
  bool progress = true;
  while (progress && state.active_count() > 0) {
    progress = false;
    std::vector<StudentId> endpoints;
    for (auto const& [edge, distance] : active_distances(state)) {
      endpoints.push_back(edge.first);
      endpoints.push_back(edge.second);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()),
                    endpoints.end());

    for (auto i : endpoints) {
      if (state.pinned(i)) {
        continue;
      }
      auto const here = state.seat(i);
      std::vector<int> neighbour_rows;
      bool still_active = false;
      for (auto j : problem.neighbors(i)) {
        if (state.assigned(j)) {
          neighbour_rows.push_back(state.seat(j).row);
          still_active |= std::abs(state.seat(j).row - here.row) == 1;
        }
      }
      if (!still_active) {
        continue;
      }
      auto const before = active_distances(state);
      int best = kNoSeat;
      Tally best_delta;
      for (int row = 1; row <= problem.num_rows(); ++row) {
        if (row == here.row ||
            std::any_of(neighbour_rows.begin(), neighbour_rows.end(),
                        [&](int r) { return std::abs(r - row) == 1; })) {
          continue;
        }
        for (int pos = 1; pos <= problem.row_size(row); ++pos) {
          auto const c = problem.seat_index({row, pos});
          if (!state.movable(c)) {
            continue;
          }
          auto const d = state.swap_delta(state.seat_of(i), c);
          if (d.active >= 0 || d.penalized(phi) < 0) {
            continue;
          }
          if (best != kNoSeat &&
              d.penalized(phi) <= best_delta.penalized(phi)) {
            continue;
          }
          auto const from = state.seat_of(i);
          state.swap_seats(from, c);
          bool const kept = distances_preserved(before, active_distances(state));
          state.swap_seats(from, c);
          if (kept) {
            best = c;
            best_delta = d;
          }
        }
      }
      if (best != kNoSeat) {
        state.swap_seats(state.seat_of(i), best);
        record(trace, state, 1, i, here);
        progress = true;
      }
    }
  }
}

void maximize_distances(SeatingState& state, std::vector<RefineStep>* trace) {
  auto const& problem = state.problem();
  auto const edges = active_distances(state);
  for (auto const& [edge, original] : edges) {
    auto const [i, j] = edge;
    if (state.pinned(i) || state.pinned(j)) {
      continue;
    }
    auto const before = active_distances(state);
    auto const it = before.find(edge);
    if (it == before.end()) {
      continue;
    }
    auto const row_i = state.seat(i).row;
    auto const row_j = state.seat(j).row;
    auto const f0 = state.f();
    auto const fp0 = state.penalized();
    auto best_distance = it->second;
    Score best_fp = fp0;
    int best_p = 0;
    int best_q = 0;
    for (int p = 1; p <= problem.row_size(row_i); ++p) {
      for (int q = 1; q <= problem.row_size(row_j); ++q) {
        auto const distance = std::abs(p - q);
        if (distance < best_distance) {
          continue;
        }
        auto const ci = problem.seat_index({row_i, p});
        auto const cj = problem.seat_index({row_j, q});
        if (!state.movable(ci) || !state.movable(cj)) {
          continue;
        }
        auto const from_i = state.seat_of(i);
        state.swap_seats(from_i, ci);
        auto const from_j = state.seat_of(j);
        state.swap_seats(from_j, cj);
        bool const better =
            (distance > best_distance ||
             (distance == best_distance && best_p != 0 &&
              state.penalized() > best_fp)) &&
            state.f() >= f0 && state.penalized() >= fp0 &&
            distances_preserved(before, active_distances(state));
        if (better) {
          best_distance = distance;
          best_fp = state.penalized();
          best_p = p;
          best_q = q;
        }
        state.swap_seats(from_j, cj);
        state.swap_seats(from_i, ci);
      }
    }
    if (best_p != 0) {
      auto const from_i = state.seat(i);
      auto const from_j = state.seat(j);
      state.swap_seats(state.seat_of(i),
                       problem.seat_index({row_i, best_p}));
      record(trace, state, 2, i, from_i);
      state.swap_seats(state.seat_of(j),
                       problem.seat_index({row_j, best_q}));
      record(trace, state, 2, j, from_j);
    }
  }
}

SeatingState random_state(Problem const& problem, Locks const& locks,
                          Rng& rng) {
  SeatingState state(problem);
  for (auto const& lock : locks) {
    state.place(lock.student, problem.seat_index(lock.seat));
    state.pin(lock.student);
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
  return state;
}

}  // namespace

bool swap1(SeatingState& state, SolveParams const& params, Rng& rng) {
  auto const& problem = state.problem();
  auto const phi = problem.phi();
  bool changed_any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int row = 1; row <= problem.num_rows(); ++row) {
      auto members = students_in_row(state, row);
      shuffle(rng, members);
      auto const take =
          std::min<std::size_t>(members.size(),
                                row_selection_size(problem.row_size(row),
                                                   params.psi));
      members.resize(take);
      for (auto s : members) {
        auto const own = state.seat_of(s);
        int best = kNoSeat;
        Score best_gain = 0;
        for (auto c : swap1_candidates(state, s, params, rng)) {
          auto const gain = state.swap_delta(own, c).penalized(phi);
          if (gain > best_gain) {
            best = c;
            best_gain = gain;
          }
        }
        if (best != kNoSeat) {
          state.swap_seats(own, best);
          improved = changed_any = true;
        }
      }
    }
  }
  return changed_any;
}

bool swap2(SeatingState& state) {
  return requirement_swaps(state, Requirement::kBack);
}

bool swap3(SeatingState& state) {
  return requirement_swaps(state, Requirement::kFront);
}

bool swap4(SeatingState& state) {
  auto const& problem = state.problem();
  auto const phi = problem.phi();
  bool changed_any = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto const& [a, b] : close_active_pairs(state)) {
      if (state.pair_ok(a, b)) {
        continue;
      }
      bool moved = false;
      for (auto endpoint : {a, b}) {
        if (moved || state.pinned(endpoint)) {
          continue;
        }
        for (int c = 0; c < problem.num_seats() && !moved; ++c) {
          auto const other = state.occupant(c);
          if (c == state.seat_of(endpoint) || !state.movable(c) ||
              (other != kNoStudent && problem.in_conflict(endpoint, other))) {
            continue;
          }
          auto const d = state.swap_delta(state.seat_of(endpoint), c);
          if (d.penalized(phi) > 0 && d.v.delta <= 0) {
            state.swap_seats(state.seat_of(endpoint), c);
            moved = true;
          }
        }
      }
      if (moved) {
        changed = changed_any = true;
      }
    }
  }
  return changed_any;
}

void local_search(SeatingState& state, SolveParams const& params, Rng& rng) {
  swap1(state, params, rng);
  swap2(state);
  swap3(state);
  swap4(state);
}

void perturb(SeatingState& state, double theta, Rng& rng) {
  auto const& problem = state.problem();
  std::vector<StudentId> pool;
  for (StudentId s = 0; s < problem.num_students(); ++s) {
    if (state.assigned(s) && !state.pinned(s)) {
      pool.push_back(s);
    }
  }
  shuffle(rng, pool);
  auto const rho = std::min<std::size_t>(
      pool.size(), perturbation_size(problem.num_students(), theta));
  pool.resize(rho);

  std::vector<int> viable;
  for (auto u : pool) {
    auto const own = state.seat_of(u);
    auto const status = constraint_status(state, u, kNoStudent);
    bool const violating =
        std::find(status.begin(), status.end(), false) != status.end();
    viable.clear();
    for (int c = 0; c < problem.num_seats(); ++c) {
      if (c == own || !state.movable(c)) {
        continue;
      }
      if (violating) {
        viable.push_back(c);
        continue;
      }
      auto const v = state.occupant(c);
      auto const before = constraint_status(state, u, v);
      state.swap_seats(own, c);
      auto const after = constraint_status(state, u, v);
      state.swap_seats(own, c);
      bool breaks = false;
      for (std::size_t k = 0; k < before.size() && !breaks; ++k) {
        breaks = before[k] && !after[k];
      }
      if (!breaks) {
        viable.push_back(c);
      }
    }
    if (!viable.empty()) {
      state.swap_seats(own, pick(rng, viable));
    }
  }
}

void refine(SeatingState& state, std::vector<RefineStep>* trace) {
  minimize_active_edges(state, trace);
  maximize_distances(state, trace);
}

Assignment swap1(Problem const& problem, Assignment const& assignment,
                 SolveParams const& params, Rng& rng) {
  SeatingState state(problem, assignment);
  swap1(state, params, rng);
  return state.assignment();
}

Assignment swap2(Problem const& problem, Assignment const& assignment) {
  SeatingState state(problem, assignment);
  swap2(state);
  return state.assignment();
}

Assignment swap3(Problem const& problem, Assignment const& assignment) {
  SeatingState state(problem, assignment);
  swap3(state);
  return state.assignment();
}

Assignment swap4(Problem const& problem, Assignment const& assignment) {
  SeatingState state(problem, assignment);
  swap4(state);
  return state.assignment();
}

Assignment local_search(Problem const& problem, Assignment const& assignment,
                        SolveParams const& params, Rng& rng) {
  SeatingState state(problem, assignment);
  local_search(state, params, rng);
  return state.assignment();
}

Assignment perturb(Problem const& problem, Assignment const& assignment,
                   double theta, Rng& rng) {
  SeatingState state(problem, assignment);
  perturb(state, theta, rng);
  return state.assignment();
}

Assignment refine(Problem const& problem, Assignment const& assignment) {
  SeatingState state(problem, assignment);
  refine(state);
  return state.assignment();
}

SolveResult solve(Problem const& problem, SolveParams const& params,
                  Locks const& locks) {
  params.validate();
  validate_locks(problem, locks);
  auto const start = Clock::now();
  Rng rng(params.seed);

  SolveResult result;
  result.seed = params.seed;

  auto state = [&] {
    try {
      SeatingState built(problem, initial_solution(problem, rng, locks));
      for (auto const& lock : locks) {
        built.pin(lock.student);
      }
      return built;
    } catch (ConstructionError const&) {
      // Structurally impossible requirements; start from a random seating.
      return random_state(problem, locks, rng);
    }
  }();
  result.initial = {state.f(), state.penalized(), state.feasible(),
                    seconds_since(start)};

  swap1(state, params, rng);
  auto best = state;
  int stagnation = 0;
  while (result.iterations < params.it_max && stagnation < params.eta_max) {
    if (params.stop_at_bound && best.penalized() == 0) {
      break;
    }
    if (params.time_limit_seconds > 0.0 &&
        seconds_since(start) >= params.time_limit_seconds) {
      result.time_limit_hit = true;
      break;
    }
    ++result.iterations;
    auto candidate = best;
    perturb(candidate, params.theta, rng);
    local_search(candidate, params, rng);
    if (candidate.penalized() > best.penalized()) {
      best = std::move(candidate);
      stagnation = 0;
    } else {
      ++stagnation;
    }
    if (params.record_trace) {
      result.trace.push_back({result.iterations, candidate.penalized(),
                              best.penalized()});
    }
  }
  result.stagnation_hit = stagnation >= params.eta_max;

  refine(best, params.record_trace ? &result.refine_trace : nullptr);

  result.assignment = best.assignment();
  result.f = best.f();
  result.penalized = best.penalized();
  result.feasible = best.feasible();
  result.violations = best.counts();
  result.elapsed = seconds_since(start);
  return result;
}

std::string trace_csv(std::vector<TracePoint> const& trace) {
  std::ostringstream out;
  out << "iteration,f_p,best_f_p\n";
  for (auto const& point : trace) {
    out << point.iteration << ',' << point.penalized << ','
        << point.best_penalized << '\n';
  }
  return out.str();
}

std::string refine_trace_csv(std::vector<RefineStep> const& trace) {
  std::ostringstream out;
  out << "phase,student,from_row,from_pos,to_row,to_pos,active_edges,f,f_p\n";
  for (auto const& step : trace) {
    out << step.phase << ',' << step.student + 1 << ',' << step.from.row
        << ',' << step.from.pos << ',' << step.to.row << ',' << step.to.pos
        << ',' << step.active_edges << ',' << step.f << ',' << step.penalized
        << '\n';
  }
  return out.str();
}

}  // namespace seatplan
