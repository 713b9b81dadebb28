#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "seatplan/io.hpp"

namespace testing {

std::string data_path(std::string const& file) {
  return std::string(SEATPLAN_TEST_DATA_DIR) + "/" + file;
}

Instance data_instance(std::string const& file) {
  return load_instance(data_path(file));
}

Instance tiny() {
  Instance instance;
  instance.name = "TINY";
  instance.rows = {4, 4};
  instance.students = 8;
  instance.conflicts = {{0, 1}};
  instance.front = {0};
  instance.d_min = 2;
  instance.d_min_same_row = 2;
  instance.psi = 4;
  return instance;
}

Instance k4() {
  Instance instance = tiny();
  instance.name = "K4";
  instance.front.clear();
  instance.conflicts = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return instance;
}

Assignment seats(Problem const& problem,
                 std::vector<std::pair<int, Seat>> const& placed) {
  Assignment out(problem.num_students());
  std::vector<bool> used(problem.num_seats(), false);
  for (auto const& [id, seat] : placed) {
    out.seat_of[id - 1] = seat;
    used[problem.seat_index(seat)] = true;
  }
  int next = 0;
  for (auto& seat : out.seat_of) {
    if (seat) {
      continue;
    }
    while (used[next]) {
      ++next;
    }
    used[next] = true;
    seat = problem.seat_at(next);
  }
  return out;
}

Assignment random_assignment(Problem const& problem, Rng& rng) {
  std::vector<int> order(problem.num_seats());
  std::iota(order.begin(), order.end(), 0);
  shuffle(rng, order);
  Assignment out(problem.num_students());
  for (int s = 0; s < problem.num_students(); ++s) {
    out.seat_of[s] = problem.seat_at(order[s]);
  }
  return out;
}

Instance micro_instance(std::uint64_t seed) {
  Rng rng(seed);
  Instance instance;
  instance.name = "micro-" + std::to_string(seed);
  instance.rows = {uniform_int(rng, 4, 5), uniform_int(rng, 4, 5)};
  instance.students = instance.rows[0] + instance.rows[1];
  instance.d_min = 2;
  instance.d_min_same_row = 2;

  std::vector<int> ids(instance.students);
  std::iota(ids.begin(), ids.end(), 0);
  shuffle(rng, ids);
  auto const in_conflict = uniform_int(rng, 3, std::min(7, instance.students));
  std::vector<Edge> pairs;
  for (int a = 0; a < in_conflict; ++a) {
    for (int b = a + 1; b < in_conflict; ++b) {
      pairs.push_back({std::min(ids[a], ids[b]), std::max(ids[a], ids[b])});
    }
  }
  shuffle(rng, pairs);
  auto const edges = uniform_int(rng, 1, std::min<int>(8, pairs.size()));
  instance.conflicts.assign(pairs.begin(), pairs.begin() + edges);
  std::sort(instance.conflicts.begin(), instance.conflicts.end());

  shuffle(rng, ids);
  auto const fronts = uniform_int(rng, 0, 2);
  auto const backs = uniform_int(rng, 0, 2);
  instance.front.assign(ids.begin(), ids.begin() + fronts);
  instance.back.assign(ids.begin() + fronts, ids.begin() + fronts + backs);
  return instance;
}

PlainScore plain_score(Problem const& problem, Assignment const& assignment) {
  PlainScore out;
  auto const& instance = problem.instance();
  auto const at = [&](StudentId s) { return *assignment.seat_of[s]; };
  for (auto s : instance.front) {
    out.violations += at(s).pos > 2;
  }
  for (auto s : instance.back) {
    out.violations += at(s).pos < instance.rows[at(s).row - 1] - 1;
  }
  auto const psi = instance.psi.value_or(
      *std::max_element(instance.rows.begin(), instance.rows.end()));
  auto const same = instance.d_min_same_row.value_or(instance.d_min);
  for (auto const& e : instance.conflicts) {
    auto const a = at(e.i);
    auto const b = at(e.j);
    auto const distance = std::abs(a.pos - b.pos);
    if (a.row == b.row) {
      out.violations += distance < same;
    } else if (std::abs(a.row - b.row) == 1) {
      out.f += distance - psi;
      out.violations += distance < instance.d_min;
    }
  }
  return out;
}

void for_each_assignment(Problem const& problem,
                         std::function<void(Assignment const&)> const& visit) {
  std::vector<int> order(problem.num_seats());
  std::iota(order.begin(), order.end(), 0);
  Assignment current(problem.num_students());
  do {
    for (int s = 0; s < problem.num_students(); ++s) {
      current.seat_of[s] = problem.seat_at(order[s]);
    }
    visit(current);
  } while (std::next_permutation(order.begin(), order.end()));
}

NaiveOptimum naive_optimum(Problem const& problem) {
  NaiveOptimum out;
  out.best_f = std::numeric_limits<Score>::min();
  out.best_penalized = std::numeric_limits<Score>::min();
  auto const edges = static_cast<Score>(problem.instance().conflicts.size());
  auto const phi = std::max<Score>(
      1, 2 * edges * std::abs(problem.d_min() - problem.psi()));
  for_each_assignment(problem, [&](Assignment const& a) {
    ++out.permutations;
    auto const score = plain_score(problem, a);
    out.best_penalized =
        std::max(out.best_penalized, score.f - phi * score.violations);
    if (score.violations == 0) {
      out.feasible = true;
      out.best_f = std::max(out.best_f, score.f);
    }
  });
  return out;
}

}  // namespace testing
