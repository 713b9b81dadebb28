#include <doctest.h>

#include "seatplan/builtin.hpp"
#include "seatplan/constructor.hpp"
#include "seatplan/seating_state.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Instance figure_three() {
  Instance instance;
  instance.name = "figure three";
  instance.rows = {4, 5, 5};
  instance.students = 14;
  instance.conflicts = {{2, 6}, {2, 8}, {2, 12}};
  return instance;
}

void check_row(WeightMatrix const& m, StudentId s,
               std::vector<double> const& expected) {
  REQUIRE(static_cast<int>(expected.size()) == m.size);
  for (int c = 0; c < m.size; ++c) {
    INFO("student " << s + 1 << ", desk " << c + 1);
    CHECK(m.at(s, c) == doctest::Approx(expected[c]));
  }
}

bool relaxed_rule_holds(Problem const& problem, Assignment const& a) {
  for (auto const& e : problem.edges()) {
    auto const& si = a.seat_of[e.i];
    auto const& sj = a.seat_of[e.j];
    if (!si || !sj) {
      continue;
    }
    auto const rows = std::abs(si->row - sj->row);
    auto const distance = std::abs(si->pos - sj->pos);
    if (rows == 0 && distance < problem.d_min_same_row()) {
      return false;
    }
    if (rows == 1 && distance < 2) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("pivot update on the three-row example") {
  Problem const problem(figure_three());
  WeightMatrix m(14, 6.0);
  detail::apply_pivot(m, problem, 2, 1);

  std::vector<double> const rival{12, 12, 12, 5.8, 12, 12, 12,
                                  11.8, 11.7, 0, 0, 0, 0, 0};
  for (StudentId j : {6, 8, 12}) {
    check_row(m, j, rival);
  }
  std::vector<double> pivot_row(14, 12.0);
  pivot_row[1] = 0.0;
  check_row(m, 2, pivot_row);
  std::vector<double> bystander(14, 0.0);
  bystander[1] = 12.0;
  for (StudentId s : {0, 1, 3, 4, 5, 7, 9, 10, 11, 13}) {
    check_row(m, s, bystander);
  }
}

TEST_CASE("weight matrix on TINY with both students locked") {
  Problem const problem(tiny());
  Rng rng(1);
  Locks const locks{{0, {1, 1}}, {1, {2, 4}}};
  auto const m = build_weight_matrix(problem, rng, locks);
  CHECK(m.delta == 5.0);
  CHECK(m.order == std::vector<StudentId>{0, 1});
  // front cells start at -8 * 5 = -40 on desks 1, 2, 5, 6
  check_row(m, 0, {-30.3, -20.2, 20, 20, -25.3, -25.2, 20, 20});
  check_row(m, 1, {20, 20, 14.8, 14.7, 20, 20, 19.8, 9.7});
  for (StudentId s = 2; s < 8; ++s) {
    check_row(m, s, {10, 0, 0, 0, 0, 0, 0, 10});
  }
  auto normalized = m;
  normalized.normalize();
  CHECK(normalized.min() == 0.0);
  CHECK(normalized.at(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("weight matrix without conflicts stays zero") {
  Instance instance = tiny();
  instance.conflicts.clear();
  instance.front.clear();
  Problem const problem(instance);
  Rng rng(4);
  auto const m = build_weight_matrix(problem, rng);
  CHECK(m.order.empty());
  for (auto cell : m.cells) {
    CHECK(cell == 0.0);
  }
}

TEST_CASE("normalized matrices are non-negative with minimum zero") {
  for (auto const& entry : builtin_classrooms()) {
    Problem const problem(entry.instance);
    Rng rng(8);
    auto m = build_weight_matrix(problem, rng);
    m.normalize();
    CHECK(m.min() == 0.0);
    for (auto cell : m.cells) {
      REQUIRE(std::isfinite(cell));
      REQUIRE(cell >= 0.0);
    }
  }
}

TEST_CASE("simulation order") {
  Problem const problem(*builtin_classroom("classroom2"));
  Rng rng(12);
  auto const order = detail::simulation_order(problem, rng);
  int conflict_students = 0;
  for (StudentId s = 0; s < problem.num_students(); ++s) {
    conflict_students += problem.degree(s) > 0;
  }
  CHECK(static_cast<int>(order.size()) == conflict_students);
  for (std::size_t k = 1; k < order.size(); ++k) {
    auto const a = order[k - 1];
    auto const b = order[k];
    REQUIRE(problem.degree(a) >= problem.degree(b));
    if (problem.degree(a) == problem.degree(b)) {
      REQUIRE_FALSE((problem.requirement(a) == Requirement::kNone &&
                     problem.requirement(b) != Requirement::kNone));
    }
  }
}

TEST_CASE("requirements that cannot be met during simulation") {
  Instance instance;
  instance.rows = {4};
  instance.students = 4;
  instance.conflicts = {{0, 1}, {1, 2}};
  instance.front = {0, 1, 2};
  Problem const problem(instance);
  Rng rng(2);
  CHECK_THROWS_AS(build_weight_matrix(problem, rng), ConstructionError);
}

TEST_CASE("partial solution on TINY") {
  Problem const problem(tiny());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    auto const partial =
        construct_partial(problem, build_weight_matrix(problem, rng));
    auto const& s1 = partial.seats.seat_of[0];
    auto const& s2 = partial.seats.seat_of[1];
    REQUIRE(s1.has_value());
    REQUIRE(s2.has_value());
    CHECK(problem.is_front(*s1));
    auto const separated =
        std::abs(s1->row - s2->row) > 1 || std::abs(s1->pos - s2->pos) >= 2;
    CHECK(separated);
    CHECK(partial.unassigned.size() == 6);
  }
}

TEST_CASE("partial solution without conflicts places nobody") {
  Instance instance = tiny();
  instance.conflicts.clear();
  Problem const problem(instance);
  Rng rng(3);
  auto const partial =
      construct_partial(problem, build_weight_matrix(problem, rng));
  CHECK(partial.unassigned.size() == 8);
  for (auto const& seat : partial.seats.seat_of) {
    CHECK_FALSE(seat.has_value());
  }
}

TEST_CASE("K4 leaves a clique member without a seat") {
  Problem const problem(k4());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    auto const partial =
        construct_partial(problem, build_weight_matrix(problem, rng));
    int placed = 0;
    for (StudentId s = 0; s < 4; ++s) {
      placed += partial.seats.seat_of[s].has_value();
    }
    CHECK(placed < 4);
    REQUIRE_FALSE(partial.unassigned.empty());
    CHECK(problem.degree(partial.unassigned.front()) == 3);
  }
}

TEST_CASE("partial placements respect the relaxed separation") {
  std::vector<Problem> problems;
  for (auto const& entry : builtin_classrooms()) {
    problems.emplace_back(entry.instance);
  }
  for (std::uint64_t s = 1; s <= 10; ++s) {
    problems.emplace_back(micro_instance(s));
  }
  for (auto const& problem : problems) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Rng rng(seed);
      try {
        auto const partial =
            construct_partial(problem, build_weight_matrix(problem, rng));
        CHECK(relaxed_rule_holds(problem, partial.seats));
        CHECK(partial.seats.injective());
      } catch (ConstructionError const&) {
      }
    }
  }
}

TEST_CASE("partial swaps") {
  Instance instance = tiny();
  instance.front.clear();
  Problem const problem(instance);

  SUBCASE("one gamma violation is resolved") {
    PartialSolution partial;
    partial.seats = Assignment(8);
    partial.seats.seat_of[0] = Seat{1, 1};
    partial.seats.seat_of[1] = Seat{1, 2};
    partial.pinned.assign(8, false);
    CHECK(SeatingState(problem, partial.seats).penalized() ==
          -problem.phi());
    auto const better = improve_partial_swaps(problem, partial);
    SeatingState after(problem, better.seats);
    CHECK(after.penalized() == 0);
    CHECK(after.counts().gamma == 0);
  }
  SUBCASE("a local optimum is a fixed point") {
    PartialSolution partial;
    partial.seats = Assignment(8);
    partial.seats.seat_of[0] = Seat{1, 1};
    partial.seats.seat_of[1] = Seat{1, 4};
    partial.pinned.assign(8, false);
    CHECK(improve_partial_swaps(problem, partial).seats == partial.seats);
  }
  SUBCASE("empty partial") {
    PartialSolution partial;
    partial.seats = Assignment(8);
    partial.pinned.assign(8, false);
    CHECK(improve_partial_swaps(problem, partial).seats == partial.seats);
  }
  SUBCASE("pinned students stay") {
    PartialSolution partial;
    partial.seats = Assignment(8);
    partial.seats.seat_of[0] = Seat{1, 1};
    partial.seats.seat_of[1] = Seat{1, 2};
    partial.pinned.assign(8, false);
    partial.pinned[0] = partial.pinned[1] = true;
    CHECK(improve_partial_swaps(problem, partial).seats == partial.seats);
  }
}

TEST_CASE("monotone partial swaps on constructed partials") {
  for (auto const& entry : builtin_classrooms()) {
    Problem const problem(entry.instance);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Rng rng(seed);
      auto const partial =
          construct_partial(problem, build_weight_matrix(problem, rng));
      auto const improved = improve_partial_swaps(problem, partial);
      CHECK(SeatingState(problem, improved.seats).penalized() >=
            SeatingState(problem, partial.seats).penalized());
    }
  }
}

TEST_CASE("initial solutions") {
  SUBCASE("TINY reaches the optimum") {
    Problem const problem(tiny());
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed);
      auto const a = initial_solution(problem, rng);
      REQUIRE(a.total());
      REQUIRE(a.injective());
      CHECK(penalized_objective(problem, a) == 0);
    }
  }
  SUBCASE("no conflicts, no requirements") {
    Instance instance = tiny();
    instance.conflicts.clear();
    instance.front.clear();
    Problem const problem(instance);
    Rng rng(5);
    CHECK(penalized_objective(problem, initial_solution(problem, rng)) == 0);
  }
  SUBCASE("K4 stays infeasible") {
    Problem const problem(k4());
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Rng rng(seed);
      auto const a = initial_solution(problem, rng);
      REQUIRE(a.total());
      CHECK(violations(problem, a).total() >= 1);
      CHECK(penalized_objective(problem, a) < objective(problem, a));
    }
  }
  SUBCASE("single row without conflicts") {
    Instance instance;
    instance.rows = {8};
    instance.students = 8;
    Problem const problem(instance);
    Rng rng(6);
    CHECK(is_feasible(problem, initial_solution(problem, rng)));
  }
  SUBCASE("always a permutation") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
      Problem const problem(micro_instance(s));
      Rng rng(s);
      auto const a = initial_solution(problem, rng);
      CHECK(a.total());
      CHECK(a.injective());
    }
    for (auto const& entry : builtin_classrooms()) {
      Problem const problem(entry.instance);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        auto const a = initial_solution(problem, rng);
        CHECK(a.total());
        CHECK(a.injective());
      }
    }
  }
  SUBCASE("locks are honoured") {
    Problem const problem(*builtin_classroom("classroom1"));
    Locks const locks{{4, {3, 3}}, {20, {7, 4}}};
    Rng rng(9);
    auto const a = initial_solution(problem, rng, locks);
    CHECK(a.seat_of[4] == Seat{3, 3});
    CHECK(a.seat_of[20] == Seat{7, 4});
  }
}

TEST_CASE("lock validation") {
  Problem const problem(tiny());
  CHECK_NOTHROW(validate_locks(problem, {{0, {1, 1}}}));
  CHECK_THROWS_AS(validate_locks(problem, {{0, {1, 1}}, {1, {1, 1}}}),
                  InvalidLocks);
  CHECK_THROWS_AS(validate_locks(problem, {{0, {1, 1}}, {0, {1, 2}}}),
                  InvalidLocks);
  CHECK_THROWS_AS(validate_locks(problem, {{9, {1, 1}}}), InvalidLocks);
  CHECK_THROWS_AS(validate_locks(problem, {{0, {3, 1}}}), InvalidLocks);
  CHECK_THROWS_AS(validate_locks(problem, {{0, {1, 5}}}), InvalidLocks);
}

TEST_CASE("weight matrix CSV dump") {
  Problem const problem(figure_three());
  WeightMatrix m(14, 6.0);
  detail::apply_pivot(m, problem, 2, 1);
  auto const csv = m.to_csv();
  CHECK(csv.rfind("student,d1,d2,", 0) == 0);
  CHECK(csv.find("\n7,12.0,12.0,12.0,5.8,12.0,12.0,12.0,11.8,11.7,0.0") !=
        std::string::npos);
}
