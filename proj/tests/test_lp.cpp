#include <doctest.h>

#include <sstream>

#include "seatplan/builtin.hpp"
#include "seatplan/lp.hpp"
#include "seatplan/oracle.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Counts {
  std::size_t x = 0;
  std::size_t w = 0;
  std::size_t same_row = 0;
  std::size_t constraints = 0;
};

Counts expected_counts(Instance const& instance) {
  Counts out;
  std::size_t seats = 0;
  std::size_t consecutive = 0;
  std::size_t row_pairs = 0;
  for (std::size_t l = 0; l < instance.rows.size(); ++l) {
    std::size_t const n = instance.rows[l];
    seats += n;
    row_pairs += n * (n - 1) / 2;
    if (l + 1 < instance.rows.size()) {
      consecutive += n * instance.rows[l + 1];
    }
  }
  auto const edges = instance.conflicts.size();
  out.x = instance.students * seats;
  out.w = 2 * edges * consecutive;
  out.same_row = 2 * edges * row_pairs;
  out.constraints = instance.students + seats + out.same_row + 5 * out.w +
                    instance.front.size() + instance.back.size();
  return out;
}

std::size_t named(LpModel const& model, std::string const& prefix) {
  std::size_t out = 0;
  for (auto const& c : model.constraints) {
    out += c.name.rfind(prefix, 0) == 0;
  }
  return out;
}

void check_counts(Instance const& instance) {
  auto const model = build_lp(Problem(instance));
  auto const expected = expected_counts(instance);
  CHECK(model.count_prefix("x_") == expected.x);
  CHECK(model.count_prefix("w_") == expected.w);
  CHECK(model.binaries.size() == expected.x + expected.w);
  CHECK(model.constraints.size() == expected.constraints);
  CHECK(named(model, "row_") == expected.same_row);
  CHECK(named(model, "link_") == expected.w);
  CHECK(named(model, "dmin_") == expected.w);
  CHECK(model.objective.size() == expected.w);
}

bool same_terms(std::vector<LpTerm> const& a, std::vector<LpTerm> const& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].var != b[k].var || a[k].coef != b[k].coef) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("variable names") {
  CHECK(x_name(0, 1, 1) == "x_1_1_1");
  CHECK(x_name(32, 7, 4) == "x_33_7_4");
  CHECK(w_name(1, 0, 1, 4, 3) == "w_2_1_1_4_3");
}

TEST_CASE("TINY model size") {
  auto const model = build_lp(Problem(tiny()));
  CHECK(model.count_prefix("x_") == 64);
  CHECK(model.count_prefix("w_") == 32);
  CHECK(model.constraints.size() == 201);
  CHECK(model.maximize);
}

TEST_CASE("closed-form counts") {
  check_counts(tiny());
  check_counts(k4());
  for (auto const& entry : builtin_classrooms()) {
    check_counts(entry.instance);
  }
  for (std::uint64_t s = 1; s <= 10; ++s) {
    check_counts(micro_instance(s));
  }
  auto const one = *builtin_classroom("classroom1");
  auto const model = build_lp(Problem(one));
  CHECK(model.count_prefix("x_") == 33u * 33u);
  CHECK(model.count_prefix("w_") ==
        2u * 32u * (4 * 4 + 4 * 5 + 5 * 6 + 6 * 4 + 4 * 6 + 6 * 4));

  Instance empty = tiny();
  empty.conflicts.clear();
  CHECK(build_lp(Problem(empty)).count_prefix("w_") == 0);
}

TEST_CASE("only real students get variables") {
  Instance instance = tiny();
  instance.students = 6;
  auto const model = build_lp(Problem(instance));
  CHECK(model.count_prefix("x_") == 6u * 8u);
  CHECK(named(model, "assign_") == 6);
  CHECK(named(model, "seat_") == 8);
}

TEST_CASE("LP text round-trips") {
  for (auto const& instance : {tiny(), k4(), micro_instance(3),
                               *builtin_classroom("classroom3")}) {
    auto const model = build_lp(Problem(instance));
    auto const text = write_lp(model);
    CHECK(text.rfind("\\ seating model: ", 0) == 0);
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("Binary") != std::string::npos);
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      REQUIRE(line.size() <= 78);
    }

    auto const back = parse_lp(text);
    CHECK(back.title == model.title);
    CHECK(back.maximize == model.maximize);
    CHECK(back.binaries == model.binaries);
    CHECK(same_terms(back.objective, model.objective));
    REQUIRE(back.constraints.size() == model.constraints.size());
    for (std::size_t k = 0; k < model.constraints.size(); ++k) {
      auto const& a = model.constraints[k];
      auto const& b = back.constraints[k];
      REQUIRE(a.name == b.name);
      CHECK(a.sense == b.sense);
      CHECK(a.rhs == b.rhs);
      CHECK(same_terms(a.terms, b.terms));
    }
    CHECK(write_lp(back) == text);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_lp("Maximize\n obj: x +\nSubject To\n c1: x <=\nEnd\n"),
                  LpParseError);
  CHECK_THROWS_AS(parse_lp("Subject To\n c1: 2 x ?? 3\nEnd\n"), LpParseError);
}

TEST_CASE("model values of a seating") {
  Problem const problem(tiny());
  auto const a = seats(problem, {{1, {1, 1}}, {2, {2, 3}}});
  auto const values = lp_values(problem, a);
  CHECK(values.at("x_1_1_1") == 1.0);
  CHECK(values.at("x_2_2_3") == 1.0);
  CHECK(values.at("w_1_2_1_1_3") == 1.0);
  auto const model = build_lp(problem);
  CHECK(lp_objective(model, values) == -2.0);
  CHECK(violated_constraints(model, values).empty());

  auto const close = seats(problem, {{1, {1, 2}}, {2, {2, 3}}});
  auto const broken = violated_constraints(model, lp_values(problem, close));
  REQUIRE(broken.size() == 1);
  CHECK(broken.front() == "dmin_1_2_1_2_3");

  auto const far = seats(problem, {{1, {1, 4}}, {2, {1, 1}}});
  auto const missing = violated_constraints(model, lp_values(problem, far));
  REQUIRE(missing.size() == 1);
  CHECK(missing.front() == "front_1");
}

TEST_CASE("constraints agree with the feasibility check on every seating") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    auto const instance = micro_instance(seed);
    if (instance.students > 8) {
      continue;
    }
    Problem const problem(instance);
    auto const model = build_lp(problem);
    CompiledLp const compiled(model);
    std::int64_t mismatches = 0;
    std::int64_t objective_mismatches = 0;
    for_each_assignment(problem, [&](Assignment const& a) {
      auto const values = lp_values(problem, a);
      auto const feasible = plain_score(problem, a).violations == 0;
      mismatches += feasible != (compiled.count_violated(values) == 0);
      if (feasible) {
        objective_mismatches +=
            lp_objective(model, values) != double(plain_score(problem, a).f);
      }
    });
    INFO("seed " << seed);
    CHECK(mismatches == 0);
    CHECK(objective_mismatches == 0);
  }
}

TEST_CASE("compiled and plain evaluators agree") {
  Problem const problem(*builtin_classroom("classroom1"));
  auto const model = build_lp(problem);
  CompiledLp const compiled(model);
  CHECK(compiled.num_variables() == model.binaries.size());
  Rng rng(5);
  for (int n = 0; n < 5; ++n) {
    auto const values = lp_values(problem, random_assignment(problem, rng));
    CHECK(compiled.violated(values) == violated_constraints(model, values));
  }
  auto const optimum = brute_force(Problem(tiny()));
  CHECK(CompiledLp(build_lp(Problem(tiny())))
            .count_violated(lp_values(Problem(tiny()), optimum.witness)) == 0);
}
