#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "seatplan/builtin.hpp"
#include "seatplan/io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

std::vector<int> ids(std::vector<StudentId> internal) {
  for (auto& s : internal) {
    s += 1;
  }
  std::sort(internal.begin(), internal.end());
  return internal;
}

std::filesystem::path scratch(std::string const& name) {
  auto dir = std::filesystem::temp_directory_path() / "seatplan_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("builtin classrooms match the published tables") {
  auto const& all = builtin_classrooms();
  REQUIRE(all.size() == 3);

  auto const one = *builtin_classroom("classroom1");
  CHECK(one.students == 33);
  CHECK(one.conflicts.size() == 32);
  CHECK(one.rows == std::vector<int>{4, 4, 5, 6, 4, 6, 4});
  CHECK(ids(one.front) == std::vector<int>{5, 6, 8, 10, 15, 16, 19, 20, 29});
  CHECK(ids(one.back) == std::vector<int>{21, 23});

  auto const two = *builtin_classroom("classroom2");
  CHECK(two.students == 32);
  CHECK(two.conflicts.size() == 88);
  CHECK(two.rows == std::vector<int>{4, 4, 5, 5, 5, 5, 4});
  CHECK(ids(two.front) == std::vector<int>{1, 4, 6, 18, 19, 23, 25, 31});
  CHECK(ids(two.back) == std::vector<int>{5, 10, 13, 22, 26, 27, 28, 29});

  auto const three = *builtin_classroom("classroom3");
  CHECK(three.students == 31);
  CHECK(three.conflicts.size() == 53);
  CHECK(three.rows == std::vector<int>{5, 5, 5, 5, 5, 6});
  CHECK(ids(three.front) == std::vector<int>{2, 4, 7, 21});
  CHECK(ids(three.back) == std::vector<int>{3, 27});

  for (auto const& entry : all) {
    CHECK(validate_instance(entry.instance).valid());
    CHECK(load_instance(data_path(entry.key + ".json")).conflicts ==
          entry.instance.conflicts);
  }
  CHECK_FALSE(builtin_classroom("classroom4").has_value());
}

TEST_CASE("instance files round-trip") {
  for (auto const& entry : builtin_classrooms()) {
    auto const path = scratch(entry.key + ".json");
    save_instance(entry.instance, path);
    auto const back = load_instance(path);
    CHECK(back.rows == entry.instance.rows);
    CHECK(back.students == entry.instance.students);
    CHECK(back.conflicts == entry.instance.conflicts);
    CHECK(back.front == entry.instance.front);
    CHECK(back.back == entry.instance.back);
    CHECK(back.d_min == entry.instance.d_min);
    CHECK(instance_to_json(back) == instance_to_json(entry.instance));
  }
  auto const tiny_file = data_instance("tiny.json");
  CHECK(tiny_file.conflicts == tiny().conflicts);
  CHECK(tiny_file.front == tiny().front);
  CHECK(tiny_file.psi == tiny().psi);
  CHECK(data_instance("k4.json").conflicts == k4().conflicts);
}

TEST_CASE("empty conflict list is a valid instance") {
  auto const instance = instance_from_json(json::parse(
      R"({"rows": [4, 4], "students": 8, "conflicts": [], "d_min": 2})"));
  CHECK(instance.conflicts.empty());
  CHECK(validate_instance(instance).valid());
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(instance_from_json(json::parse("[1, 2]")), FormatError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"students": 8})")),
                  FormatError);
  CHECK_THROWS_AS(
      instance_from_json(json::parse(
          R"({"rows": [4, 4], "students": 8, "conflicts": [[1]]})")),
      FormatError);
  CHECK_THROWS_AS(
      instance_from_json(json::parse(
          R"({"rows": [4, "x"], "students": 8})")),
      FormatError);
  CHECK_THROWS_AS(load_instance(data_path("does_not_exist.json")), IoError);

  auto const bad = scratch("bad.json");
  write_file(bad, "{ not json");
  CHECK_THROWS_AS(load_instance(bad), FormatError);
}

TEST_CASE("assignment JSON") {
  Problem const problem(tiny());
  auto const a = seats(problem, {{1, {1, 1}}, {2, {2, 3}}});
  auto const doc = assignment_to_json(problem, a);
  CHECK(doc["seats"]["1"] == json::array({1, 1}));
  CHECK(doc["seats"]["2"] == json::array({2, 3}));
  CHECK(doc["seats"].size() == 8);
  CHECK(assignment_from_json(problem, doc) == a);

  Instance padded = tiny();
  padded.students = 6;
  Problem const small(padded);
  auto const partial = assignment_from_json(
      small, json::parse(R"({"seats": {"1": [2, 4], "2": [1, 1]}})"));
  CHECK_FALSE(partial.seat_of[2].has_value());
  CHECK(partial.seat_of[6] == Seat{1, 2});
  CHECK(partial.seat_of[7] == Seat{1, 3});
  CHECK(assignment_to_json(small, partial)["seats"].size() == 2);

  CHECK_THROWS_AS(assignment_from_json(
                      problem, json::parse(R"({"seats": {"9": [1, 1]}})")),
                  FormatError);
  CHECK_THROWS_AS(assignment_from_json(
                      problem, json::parse(R"({"seats": {"1": [1]}})")),
                  FormatError);
}

TEST_CASE("evaluation JSON agrees with the model") {
  Problem const problem(tiny());
  auto const a = seats(problem, {{1, {1, 3}}, {2, {2, 2}}});
  auto const doc = evaluation_to_json(problem, a);
  CHECK(doc["f"] == objective(problem, a));
  CHECK(doc["f_p"] == penalized_objective(problem, a));
  CHECK(doc["feasible"] == false);
  CHECK(doc["violations"]["alpha"] == 1);
  CHECK(doc["violations"]["delta"] == 1);
  REQUIRE(doc["active_edges"].size() == 1);
  CHECK(doc["active_edges"][0]["i"] == 1);
  CHECK(doc["active_edges"][0]["j"] == 2);
  CHECK(doc["active_edges"][0]["distance"] == 1);
}

TEST_CASE("seat chart") {
  Problem const problem(tiny());
  auto const a = seats(problem, {{1, {1, 1}}, {2, {2, 3}}});
  CHECK(seat_chart(problem, a) ==
        "row 1 |  1  3  4  5\n"
        "row 2 |  6  7  2  8\n");

  Problem const classroom(*builtin_classroom("classroom1"));
  Rng rng(1);
  auto const chart = seat_chart(classroom, random_assignment(classroom, rng));
  CHECK(std::count(chart.begin(), chart.end(), '\n') == 7);
}
