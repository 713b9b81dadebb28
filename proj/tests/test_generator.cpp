#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "seatplan/generator.hpp"
#include "seatplan/io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

void check_generated(GenConfig const& config, Instance const& instance) {
  auto const v = conflict_vertex_count(config.n, config.conflict_student_pct);
  auto const m = conflict_edge_count(v, config.conflict_edge_pct);
  CHECK(instance.students == config.n);
  CHECK(static_cast<int>(instance.conflicts.size()) == m);

  std::set<std::pair<int, int>> seen;
  std::map<int, int> degree;
  for (auto const& e : instance.conflicts) {
    CHECK(e.i != e.j);
    CHECK(seen.insert({std::min(e.i, e.j), std::max(e.i, e.j)}).second);
    ++degree[e.i];
    ++degree[e.j];
  }
  CHECK(static_cast<int>(degree.size()) == v);
  for (auto const& [student, d] : degree) {
    CHECK(d >= 1);
  }

  CHECK(std::accumulate(instance.rows.begin(), instance.rows.end(), 0) ==
        config.n);
  for (auto r : instance.rows) {
    CHECK(r >= config.min_desks_per_row);
  }
  auto const count = static_cast<int>(instance.rows.size());
  CHECK(std::find(config.rows_choices.begin(), config.rows_choices.end(),
                  count) != config.rows_choices.end());

  auto const fronts = static_cast<int>(instance.front.size());
  auto const backs = static_cast<int>(instance.back.size());
  CHECK(fronts >= ceil_fraction(config.n, config.front_min));
  CHECK(fronts <= config.n * config.front_max + 1e-9);
  CHECK(backs >= ceil_fraction(config.n, config.back_min));
  CHECK(backs <= config.n * config.back_max + 1e-9);
  std::set<int> front(instance.front.begin(), instance.front.end());
  CHECK(static_cast<int>(front.size()) == fronts);
  for (auto b : instance.back) {
    CHECK_FALSE(front.count(b));
  }
  CHECK(validate_instance(instance).valid());
  CHECK(instance.psi ==
        *std::max_element(instance.rows.begin(), instance.rows.end()));
}

}  // namespace

TEST_CASE("vertex and edge counts") {
  CHECK(conflict_vertex_count(30, 0.35) == 11);
  CHECK(conflict_edge_count(11, 0.30) == 17);
  CHECK(conflict_vertex_count(40, 0.85) == 34);
  CHECK(conflict_edge_count(34, 0.50) == 281);
  CHECK(conflict_vertex_count(10, 0.25) == 3);
  CHECK(conflict_edge_count(2, 0.5) == 1);
}

TEST_CASE("default configuration draws valid instances") {
  GenConfig config;
  config.seed = 17;
  auto const out = generate(config);
  REQUIRE(out.size() == 5);
  for (auto const& g : out) {
    CHECK(g.instance.conflicts.size() == 17);
    check_generated(config, g.instance);
  }
  CHECK(out[0].instance.name == "n30_s35_e30_r1");
  CHECK(out[4].replicate == 4);
}

TEST_CASE("seven rows of thirty desks leave two surplus seats") {
  GenConfig config;
  config.rows_choices = {7};
  config.replicates = 10;
  for (auto const& g : generate(config)) {
    REQUIRE(g.instance.rows.size() == 7);
    int surplus = 0;
    for (auto r : g.instance.rows) {
      CHECK(r >= 4);
      surplus += r - 4;
    }
    CHECK(surplus == 2);
  }
}

TEST_CASE("invariants over many configurations") {
  for (int n : {30, 35, 40}) {
    for (double s : {0.35, 0.55, 0.85}) {
      for (double e : {0.30, 0.50}) {
        GenConfig config;
        config.n = n;
        config.conflict_student_pct = s;
        config.conflict_edge_pct = e;
        config.replicates = 2;
        config.seed = static_cast<std::uint64_t>(n * 100 + s * 10 + e);
        for (auto const& g : generate(config)) {
          INFO("n " << n << " s " << s << " e " << e);
          check_generated(config, g.instance);
        }
      }
    }
  }
}

TEST_CASE("fixed seed gives identical bytes") {
  GenConfig config;
  config.n = 35;
  config.conflict_student_pct = 0.55;
  config.seed = 99;
  auto const a = generate(config);
  auto const b = generate(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(instance_to_json(a[k].instance).dump() ==
          instance_to_json(b[k].instance).dump());
    CHECK(a[k].seed == b[k].seed);
  }
  config.seed = 100;
  CHECK(instance_to_json(generate(config)[0].instance).dump() !=
        instance_to_json(a[0].instance).dump());
}

TEST_CASE("configuration validation") {
  GenConfig config;
  CHECK_NOTHROW(config.validate());

  auto bad = config;
  bad.conflict_student_pct = 0;
  CHECK_THROWS_WITH_AS(bad.validate(),
                       "conflict_student_pct out of range (0,1]",
                       std::invalid_argument);
  bad = config;
  bad.conflict_edge_pct = 1.5;
  CHECK_THROWS_WITH_AS(bad.validate(), "conflict_edge_pct out of range (0,1]",
                       std::invalid_argument);
  bad = config;
  bad.n = 12;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.front_min = 0.5;
  bad.front_max = 0.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.replicates = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.d_min = 1;
  CHECK_THROWS_WITH_AS(bad.validate(), "d_min below 2", std::invalid_argument);
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("generation failure carries the seed") {
  GenerationError const error("no feasible instance found", 42);
  CHECK(error.seed() == 42);
  CHECK(std::string(error.what()) == "no feasible instance found (seed 42)");

  GenConfig config;
  config.n = 10;
  config.rows_choices = {2};
  config.min_desks_per_row = 5;
  config.conflict_student_pct = 1.0;
  config.conflict_edge_pct = 1.0;
  config.max_attempts = 3;
  config.replicates = 1;
  CHECK_THROWS_AS(generate(config), GenerationError);
}

TEST_CASE("screening") {
  auto const tiny_screen = screen(tiny());
  CHECK(tiny_screen.feasible);
  CHECK(tiny_screen.exact);

  auto const k4_screen = screen(k4());
  CHECK_FALSE(k4_screen.feasible);
  CHECK(k4_screen.exact);

  Instance crowded;
  crowded.rows = {5, 5, 5};
  crowded.students = 15;
  crowded.d_min = 2;
  crowded.front = {0, 1, 2, 3, 4, 5, 6};
  auto const front_screen = screen(crowded);
  CHECK_FALSE(front_screen.feasible);
  CHECK_FALSE(front_screen.exact);
  CHECK(front_screen.reason == "more front students than front desks");

  crowded.front.clear();
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      crowded.conflicts.push_back({i, j});
    }
  }
  CHECK(screen(crowded).reason ==
        "conflict clique larger than the separated desks");
  crowded.conflicts.resize(9 * 8 / 2);
  CHECK(screen(crowded).feasible);
}

TEST_CASE("benchmark family layout") {
  auto const configs = family_configs(7);
  REQUIRE(configs.size() == 27);
  CHECK(configs.front().n == 30);
  CHECK(configs.front().conflict_student_pct == 0.35);
  CHECK(configs.front().conflict_edge_pct == 0.30);
  CHECK(configs[1].conflict_edge_pct == 0.40);
  CHECK(configs[3].conflict_student_pct == 0.55);
  CHECK(configs[9].n == 35);
  CHECK(configs.back().n == 40);
  CHECK(configs.back().conflict_student_pct == 0.85);
  CHECK(configs.back().conflict_edge_pct == 0.50);
  std::set<std::uint64_t> seeds;
  for (auto const& c : configs) {
    CHECK(c.replicates == 5);
    seeds.insert(c.seed);
  }
  CHECK(seeds.size() == 27);

  auto const family = generate_family(7, 1);
  REQUIRE(family.size() == 27);
  for (std::size_t k = 0; k < family.size(); ++k) {
    CHECK(family[k].id == static_cast<int>(k) + 1);
    check_generated(family[k].config, family[k].generated.instance);
  }

  auto const csv = family_index_csv(family);
  CHECK(csv.rfind("id,n,pct_students,pct_edges,rows,seed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 28);
  CHECK(csv.find("\n1,30,0.35,0.3,") != std::string::npos);

  auto const dir = std::filesystem::temp_directory_path() / "seatplan_family";
  std::filesystem::remove_all(dir);
  write_family(family, dir);
  CHECK(read_file(dir / "index.csv") == csv);
  for (auto const& entry : family) {
    auto const path = dir / ("instance_" + std::to_string(entry.id) + ".json");
    REQUIRE(std::filesystem::exists(path));
    CHECK(instance_to_json(load_instance(path)).dump() ==
          instance_to_json(entry.generated.instance).dump());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("full family has 135 instances") {
  auto const family = generate_family(3);
  CHECK(family.size() == 135);
  CHECK(family.back().id == 135);
  CHECK(family[4].config.n == 30);
  CHECK(family[5].config.conflict_edge_pct == 0.40);
}
