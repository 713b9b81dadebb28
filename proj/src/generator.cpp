#include "seatplan/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "seatplan/io.hpp"
#include "seatplan/oracle.hpp"
#include "seatplan/random.hpp"

namespace seatplan {

namespace {

int round_half_up(double x) {
  return static_cast<int>(std::floor(x + 0.5 + 1e-9));
}

int floor_fraction(int count, double fraction) {
  return static_cast<int>(std::floor(count * fraction + 1e-9));
}

bool in_unit(double x) { return x > 0.0 && x <= 1.0; }

}  // namespace

void GenConfig::validate() const {
  if (n < 1) {
    throw std::invalid_argument("n must be positive");
  }
  if (!in_unit(conflict_student_pct)) {
    throw std::invalid_argument("conflict_student_pct out of range (0,1]");
  }
  if (!in_unit(conflict_edge_pct)) {
    throw std::invalid_argument("conflict_edge_pct out of range (0,1]");
  }
  if (min_desks_per_row < 1) {
    throw std::invalid_argument("min_desks_per_row must be positive");
  }
  if (rows_choices.empty() ||
      std::none_of(rows_choices.begin(), rows_choices.end(), [&](int r) {
        return r >= 1 && r * min_desks_per_row <= n;
      })) {
    throw std::invalid_argument("no row count fits " + std::to_string(n) +
                                " desks");
  }
  if (front_min < 0 || front_max > 1 || front_min > front_max) {
    throw std::invalid_argument("front range must satisfy 0 <= min <= max <= 1");
  }
  if (back_min < 0 || back_max > 1 || back_min > back_max) {
    throw std::invalid_argument("back range must satisfy 0 <= min <= max <= 1");
  }
  if (ceil_fraction(n, front_min) > floor_fraction(n, front_max)) {
    throw std::invalid_argument("front range holds no whole student count");
  }
  if (ceil_fraction(n, back_min) > floor_fraction(n, back_max)) {
    throw std::invalid_argument("back range holds no whole student count");
  }
  if (replicates < 1) {
    throw std::invalid_argument("replicates must be at least 1");
  }
  if (d_min < 2) {
    throw std::invalid_argument("d_min below 2");
  }
  if (max_attempts < 1) {
    throw std::invalid_argument("max_attempts must be at least 1");
  }
  auto const v = conflict_vertex_count(n, conflict_student_pct);
  auto const m = conflict_edge_count(v, conflict_edge_pct);
  if (v < 2 || 2 * m < v) {
    throw std::invalid_argument(
        "too few conflict edges to give every conflict vertex a neighbour");
  }
}

int conflict_vertex_count(int n, double fraction) {
  return round_half_up(n * fraction);
}

int conflict_edge_count(int vertices, double fraction) {
  return round_half_up(fraction * vertices * (vertices - 1) / 2.0);
}

namespace {

// Uniform graph with exactly m edges on `vertices`, redrawn until no vertex
// is isolated.
std::vector<Edge> draw_graph(std::vector<StudentId> const& vertices, int m,
                             Rng& rng, int attempts, std::uint64_t seed) {
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      pairs.push_back({std::min(vertices[a], vertices[b]),
                       std::max(vertices[a], vertices[b])});
    }
  }
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // Partial Fisher-Yates: the first m slots are a uniform m-subset.
    for (int k = 0; k < m; ++k) {
      auto const r = uniform_int(rng, k, static_cast<int>(pairs.size()) - 1);
      std::swap(pairs[k], pairs[r]);
    }
    std::vector<Edge> edges(pairs.begin(), pairs.begin() + m);
    std::vector<int> degree(*std::max_element(vertices.begin(),
                                              vertices.end()) + 1,
                            0);
    for (auto const& e : edges) {
      ++degree[e.i];
      ++degree[e.j];
    }
    if (std::all_of(vertices.begin(), vertices.end(),
                    [&](StudentId s) { return degree[s] > 0; })) {
      std::sort(edges.begin(), edges.end());
      return edges;
    }
  }
  throw GenerationError("conflict graph resample limit exceeded", seed);
}

std::vector<int> draw_rows(GenConfig const& config, Rng& rng) {
  std::vector<int> allowed;
  for (auto r : config.rows_choices) {
    if (r >= 1 && r * config.min_desks_per_row <= config.n) {
      allowed.push_back(r);
    }
  }
  auto const count = pick(rng, allowed);
  std::vector<int> rows(count, config.min_desks_per_row);
  for (int extra = config.n - count * config.min_desks_per_row; extra > 0;
       --extra) {
    ++rows[uniform_int(rng, 0, count - 1)];
  }
  return rows;
}

int greedy_clique(Problem const& problem) {
  int best = 0;
  for (StudentId start = 0; start < problem.num_students(); ++start) {
    if (problem.degree(start) == 0) {
      continue;
    }
    std::vector<StudentId> clique{start};
    auto candidates = problem.neighbors(start);
    std::sort(candidates.begin(), candidates.end(), [&](auto a, auto b) {
      return problem.degree(a) > problem.degree(b) ||
             (problem.degree(a) == problem.degree(b) && a < b);
    });
    for (auto c : candidates) {
      if (std::all_of(clique.begin(), clique.end(), [&](StudentId m) {
            return problem.in_conflict(c, m);
          })) {
        clique.push_back(c);
      }
    }
    best = std::max(best, static_cast<int>(clique.size()));
  }
  return best;
}

}  // namespace

Screening screen(Instance const& instance, int exact_limit) {
  Problem const problem(instance);
  if (problem.num_seats() <= exact_limit) {
    auto const result = brute_force(problem);
    if (result.status == OracleStatus::kBudgetExceeded) {
      return {true, false, "oracle budget exhausted"};
    }
    return {result.status == OracleStatus::kOptimal, true,
            result.status == OracleStatus::kOptimal
                ? ""
                : "oracle proved the instance infeasible"};
  }

  int front_seats = 0;
  int back_seats = 0;
  int either = 0;
  int separated = 0;
  for (int row = 1; row <= problem.num_rows(); ++row) {
    auto const size = problem.row_size(row);
    int f = 0;
    int b = 0;
    int u = 0;
    for (int pos = 1; pos <= size; ++pos) {
      f += problem.is_front({row, pos});
      b += problem.is_back({row, pos});
      u += problem.is_front({row, pos}) || problem.is_back({row, pos});
    }
    front_seats += f;
    back_seats += b;
    either += u;
    separated += (size - 1) / problem.d_min_same_row() + 1;
  }
  auto const fronts = static_cast<int>(instance.front.size());
  auto const backs = static_cast<int>(instance.back.size());
  if (fronts > front_seats) {
    return {false, false, "more front students than front desks"};
  }
  if (backs > back_seats) {
    return {false, false, "more back students than back desks"};
  }
  if (fronts + backs > either) {
    return {false, false, "front and back students exceed their desks"};
  }
  if (greedy_clique(problem) > separated) {
    return {false, false, "conflict clique larger than the separated desks"};
  }
  return {true, false, ""};
}

std::optional<Instance> generate_one(GenConfig const& config,
                                     std::uint64_t seed) {
  Rng rng(seed);
  Instance instance;
  instance.students = config.n;
  instance.d_min = config.d_min;
  instance.d_min_same_row = config.d_min;
  instance.rows = draw_rows(config, rng);
  instance.psi = *std::max_element(instance.rows.begin(), instance.rows.end());

  std::vector<StudentId> students(config.n);
  std::iota(students.begin(), students.end(), 0);

  auto pool = students;
  shuffle(rng, pool);
  std::vector<StudentId> vertices(
      pool.begin(),
      pool.begin() + conflict_vertex_count(config.n, config.conflict_student_pct));
  std::sort(vertices.begin(), vertices.end());
  instance.conflicts = draw_graph(
      vertices,
      conflict_edge_count(static_cast<int>(vertices.size()),
                          config.conflict_edge_pct),
      rng, config.max_attempts, seed);

  auto const fronts = uniform_int(rng, ceil_fraction(config.n, config.front_min),
                                  floor_fraction(config.n, config.front_max));
  auto const backs = uniform_int(rng, ceil_fraction(config.n, config.back_min),
                                 floor_fraction(config.n, config.back_max));
  pool = students;
  shuffle(rng, pool);
  instance.front.assign(pool.begin(), pool.begin() + fronts);
  instance.back.assign(pool.begin() + fronts, pool.begin() + fronts + backs);
  std::sort(instance.front.begin(), instance.front.end());
  std::sort(instance.back.begin(), instance.back.end());

  if (!validate_instance(instance).valid() || !screen(instance).feasible) {
    return std::nullopt;
  }
  return instance;
}

std::vector<GeneratedInstance> generate(GenConfig const& config) {
  config.validate();
  std::vector<GeneratedInstance> out;
  for (int replicate = 0; replicate < config.replicates; ++replicate) {
    std::optional<Instance> instance;
    std::uint64_t seed = 0;
    for (int attempt = 0; attempt < config.max_attempts && !instance;
         ++attempt) {
      seed = derive_seed(config.seed, static_cast<std::uint64_t>(replicate),
                         static_cast<std::uint64_t>(attempt));
      instance = generate_one(config, seed);
    }
    if (!instance) {
      throw GenerationError("no feasible instance found", seed);
    }
    std::ostringstream name;
    name << "n" << config.n << "_s" << round_half_up(config.conflict_student_pct * 100)
         << "_e" << round_half_up(config.conflict_edge_pct * 100) << "_r"
         << replicate + 1;
    instance->name = name.str();
    out.push_back({std::move(*instance), seed, replicate});
  }
  return out;
}

std::vector<GenConfig> family_configs(std::uint64_t base_seed,
                                      int replicates) {
  std::vector<GenConfig> out;
  std::uint64_t index = 0;
  for (int n : {30, 35, 40}) {
    for (double s : {0.35, 0.55, 0.85}) {
      for (double e : {0.30, 0.40, 0.50}) {
        GenConfig config;
        config.n = n;
        config.conflict_student_pct = s;
        config.conflict_edge_pct = e;
        config.replicates = replicates;
        config.seed = derive_seed(base_seed, 0xfa, index++);
        out.push_back(config);
      }
    }
  }
  return out;
}

std::vector<FamilyEntry> generate_family(std::uint64_t base_seed,
                                         int replicates) {
  std::vector<FamilyEntry> out;
  int id = 0;
  for (auto const& config : family_configs(base_seed, replicates)) {
    for (auto& generated : generate(config)) {
      out.push_back({++id, config, std::move(generated)});
    }
  }
  return out;
}

std::string family_index_csv(std::vector<FamilyEntry> const& family) {
  std::ostringstream out;
  out << "id,n,pct_students,pct_edges,rows,seed\n";
  for (auto const& entry : family) {
    out << entry.id << ',' << entry.config.n << ','
        << entry.config.conflict_student_pct << ','
        << entry.config.conflict_edge_pct << ',';
    auto const& rows = entry.generated.instance.rows;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << (k ? ";" : "") << rows[k];
    }
    out << ',' << entry.generated.seed << '\n';
  }
  return out.str();
}

void write_family(std::vector<FamilyEntry> const& family,
                  std::filesystem::path const& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  for (auto const& entry : family) {
    save_instance(entry.generated.instance,
                  dir / ("instance_" + std::to_string(entry.id) + ".json"));
  }
  write_file(dir / "index.csv", family_index_csv(family));
}

}  // namespace seatplan
