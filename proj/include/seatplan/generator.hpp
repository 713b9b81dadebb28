#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seatplan/model.hpp"

namespace seatplan {

struct GenConfig {
  int n = 30;
  double conflict_student_pct = 0.35;
  double conflict_edge_pct = 0.30;
  std::vector<int> rows_choices{5, 6, 7};
  int min_desks_per_row = 4;
  double front_min = 0.13;
  double front_max = 0.27;
  double back_min = 0.06;
  double back_max = 0.25;
  int replicates = 5;
  int d_min = 2;
  std::uint64_t seed = 1;
  // Attempts per replicate before giving up (graph resampling and
  // feasibility screening combined).
  int max_attempts = 1000;

  // Throws std::invalid_argument with a readable message.
  void validate() const;
};

class GenerationError : public std::runtime_error {
 public:
  GenerationError(std::string const& what, std::uint64_t seed)
      : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"),
        seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// round-half-up of n * fraction
int conflict_vertex_count(int n, double fraction);
// round-half-up of fraction * V (V - 1) / 2
int conflict_edge_count(int vertices, double fraction);

struct GeneratedInstance {
  Instance instance;
  std::uint64_t seed = 0;
  int replicate = 0;
};

struct Screening {
  bool feasible = true;
  // Set when the decision came from the exhaustive oracle.
  bool exact = false;
  std::string reason;
};

// Exhaustive oracle up to `exact_limit` students, otherwise necessary
// conditions: front/back capacity and a greedy clique against the number
// of mutually separated desks.
Screening screen(Instance const& instance, int exact_limit = 12);

// One instance; nullopt when screening rejects it.
std::optional<Instance> generate_one(GenConfig const& config,
                                     std::uint64_t seed);

// `replicates` screened instances for one configuration. Rejected draws
// are redrawn with the next sub-seed.
std::vector<GeneratedInstance> generate(GenConfig const& config);

struct FamilyEntry {
  int id = 0;
  GenConfig config;
  GeneratedInstance generated;
};

// 3 sizes x 3 student fractions x 3 edge fractions, `replicates` each,
// ordered by size, then student fraction, then edge fraction. Ids count
// from 1 in that order.
std::vector<GenConfig> family_configs(std::uint64_t base_seed,
                                      int replicates = 5);
std::vector<FamilyEntry> generate_family(std::uint64_t base_seed,
                                         int replicates = 5);

// Writes <dir>/instance_<id>.json for every entry plus <dir>/index.csv.
void write_family(std::vector<FamilyEntry> const& family,
                  std::filesystem::path const& dir);
std::string family_index_csv(std::vector<FamilyEntry> const& family);

}  // namespace seatplan
