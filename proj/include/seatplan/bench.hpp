#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seatplan/ils.hpp"
#include "seatplan/model.hpp"

namespace seatplan {

struct BenchInstance {
  int id = 0;
  Instance instance;
};

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  Score f = 0;
  Score penalized = 0;
  bool feasible = false;
  double time = 0;
  Snapshot initial;
  // Filled once the BKS is known; only meaningful for feasible runs.
  double gap = 0;
};

struct BenchRow {
  int id = 0;
  std::string name;
  std::optional<Score> bks;
  // Mean gap over feasible runs; empty when no run was feasible or no BKS
  // is known.
  std::optional<double> avg_gap;
  double avg_time = 0;
  double fea_pct = 0;
  std::vector<RunRecord> runs;
};

using ReferenceBks = std::map<int, Score>;

struct BatchOptions {
  int runs = 30;
  std::uint64_t base_seed = 1;
  // 0 reads SEATPLAN_THREADS, falling back to the hardware concurrency.
  int workers = 0;
  ReferenceBks reference;
};

// Seed of run `run` on instance `id`.
std::uint64_t run_seed(std::uint64_t base_seed, int id, int run);
int default_workers();

std::vector<BenchRow> run_batch(std::vector<BenchInstance> const& instances,
                                SolveParams const& params,
                                BatchOptions const& options);

// Recomputes bks, gaps and averages of a row from its runs.
void aggregate(BenchRow& row, std::optional<Score> reference);

std::string summary_csv(std::vector<BenchRow> const& rows);
std::string detail_csv(std::vector<BenchRow> const& rows);
// Writes <path> (summary) and <path stem>_runs.csv next to it.
void export_csv(std::vector<BenchRow> const& rows,
                std::filesystem::path const& path);
std::filesystem::path detail_path(std::filesystem::path const& summary);

ReferenceBks parse_reference_bks(std::string const& csv);
ReferenceBks load_reference_bks(std::filesystem::path const& path);

struct InitialComparison {
  int id = 0;
  int run = 0;
  // "Initial" or "Initial (Infeasible)"
  std::string label;
  Score initial_f = 0;
  std::optional<double> initial_gap;
  double initial_time = 0;
  Score ils_f = 0;
  bool ils_feasible = false;
  std::optional<double> ils_gap;
  double ils_time = 0;
};

std::vector<InitialComparison> initial_vs_ils(
    std::vector<BenchInstance> const& instances, SolveParams const& params,
    BatchOptions const& options);
std::vector<InitialComparison> initial_vs_ils(
    std::vector<BenchRow> const& rows);
std::string comparison_csv(std::vector<InitialComparison> const& items);

std::string markdown_report(std::vector<BenchRow> const& rows);

}  // namespace seatplan
