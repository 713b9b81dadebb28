#include "seatplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "seatplan/io.hpp"
#include "seatplan/random.hpp"

namespace seatplan {

std::uint64_t run_seed(std::uint64_t base_seed, int id, int run) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(id),
                     static_cast<std::uint64_t>(run));
}

int default_workers() {
  if (char const* env = std::getenv("SEATPLAN_THREADS")) {
    auto const value = std::atoi(env);
    if (value > 0) {
      return value;
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void aggregate(BenchRow& row, std::optional<Score> reference) {
  row.bks = reference;
  int feasible = 0;
  double time = 0;
  for (auto const& run : row.runs) {
    time += run.time;
    if (run.feasible) {
      ++feasible;
      row.bks = row.bks ? std::max(*row.bks, run.f) : run.f;
    }
  }
  auto const total = static_cast<int>(row.runs.size());
  row.avg_time = total ? time / total : 0.0;
  row.fea_pct = total ? 100.0 * feasible / total : 0.0;
  row.avg_gap.reset();
  if (!row.bks) {
    return;
  }
  double sum = 0;
  for (auto& run : row.runs) {
    run.gap = gap(static_cast<double>(*row.bks), static_cast<double>(run.f));
    if (run.feasible) {
      sum += run.gap;
    }
  }
  if (feasible > 0) {
    row.avg_gap = sum / feasible;
  }
}

std::vector<BenchRow> run_batch(std::vector<BenchInstance> const& instances,
                                SolveParams const& params,
                                BatchOptions const& options) {
  params.validate();
  std::vector<std::unique_ptr<Problem>> problems;
  std::vector<BenchRow> rows(instances.size());
  for (std::size_t m = 0; m < instances.size(); ++m) {
    problems.push_back(std::make_unique<Problem>(instances[m].instance));
    rows[m].id = instances[m].id;
    rows[m].name = instances[m].instance.name;
    rows[m].runs.resize(options.runs);
  }

  auto const tasks = instances.size() * static_cast<std::size_t>(options.runs);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (auto t = next++; t < tasks; t = next++) {
      auto const m = t / options.runs;
      auto const k = static_cast<int>(t % options.runs);
      try {
        auto run_params = params;
        run_params.seed = run_seed(options.base_seed, rows[m].id, k + 1);
        auto const result = solve(*problems[m], run_params);
        auto& record = rows[m].runs[k];
        record.run = k + 1;
        record.seed = run_params.seed;
        record.f = result.f;
        record.penalized = result.penalized;
        record.feasible = result.feasible;
        record.time = result.elapsed;
        record.initial = result.initial;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
      }
    }
  };

  auto const width = static_cast<std::size_t>(
      options.workers > 0 ? options.workers : default_workers());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(width, tasks); ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& thread : pool) {
    thread.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }

  for (auto& row : rows) {
    auto const it = options.reference.find(row.id);
    aggregate(row, it == options.reference.end()
                       ? std::nullopt
                       : std::optional<Score>(it->second));
  }
  return rows;
}

namespace {

std::string fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

std::string optional_fixed(std::optional<double> value, int digits) {
  return value ? fixed(*value, digits) : "NA";
}

}  // namespace

std::string summary_csv(std::vector<BenchRow> const& rows) {
  std::ostringstream out;
  out << "ID,ILS_gap,BKS,ILS_time,Fea_pct\n";
  for (auto const& row : rows) {
    out << row.id << ',' << optional_fixed(row.avg_gap, 6) << ','
        << (row.bks ? std::to_string(*row.bks) : "NA") << ','
        << fixed(row.avg_time, 4) << ',' << fixed(row.fea_pct, 2) << '\n';
  }
  return out.str();
}

std::string detail_csv(std::vector<BenchRow> const& rows) {
  std::ostringstream out;
  out << "ID,run,seed,f,f_p,feasible,gap,time,initial_f,initial_feasible\n";
  for (auto const& row : rows) {
    for (auto const& run : row.runs) {
      out << row.id << ',' << run.run << ',' << run.seed << ',' << run.f << ','
          << run.penalized << ',' << (run.feasible ? 1 : 0) << ','
          << (row.bks ? fixed(run.gap, 6) : "NA") << ','
          << fixed(run.time, 4) << ',' << run.initial.f << ','
          << (run.initial.feasible ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::filesystem::path detail_path(std::filesystem::path const& summary) {
  auto path = summary;
  path.replace_filename(summary.stem().string() + "_runs.csv");
  return path;
}

void export_csv(std::vector<BenchRow> const& rows,
                std::filesystem::path const& path) {
  write_file(path, summary_csv(rows));
  write_file(detail_path(path), detail_csv(rows));
}

ReferenceBks parse_reference_bks(std::string const& csv) {
  ReferenceBks out;
  std::istringstream in(csv);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || (line_no == 1 && !std::isdigit(
                                             static_cast<unsigned char>(line[0])))) {
      continue;
    }
    auto const comma = line.find(',');
    try {
      if (comma == std::string::npos) {
        throw std::invalid_argument(line);
      }
      out[std::stoi(line.substr(0, comma))] =
          static_cast<Score>(std::stod(line.substr(comma + 1)));
    } catch (std::exception const&) {
      throw FormatError("reference line " + std::to_string(line_no) +
                        " is not 'ID,BKS'");
    }
  }
  return out;
}

ReferenceBks load_reference_bks(std::filesystem::path const& path) {
  return parse_reference_bks(read_file(path));
}

std::vector<InitialComparison> initial_vs_ils(
    std::vector<BenchRow> const& rows) {
  std::vector<InitialComparison> out;
  for (auto const& row : rows) {
    for (auto const& run : row.runs) {
      InitialComparison item;
      item.id = row.id;
      item.run = run.run;
      item.label = run.initial.feasible ? "Initial" : "Initial (Infeasible)";
      item.initial_f = run.initial.f;
      item.initial_time = run.initial.elapsed;
      item.ils_f = run.f;
      item.ils_feasible = run.feasible;
      item.ils_time = run.time;
      if (row.bks) {
        item.initial_gap = gap(double(*row.bks), double(run.initial.f));
        if (run.feasible) {
          item.ils_gap = run.gap;
        }
      }
      out.push_back(std::move(item));
    }
  }
  return out;
}

std::vector<InitialComparison> initial_vs_ils(
    std::vector<BenchInstance> const& instances, SolveParams const& params,
    BatchOptions const& options) {
  return initial_vs_ils(run_batch(instances, params, options));
}

std::string comparison_csv(std::vector<InitialComparison> const& items) {
  std::ostringstream out;
  out << "ID,run,label,initial_f,initial_gap,initial_time,ils_f,"
         "ils_feasible,ils_gap,ils_time\n";
  for (auto const& item : items) {
    out << item.id << ',' << item.run << ',' << item.label << ','
        << item.initial_f << ',' << optional_fixed(item.initial_gap, 6) << ','
        << fixed(item.initial_time, 4) << ',' << item.ils_f << ','
        << (item.ils_feasible ? 1 : 0) << ','
        << optional_fixed(item.ils_gap, 6) << ',' << fixed(item.ils_time, 4)
        << '\n';
  }
  return out.str();
}

std::string markdown_report(std::vector<BenchRow> const& rows) {
  std::ostringstream out;
  out << "| ID | Instance | ILS gap | BKS | ILS time (s) | Fea (%) |\n";
  out << "|---:|:---|---:|---:|---:|---:|\n";
  for (auto const& row : rows) {
    out << "| " << row.id << " | " << row.name << " | "
        << optional_fixed(row.avg_gap, 2) << " | "
        << (row.bks ? std::to_string(*row.bks) : "NA") << " | "
        << fixed(row.avg_time, 2) << " | " << fixed(row.fea_pct, 2) << " |\n";
  }
  return out.str();
}

}  // namespace seatplan
