#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seatplan/bench.hpp"
#include "seatplan/builtin.hpp"
#include "seatplan/constructor.hpp"
#include "seatplan/generator.hpp"
#include "seatplan/ils.hpp"
#include "seatplan/io.hpp"
#include "seatplan/lp.hpp"
#include "seatplan/oracle.hpp"
#include "seatplan/service.hpp"

namespace fs = std::filesystem;
using namespace seatplan;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kIo = 2;

struct ParamFlags {
  SolveParams params;
  std::optional<int> d_min;
  std::optional<int> d_min_same_row;

  void attach(CLI::App* app) {
    app->add_option("--theta", params.theta, "perturbation degree in (0,1]");
    app->add_option("--psi", params.psi, "share of each row tried by Swap I");
    app->add_option("--gamma-frac", params.gamma,
                    "share of candidate seats evaluated by Swap I");
    app->add_option("--it-max", params.it_max, "iteration budget");
    app->add_option("--eta-max", params.eta_max,
                    "iterations without improvement before stopping");
    app->add_option("--seed", params.seed, "random seed");
    app->add_option("--time-limit", params.time_limit_seconds,
                    "wall-clock limit in seconds (0 = none)");
    app->add_option("--dmin", d_min, "override the consecutive-row distance");
    app->add_option("--dmin-same-row", d_min_same_row,
                    "override the same-row distance");
  }

  Instance apply(Instance instance) const {
    if (d_min) {
      instance.d_min = *d_min;
    }
    if (d_min_same_row) {
      instance.d_min_same_row = *d_min_same_row;
    }
    return instance;
  }
};

// A path, or the key/name of a builtin classroom.
Instance read_instance(std::string const& source) {
  if (!fs::exists(source)) {
    if (auto builtin = builtin_classroom(source)) {
      return *builtin;
    }
  }
  return load_instance(source);
}

Locks parse_lock_flags(std::vector<std::string> const& flags) {
  static std::regex const pattern(R"((\d+):(\d+),(\d+))");
  Locks locks;
  for (auto const& flag : flags) {
    std::smatch m;
    if (!std::regex_match(flag, m, pattern)) {
      throw InvalidLocks("lock '" + flag + "' must look like id:row,pos");
    }
    locks.push_back({std::stoi(m[1]) - 1, {std::stoi(m[2]), std::stoi(m[3])}});
  }
  return locks;
}

std::vector<BenchInstance> read_bench_inputs(
    std::vector<std::string> const& inputs) {
  std::vector<BenchInstance> out;
  for (auto const& input : inputs) {
    fs::path const path(input);
    if (fs::is_directory(path)) {
      std::vector<std::pair<int, fs::path>> found;
      std::regex const name(R"(instance_(\d+)\.json)");
      for (auto const& entry : fs::directory_iterator(path)) {
        std::smatch m;
        auto const file = entry.path().filename().string();
        if (std::regex_match(file, m, name)) {
          found.emplace_back(std::stoi(m[1]), entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      for (auto const& [id, file] : found) {
        out.push_back({id, load_instance(file)});
      }
    } else {
      out.push_back({static_cast<int>(out.size()) + 1, read_instance(input)});
    }
  }
  if (out.empty()) {
    throw IoError("no instances found");
  }
  return out;
}

int run_solve(std::string const& source, ParamFlags const& flags,
              std::vector<std::string> const& lock_flags,
              std::string const& out, std::string const& iter_trace,
              std::string const& refine_trace, std::string const& dump_weights,
              bool json_stdout) {
  Problem const problem(flags.apply(read_instance(source)));
  auto params = flags.params;
  params.validate();
  params.record_trace = !iter_trace.empty() || !refine_trace.empty();
  auto const locks = parse_lock_flags(lock_flags);
  validate_locks(problem, locks);

  if (!dump_weights.empty()) {
    Rng rng(params.seed);
    write_file(dump_weights, build_weight_matrix(problem, rng, locks).to_csv());
  }
  auto const result = solve(problem, params, locks);

  if (json_stdout) {
    std::cout << solve_result_to_json(problem, result, false).dump(2) << '\n';
  } else {
    auto const counts = result.violations;
    std::cout << "f = " << result.f << '\n'
              << "f_p = " << result.penalized << '\n'
              << "feasible = " << (result.feasible ? "yes" : "no") << '\n'
              << "violations = alpha " << counts.alpha << ", beta "
              << counts.beta << ", gamma " << counts.gamma << ", delta "
              << counts.delta << '\n'
              << "active edges = " << active_edges(problem, result.assignment).size()
              << '\n'
              << "iterations = " << result.iterations << '\n'
              << seat_chart(problem, result.assignment);
  }
  if (!out.empty()) {
    write_file(out, solve_result_to_json(problem, result).dump(2) + "\n");
  }
  if (!iter_trace.empty()) {
    write_file(iter_trace, trace_csv(result.trace));
  }
  if (!refine_trace.empty()) {
    write_file(refine_trace, refine_trace_csv(result.refine_trace));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classroom seat assignment with conflict separation"};
  app.set_version_flag("--version", std::string(SEATPLAN_VERSION));
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "seat one classroom");
  std::string solve_input;
  ParamFlags solve_flags;
  std::vector<std::string> lock_flags;
  std::string solve_out;
  std::string iter_trace;
  std::string refine_trace;
  std::string dump_weights;
  bool json_stdout = false;
  solve_cmd->add_option("instance", solve_input,
                        "instance JSON or builtin key (classroom1..3)")
      ->required();
  solve_flags.attach(solve_cmd);
  solve_cmd->add_option("--lock", lock_flags, "pin a student: id:row,pos");
  solve_cmd->add_option("--out", solve_out, "write the result JSON here");
  solve_cmd->add_option("--iter-trace", iter_trace,
                        "write iteration,f_p,best_f_p CSV here");
  solve_cmd->add_option("--refine-trace", refine_trace,
                        "write the refinement moves CSV here");
  solve_cmd->add_option("--dump-weights", dump_weights,
                        "write the construction weight matrix CSV here");
  solve_cmd->add_flag("--json", json_stdout,
                      "print the result as JSON (without timing)");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "create benchmark instances");
  GenConfig gen;
  bool family = false;
  std::uint64_t family_seed = 1;
  std::string gen_out = "bench";
  gen_cmd->add_option("--n", gen.n, "students (= desks)");
  gen_cmd->add_option("--students", gen.conflict_student_pct,
                      "share of students in conflict");
  gen_cmd->add_option("--edges", gen.conflict_edge_pct,
                      "density of the conflict graph");
  gen_cmd->add_option("--replicates", gen.replicates, "instances to draw");
  gen_cmd->add_option("--seed", family_seed, "random seed");
  gen_cmd->add_flag("--family", family,
                    "all 27 configurations (sizes 30/35/40)");
  gen_cmd->add_option("--out", gen_out, "output directory");

  // bench / compare-initial
  std::vector<std::string> bench_inputs;
  ParamFlags bench_flags;
  int runs = 30;
  int threads = 0;
  std::string bench_out = "bench_summary.csv";
  std::string reference_path;
  std::string report_path;
  auto* bench_cmd = app.add_subcommand("bench", "repeated runs with gap stats");
  auto* cmp_cmd = app.add_subcommand(
      "compare-initial", "constructive start versus final ILS result");
  for (auto* cmd : {bench_cmd, cmp_cmd}) {
    cmd->add_option("inputs", bench_inputs,
                    "instance files, builtin keys or generated directories")
        ->required();
    bench_flags.attach(cmd);
    cmd->add_option("--runs", runs, "runs per instance");
    cmd->add_option("--threads", threads,
                    "worker threads (default SEATPLAN_THREADS or all cores)");
    cmd->add_option("--reference", reference_path, "ID,BKS reference file");
    cmd->add_option("--out", bench_out, "output CSV");
  }
  bench_cmd->add_option("--report", report_path, "markdown table output");

  // export-lp
  auto* lp_cmd = app.add_subcommand("export-lp", "write the integer model");
  std::string lp_input;
  std::string lp_out = "model.lp";
  lp_cmd->add_option("instance", lp_input, "instance JSON or builtin key")
      ->required();
  lp_cmd->add_option("--out", lp_out, "LP file");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum");
  std::string oracle_input;
  std::int64_t budget = kDefaultNodeBudget;
  oracle_cmd->add_option("instance", oracle_input, "instance JSON")
      ->required();
  oracle_cmd->add_option("--budget", budget, "search node budget");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "HTTP API for the planner");
  auto service_config = service_config_from_env();
  serve_cmd->add_option("--port", service_config.port,
                        "listen port (default SEATPLAN_PORT or 8080)");
  serve_cmd->add_option("--host", service_config.host, "listen address");
  serve_cmd->add_option("--solve-cap", service_config.solve_time_cap,
                        "seconds allowed per solve request");
  serve_cmd->add_option("--cors-origin", service_config.cors_origin,
                        "Access-Control-Allow-Origin value");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(solve_input, solve_flags, lock_flags, solve_out,
                       iter_trace, refine_trace, dump_weights, json_stdout);
    }
    if (gen_cmd->parsed()) {
      if (family) {
        auto const entries = generate_family(family_seed, gen.replicates);
        write_family(entries, gen_out);
        std::cout << entries.size() << " instances written to " << gen_out
                  << '\n';
      } else {
        gen.seed = family_seed;
        auto const items = generate(gen);
        std::vector<FamilyEntry> entries;
        for (std::size_t k = 0; k < items.size(); ++k) {
          entries.push_back({static_cast<int>(k) + 1, gen, items[k]});
        }
        write_family(entries, gen_out);
        std::cout << entries.size() << " instances written to " << gen_out
                  << '\n';
      }
      return kOk;
    }
    if (bench_cmd->parsed() || cmp_cmd->parsed()) {
      auto instances = read_bench_inputs(bench_inputs);
      for (auto& item : instances) {
        item.instance = bench_flags.apply(item.instance);
      }
      BatchOptions options;
      options.runs = runs;
      options.base_seed = bench_flags.params.seed;
      options.workers = threads;
      if (!reference_path.empty()) {
        options.reference = load_reference_bks(reference_path);
      }
      if (runs < 1) {
        throw std::invalid_argument("runs must be at least 1");
      }
      auto const rows = run_batch(instances, bench_flags.params, options);
      if (bench_cmd->parsed()) {
        export_csv(rows, bench_out);
        if (!report_path.empty()) {
          write_file(report_path, markdown_report(rows));
        }
        std::cout << markdown_report(rows);
      } else {
        auto const items = initial_vs_ils(rows);
        write_file(bench_out, comparison_csv(items));
        int infeasible = 0;
        for (auto const& item : items) {
          infeasible += item.label != "Initial";
        }
        std::cout << items.size() << " runs, " << infeasible
                  << " with an infeasible start; written to " << bench_out
                  << '\n';
      }
      return kOk;
    }
    if (lp_cmd->parsed()) {
      Problem const problem(read_instance(lp_input));
      auto const model = build_lp(problem);
      write_file(lp_out, write_lp(model));
      std::cout << "x variables = " << model.count_prefix("x_")
                << ", w variables = " << model.count_prefix("w_")
                << ", constraints = " << model.constraints.size() << '\n';
      return kOk;
    }
    if (oracle_cmd->parsed()) {
      Problem const problem(read_instance(oracle_input));
      auto const result = brute_force(problem, budget);
      switch (result.status) {
        case OracleStatus::kOptimal:
          std::cout << "optimal f = " << result.best_f << '\n'
                    << seat_chart(problem, result.witness);
          break;
        case OracleStatus::kInfeasible:
          std::cout << "infeasible (best f_p = " << result.best_penalized
                    << ")\n";
          break;
        case OracleStatus::kBudgetExceeded:
          std::cout << "budget exceeded after " << result.nodes
                    << " nodes\n";
          break;
      }
      return kOk;
    }
    if (serve_cmd->parsed()) {
      Service service(service_config);
      std::cout << "listening on " << service_config.host << ':'
                << service_config.port << std::endl;
      if (!service.run()) {
        std::cerr << "cannot bind " << service_config.host << ':'
                  << service_config.port << '\n';
        return kIo;
      }
      return kOk;
    }
  } catch (IoError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (InvalidInstance const& e) {
    std::cerr << "invalid instance: " << e.report().summary() << '\n';
    return kValidation;
  } catch (FormatError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
