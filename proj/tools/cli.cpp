#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncd/bench.hpp"
#include "ncd/error.hpp"
#include "ncd/generator.hpp"
#include "ncd/io.hpp"
#include "ncd/lbbd.hpp"
#include "ncd/monolithic.hpp"
#include "ncd/verify.hpp"

namespace ncd {

namespace {

std::chrono::milliseconds seconds_to_ms(double seconds) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(seconds * 1000.0)));
}

void add_gen_flags(CLI::App& cmd, GenParams& p) {
  cmd.add_option("--care-units", p.care_units, "Care units")->capture_default_str();
  cmd.add_option("--capacity-min", p.capacity.lo, "Lowest daily capacity of a care unit (slots)")->capture_default_str();
  cmd.add_option("--capacity-max", p.capacity.hi, "Highest daily capacity of a care unit (slots)")->capture_default_str();
  cmd.add_option("--operators-min", p.operators.lo, "Fewest operators per care unit and day")->capture_default_str();
  cmd.add_option("--operators-max", p.operators.hi, "Most operators per care unit and day")->capture_default_str();
  cmd.add_option("--duration-min", p.duration.lo, "Shortest service (slots)")->capture_default_str();
  cmd.add_option("--duration-max", p.duration.hi, "Longest service (slots)")->capture_default_str();
  cmd.add_option("--max-services", p.max_services_per_packet, "Services per packet at most")->capture_default_str();
  cmd.add_option("--cps-min", p.care_pathways.lo, "Fewest care pathways per patient")->capture_default_str();
  cmd.add_option("--cps-max", p.care_pathways.hi, "Most care pathways per patient")->capture_default_str();
  cmd.add_option("--slots", p.slots_per_day, "Slots per day")->capture_default_str();
  cmd.add_option("--catalog", p.service_catalog, "Distinct services")->capture_default_str();
  cmd.add_option("--frequencies", p.frequencies, "Care-pathway periods in days")->capture_default_str();
  cmd.add_option("--necessity-prob", p.necessity_probability, "Necessity rule probability")->capture_default_str();
  cmd.add_option("--interdiction-prob", p.interdiction_probability, "Interdiction rule probability")
      ->capture_default_str();
}

void print_summary(std::ostream& out, Method method, const SolveReport& r) {
  out << "method=" << to_string(method) << " status=" << to_string(r.status) << " objective=" << r.objective
      << " ub=" << r.upper_bound << " iterations=" << r.iterations << " cuts=" << r.cuts.size()
      << " master_ms=" << r.master_ms << " sp_ms=" << r.sp_ms << " total_ms=" << r.total_ms << '\n';
}

void print_violation(std::ostream& out, const Violation& v) {
  out << to_string(v.kind);
  if (v.patient) out << " patient=" << *v.patient;
  if (v.day) out << " day=" << *v.day;
  out << ": " << v.detail << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outpatient agenda scheduling: logic-based Benders and monolithic exact solvers"};
  app.require_subcommand(1);

  // gen
  GenParams gen;
  bool figure1 = false;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance");
  gen_cmd->add_option("--patients", gen.patients, "Patients")->capture_default_str();
  gen_cmd->add_option("--horizon", gen.horizon_days, "Horizon in days")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  add_gen_flags(*gen_cmd, gen);
  gen_cmd->add_flag("--figure1", figure1, "Write the two-patient three-day example instead");
  gen_cmd->add_option("-o,--out", gen_out, "Output file (default: standard output)");

  // solve
  std::string solve_in;
  std::string solve_out;
  std::string method_name = "lbbd";
  double time_limit = 3600;
  bool parallel = false;
  bool verbose = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", solve_in, "Instance file")->required();
  solve_cmd->add_option("--method", method_name, "mono or lbbd")
      ->check(CLI::IsMember({"mono", "lbbd"}))
      ->capture_default_str();
  solve_cmd->add_option("--time-limit", time_limit, "Time limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("-o,--out", solve_out, "Solution file");
  solve_cmd->add_flag("--parallel", parallel, "Solve the days of an iteration concurrently (lbbd)");
  solve_cmd->add_flag("-v,--verbose", verbose, "Per-iteration diagnostics on standard error");

  // verify
  std::string verify_instance;
  std::string verify_solution_file;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution against every constraint");
  verify_cmd->add_option("instance", verify_instance, "Instance file")->required();
  verify_cmd->add_option("solution", verify_solution_file, "Solution file")->required();

  // bench
  BenchConfig bench;
  double bench_limit = 3600;
  std::string bench_out;
  std::vector<std::string> bench_methods{"mono", "lbbd"};
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep and write CSV rows");
  bench_cmd->add_option("--patients", bench.patients, "Patient counts")->capture_default_str();
  bench_cmd->add_option("--horizon", bench.horizons, "Horizons in days")->capture_default_str();
  bench_cmd->add_option("--instances-per-cell", bench.instances_per_cell, "Instances per (patients, horizon) cell")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--time-limit", bench_limit, "Time limit per solve in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "Concurrent solves")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--methods", bench_methods, "Methods to run")
      ->check(CLI::IsMember({"mono", "lbbd"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV file (default: standard output)");
  add_gen_flags(*bench_cmd, bench.base);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) {
      const Instance inst = figure1 ? figure1_instance() : generate_instance(gen);
      if (gen_out.empty()) {
        out << instance_to_json(inst);
      } else {
        write_instance(gen_out, inst);
      }
      return 0;
    }

    if (*solve_cmd) {
      const Instance inst = read_instance(solve_in);
      const Method method = method_name == "mono" ? Method::Mono : Method::Lbbd;
      SolveReport report;
      if (method == Method::Mono) {
        report = monolithic_solve(inst, seconds_to_ms(time_limit));
      } else {
        DriverConfig cfg;
        cfg.time_budget = seconds_to_ms(time_limit);
        cfg.parallel_subproblems = parallel;
        cfg.diagnostics = verbose ? &err : nullptr;
        report = lbbd_solve(inst, cfg);
      }
      if (!solve_out.empty()) {
        write_solution(solve_out, {report.status, report.objective, report.upper_bound, report.solution});
      }
      print_summary(out, method, report);
      return 0;
    }

    if (*verify_cmd) {
      const Instance inst = read_instance(verify_instance);
      const SolutionRecord rec = read_solution(verify_solution_file);
      const auto violations = verify_solution(inst, rec.solution);
      for (const auto& v : violations) print_violation(out, v);
      if (violations.empty()) {
        out << "ok: no violations, objective " << objective_value(inst, rec.solution.assignment) << '\n';
        return 0;
      }
      out << violations.size() << " violation(s)\n";
      return 1;
    }

    if (*bench_cmd) {
      bench.time_limit = seconds_to_ms(bench_limit);
      bench.methods.clear();
      for (const auto& m : bench_methods) bench.methods.push_back(m == "mono" ? Method::Mono : Method::Lbbd);
      std::ofstream file;
      if (!bench_out.empty()) {
        file.open(bench_out);
        if (!file) throw InputError(bench_out + ": cannot open for writing");
      }
      std::ostream& csv = bench_out.empty() ? out : file;
      const auto rows = run_bench(bench, [&err](const BenchRow& row) { err << "bench " << to_csv(row) << '\n'; });
      write_bench_csv(csv, rows);
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ncd
