#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ncd/model.hpp"

namespace ncd {

inline constexpr std::string_view kInstanceFormat = "ncd-agenda-instance";
inline constexpr std::string_view kSolutionFormat = "ncd-agenda-solution";
inline constexpr int kFormatVersion = 1;

/// What a solution file holds. No timing, so files are reproducible.
struct SolutionRecord {
  SolveStatus status = SolveStatus::Optimal;
  int objective = 0;
  int upper_bound = 0;
  FullSolution solution;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

// Parsers throw InputError whose message starts with the JSON path of the
// first offending field, e.g. "occurrences[2].tolerance: expected integer".
[[nodiscard]] std::string instance_to_json(const Instance& instance);
[[nodiscard]] Instance instance_from_json(std::string_view text);
[[nodiscard]] std::string solution_to_json(const SolutionRecord& record);
[[nodiscard]] SolutionRecord solution_from_json(std::string_view text);

void write_instance(const std::filesystem::path& path, const Instance& instance);
[[nodiscard]] Instance read_instance(const std::filesystem::path& path);
void write_solution(const std::filesystem::path& path, const SolutionRecord& record);
[[nodiscard]] SolutionRecord read_solution(const std::filesystem::path& path);

enum class Method { Mono, Lbbd };

[[nodiscard]] std::string_view to_string(Method method);

struct BenchRow {
  std::string instance;
  int patients = 0;
  int horizon = 0;
  int services = 0;  ///< services to schedule, summed over occurrences
  Method method = Method::Lbbd;
  SolveStatus status = SolveStatus::Optimal;
  int objective = 0;
  int upper_bound = 0;
  int iterations = 0;
  int cuts = 0;
  std::int64_t master_ms = 0;
  std::int64_t sp_ms = 0;
  std::int64_t total_ms = 0;
};

inline constexpr std::string_view kBenchHeader =
    "instance,patients,horizon,services,method,status,objective,ub,iterations,cuts,master_ms,sp_ms,total_ms";

[[nodiscard]] std::string to_csv(const BenchRow& row);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace ncd
