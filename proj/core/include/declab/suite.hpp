#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace declab::lab {

/// One end-to-end acceptance check. `detail` carries the measured numbers of
/// the verdict; `wall_seconds` the check's own runtime.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double wall_seconds = 0;
};

inline constexpr std::uint64_t kDefaultSuiteSeed = 424242;

std::vector<int> criterion_ids();  // 1..12

/// Run one criterion. `scratch_dir` is for checks that write files
/// (created if missing); `seed` drives every randomized ingredient.
CriterionResult run_criterion(int id, const std::string& scratch_dir, std::uint64_t seed);

std::vector<CriterionResult> run_all_criteria(const std::string& scratch_dir,
                                              std::uint64_t seed);

/// Deterministic artifact set (energy histories, ray census, observability
/// table, equivalence table) written under out_dir; returns the file names.
/// Bit-identical output for identical seeds is itself an acceptance check.
std::vector<std::string> emit_artifacts(const std::string& out_dir, std::uint64_t seed);

}  // namespace declab::lab
