#pragma once

// Seeded randomized property suites shared by `perfacto proptest` and the
// acceptance runner. Each trial derives its own seed from (suite seed, trial
// index), so results do not depend on the number of worker threads.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace perfacto::properties {

struct TrialResult {
  enum class Status { Pass, Fail, Skip };
  Status status = Status::Pass;
  std::string detail;
  /// Named counters summed over the suite (e.g. how many instances were
  /// solvable), used to show that both outcomes were exercised.
  std::map<std::string, long> tallies;

  static TrialResult pass() { return {}; }
  static TrialResult fail(std::string why) { return {Status::Fail, std::move(why), {}}; }
  static TrialResult skip(std::string why) { return {Status::Skip, std::move(why), {}}; }
};

struct Suite {
  std::string name;
  std::string description;
  std::size_t default_trials;
  std::function<TrialResult(std::uint64_t seed)> trial;
};

struct RunOptions {
  std::uint64_t seed = 1;
  /// 0 means the suite's default.
  std::size_t trials = 0;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::size_t failures_kept = 5;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  double seconds = 0;
  std::vector<std::string> failures;
  std::map<std::string, long> tallies;

  bool ok() const { return failed == 0; }
  /// Instances that were actually checked.
  std::size_t checked() const { return passed + failed; }
};

/// SplitMix64 of (seed, index).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

SuiteReport run_suite(const Suite& suite, const RunOptions& options);

const std::vector<Suite>& all_suites();
/// Throws std::out_of_range for unknown names.
const Suite& find_suite(const std::string& name);

}  // namespace perfacto::properties
