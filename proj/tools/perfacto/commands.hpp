#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perfacto/json_io.hpp"

namespace perfacto::cli {

/// Exit codes: verdicts map to 0 / 1 so shell pipelines can branch on them.
enum Exit : int { kTrue = 0, kFalse = 1, kError = 2 };

struct Options {
  std::optional<std::string> json_out;
  std::uint64_t seed = 1;
  bool trace = false;
};

/// The outcome of one command: an exit code, the human-readable text and the
/// machine report (a workspace document with extra verdict fields).
struct Outcome {
  int code = kTrue;
  std::string text;
  Json report = Json::object();
};

/// Input references are "path" or "path#name"; "-" reads standard input.
Workspace load(const std::string& path);

Outcome check(const std::vector<std::string>& inputs);
Outcome homology(const std::string& complex);
Outcome cone(const std::string& map);
Outcome hom(const std::string& left, const std::string& right);
Outcome tensor(const std::string& left, const std::string& right);
Outcome snf(const std::string& matrix);
Outcome contract(const std::string& complex);
Outcome factorize(const std::string& map, const Options& options, int margin, int rounds);
Outcome purity(const std::string& map, const std::vector<std::string>& probes);
Outcome colimit(const std::string& diagram, const std::vector<std::string>& functors);
Outcome demo();
Outcome proptest(const std::vector<std::string>& suites, const Options& options,
                 std::size_t trials, unsigned threads);
Outcome list_suites();

}  // namespace perfacto::cli
