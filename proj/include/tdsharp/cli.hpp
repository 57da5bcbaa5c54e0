#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tdsharp/io.hpp"

namespace tdsharp {

struct ReportEnvelope {
  std::string command;
  std::string digest;
  Outcome outcome = Outcome::rejected;
  Json payload;
  double wall_time_ms = 0;
  std::uint64_t seed = 0;

  Json to_json() const;
};

ReportEnvelope verify_instance(const Instance& instance, const VerifyOptions& options);
ReportEnvelope sharpen_instance(const Instance& instance, const SharpenOptions& options);
/// Exhaustive invariant-subspace search compared with the randomized test.
/// Throws BoundError outside p^k <= 4, n <= 4.
ReportEnvelope oracle_subspaces(const Instance& instance, std::uint64_t seed, std::size_t budget);

/// Trial budget from TD_TRIAL_BUDGET, or `fallback` when unset.
std::size_t trial_budget_from_env(std::size_t fallback = 200);

/// Full command-line entry point; args exclude the program name.
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdsharp
