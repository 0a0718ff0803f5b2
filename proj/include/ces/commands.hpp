// Command layer behind the `ces` executable. Each command returns a process
// exit code: 0 success, 1 usage/input error, 2 I/O error, 3 internal
// verification failure.
#pragma once

#include "ces/report.hpp"
#include "ces/stabilizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ces::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kInternal = 3 };

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  /// Print the machine-readable result on stdout instead of a summary.
  bool json = false;
  /// Record wall_time_ms as 0 so reports are byte-identical across runs.
  bool no_timing = false;
};

struct ConstructOptions {
  std::string dims;
  /// roots | shifted | random
  std::string lambda_mode = "roots";
};

struct BasisOptions {
  long n = 0;
};

struct SearchOptions {
  std::string input;
  int restarts = 200;
  int max_iters = 5000;
  double tol = 1e-6;
};

struct StabilizerOptions {
  std::string group = "Z2";
  /// exhaustive | sampled | auto (exhaustive for d = 2)
  std::string mode = "auto";
};

struct RandomSubspaceOptions {
  std::string dims;
  /// Defaults to max_ces_dim + 1.
  std::optional<long> dim;
};

int cmd_construct(const ConstructOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_explicit_basis(const BasisOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_stabilizer(const StabilizerOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_random_subspace(const RandomSubspaceOptions& opt, const GlobalOptions& g, std::ostream& out,
                        std::ostream& err);
int cmd_report_bundle(const GlobalOptions& g, std::ostream& out, std::ostream& err);

/// Parses "3,3" into dimensions; throws std::invalid_argument.
std::vector<Index> parse_dims(const std::string& text);

/// Full verification suite for the stabilizer projector of `group`.
VerificationReport stabilizer_suite(const FiniteAbelianGroup& group, VerificationMode mode, std::uint64_t seed);

/// argv-level entry point used by the executable and the CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ces::cli
