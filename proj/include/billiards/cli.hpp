#pragma once

#include "billiards/configspace.hpp"
#include "billiards/field.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace billiards::cli {

enum class Command { Solve, Oracle, Cohomology, Verify };
enum class Format { Json, Text };

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
    Command command = Command::Verify;

    // solve
    std::string surface = "sphere";
    std::optional<int> m;
    std::vector<double> axes;
    std::vector<double> A;
    std::vector<double> B;
    int n = 1;
    int starts = 200;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int max_iters = 100;
    double dedup_tol = 1e-6;
    double degenerate_tol = 1e-8;
    std::string hessian = "analytic";
    int threads = 0;

    // oracle
    std::optional<double> phi;

    // cohomology / verify
    std::string field = "q";
    bool products = false;

    std::string out;
    Format format = Format::Json;
    int verbosity = 0;

    /// Throws std::invalid_argument describing the first bad parameter.
    void validate() const;
};

/// Parses the arguments (without the program name).  On failure the message
/// and usage go to `err` and nullopt is returned with `exit_code` set.
std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                               int& exit_code);

/// Executes a validated configuration and returns the exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + validate + execute.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace billiards::cli
