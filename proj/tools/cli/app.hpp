#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bayesmv/error.hpp"
#include "report.hpp"

namespace bayesmv::cli {

enum class Command { Estimate, Optimize, Frontier, Sample, Interval, Compare, Ratio };
enum class RuleChoice { Bayes, Sample, Both };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int malformed_input = 3;
inline constexpr int degrees_of_freedom = 4;
inline constexpr int infeasible = 5;
inline constexpr int io = 6;
}  // namespace exit_code

int exit_code_for(ErrorCode code) noexcept;

inline constexpr std::uint64_t default_seed = 42;

struct RunConfig {
    Command command = Command::Estimate;
    std::filesystem::path input_path;
    bool prices = false;

    std::optional<double> gamma;
    std::optional<double> target_return;
    std::optional<double> target_variance;
    std::optional<std::vector<double>> weights;
    RuleChoice rule = RuleChoice::Bayes;

    double alpha = 0.05;
    std::size_t draws = 100000;
    std::uint64_t seed = default_seed;
    unsigned threads = 1;
    bool oracle = false;
    std::filesystem::path dump_path;

    int grid_points = 100;
    double grid_max_multiple = 5.0;

    std::vector<double> gammas;        // interval / compare; empty → command default
    std::vector<long> asset_counts;    // compare; empty → all assets
    std::vector<long> sample_sizes{50, 100};  // ratio
    double kn_max = 0.95;              // ratio

    OutputFormat format = OutputFormat::Json;
    std::filesystem::path output_path;  // empty → standard output
};

/// Executes one command and returns the report. Throws bayesmv::Error.
Report build_report(const RunConfig& config);

/// Runs the command, emits the report and maps failures to exit codes with
/// a one-line diagnostic on `diagnostics`.
int run(const RunConfig& config, std::ostream& diagnostics);

/// Full command-line entry point: parses arguments (honoring BAYESMV_SEED
/// when --seed is absent) and runs.
int main_entry(int argc, const char* const* argv, std::ostream& diagnostics);

}  // namespace bayesmv::cli
