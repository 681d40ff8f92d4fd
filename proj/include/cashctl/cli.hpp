#pragma once

#include "cashctl/error.hpp"
#include "cashctl/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cashctl {

struct RunConfig {
    std::string command;
    std::vector<std::filesystem::path> scenarios;
    std::optional<std::filesystem::path> ledger;
    std::optional<int> period;
    std::optional<OutputFormat> format;
    bool raw{false};
    std::optional<std::filesystem::path> output;

    // breakeven / simulate
    std::optional<int> horizon_days;
    int horizon_months{24};
    std::string granularity{"day"};

    // leverage / curves
    std::optional<Rational> fixed;
    std::optional<Rational> margin;
    std::optional<Rational> quantity;
    LeverageBasis basis{LeverageBasis::Term};
    std::vector<Rational> indifference_fixed;
    int curve_scale{6};
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitDomain = 4;

int exit_code_for(ErrorCategory category);

/// Runs one command and returns the rendered output. Throws Error.
std::string execute(const RunConfig& config);

/// Parses argv, runs the command, writes the output (to `out` or the
/// --output file) and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cashctl
