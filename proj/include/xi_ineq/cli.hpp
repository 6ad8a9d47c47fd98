#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xi_ineq/config.hpp"

namespace xi_ineq {

inline constexpr const char* kVersion = "0.1.0";

enum class ExitCode : int { pass = 0, check_failed = 1, numerical = 2, usage = 3 };

struct RunConfig {
    std::string command;
    std::vector<double> sigma;
    std::vector<double> tau;
    std::vector<double> t;   // explicit t points (montecarlo)
    std::optional<double> t_max;
    std::optional<double> step;
    std::string method;
    std::uint64_t seed = 20240611;
    long samples = 1000000;
    int terms = 10;
    std::string out;
    std::string format = "json";
    std::string paper_truncation = "none";
    unsigned threads = 0;
    bool timestamp = true;
    EvalConfig eval;
};

// Parses argv, runs one subcommand and writes its report. Returns the exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

// Formats with the shortest representation that round-trips.
std::string format_double(double v);

} // namespace xi_ineq
