#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sharpconst::cli {

struct RunConfig {
    enum class Command { Constant, Sweep, Verify, Symmetrize };
    Command command = Command::Constant;

    // problem parameters
    std::string space = "even";  // constant: even | full (univariate)
    std::string domain;          // constant/symmetrize: ball | sphere (multivariate)
    int m = 0;
    int n = 8;
    int big_n = 0;  // operator power N
    double p = 2.0;
    std::optional<double> nu;

    // sweep
    std::string family = "bessel-origin";
    std::vector<int> ns;

    // verify
    std::string relation = "c4_6";
    double tol = 0.02;

    std::string output = "json";  // json | csv
    std::uint64_t seed = 20240915;
    int threads = 1;
    std::string out_path;
};

struct RunOutcome {
    int exit_code = 0;
    std::string document;
};

/// Executes one command; never throws (solver failures map to exit code 3,
/// verification failures to 4). Progress goes to stderr.
RunOutcome run(const RunConfig& config);

/// Full entry point: parse, run, emit. Returns the process exit code
/// (0 success, 2 usage, 3 solver failure, 4 verification failure).
int main_entry(int argc, char** argv);

}  // namespace sharpconst::cli
