#ifndef ZPWALK_TOOLS_CLI_HPP
#define ZPWALK_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "zpwalk/decision.hpp"

namespace zpwalk::cli {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3, kMismatch = 4 };

struct RunConfig {
    std::string command;
    std::string graph_path;
    std::string from;
    std::string to;
    std::string state;
    std::string schedule_path;
    Mode mode = Mode::Both;
    std::uint64_t max_states = kDefaultMaxStates;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint64_t seed = 1;
    bool json = false;
    bool witness = false;
    bool allow_nongood = false;
    bool necessary_only = false;
    bool list = false;
    // gen
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::uint64_t modulus = 3;
    // selftest
    std::size_t max_n = 6;
    std::size_t max_m = 2;
    std::size_t random_graphs = 0;
    std::size_t random_max_n = 10;
    std::size_t random_max_m = 4;
    std::vector<std::uint64_t> primes{3};
    std::size_t samples = 50;
    std::vector<std::string> include;
};

/// Parses argv; on --help or a usage error prints to `out` and returns the
/// exit code to use instead of a config.
std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zpwalk::cli

#endif  // ZPWALK_TOOLS_CLI_HPP
