/**
 * Command line front end.  Subcommands: parse, tropisms, initforms,
 * solve-binomial, puiseux, verify, degree, components.
 */

#ifndef TROPISM_CLI_HPP
#define TROPISM_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tropism {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

struct RunConfig
{
    std::string subcommand;
    std::string system;  // path, cyclic:n or illus3
    std::size_t dim = 1;
    long roots_order = 0;  // 0: default for the system
    std::uint64_t seed = 0;
    std::string format = "text";
    bool positive_first = true;
    bool expand_orbits = false;
    std::uint64_t max_grid = 1000000;
    std::string backend = "auto";
    std::vector<std::string> vectors;  // initforms
    std::string point;                 // verify
    std::string rep;                   // verify, degree, components: backelin:m or a JSON file
};

/// Thread count from hardware concurrency, capped by TROPISM_FORGE_THREADS.
unsigned thread_budget();

/// args excludes the program name.  Results go to out, messages to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tropism

#endif // TROPISM_CLI_HPP
