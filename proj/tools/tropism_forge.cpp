/**
 * tropism-forge: command line entry point.
 */

#include <exception>
#include <iostream>

#include "tropism/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return tropism::run(args, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tropism::kDomainError;
    }
}
