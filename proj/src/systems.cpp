#include "tropism/parser.hpp"

namespace tropism {

namespace {

const char* kIllustrative = R"(vars: x, y, z;
(y - x^2)*(x^2 + y^2 + z^2 - 1)*(x - 0.5);
(z - x^3)*(x^2 + y^2 + z^2 - 1)*(y - 0.5);
(y - x^2)*(z - x^3)*(x^2 + y^2 + z^2 - 1)*(z - 0.5);
)";

} // namespace

CyclotomicSystem builtin_system(const std::string& name)
{
    if (name == "illus3")
        return parse_system(kIllustrative);
    if (name.rfind("cyclic:", 0) == 0) {
        const std::string digits = name.substr(7);
        if (digits.empty() || digits.size() > 4 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("malformed builtin system '" + name + "'");
        return cyclic_system(std::stoul(digits));
    }
    throw DomainError("unknown builtin system '" + name + "'");
}

} // namespace tropism
