/**
 * Text format for polynomial systems.
 *
 *   # comment
 *   vars: x, y, z;          (optional; default names x0, x1, ...)
 *   root-order: 3;          (optional; makes u a primitive cube root of unity)
 *   x^2*y - 1/2*z^-1 + (1 + u)*x;
 *
 * Coefficients are integers, decimals (read exactly), i, u and any
 * expression in them.  Products and powers are expanded.
 */

#ifndef TROPISM_PARSER_HPP
#define TROPISM_PARSER_HPP

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tropism/laurent.hpp"

namespace tropism {

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

CyclotomicSystem parse_system(const std::string& text);

/// Built-in systems: "cyclic:n" and "illus3" (the three-equation sphere example).
CyclotomicSystem builtin_system(const std::string& name);

/// A single coefficient expression such as "-1/2" or "1 + 2*u" (u = zeta_root_order).
Cyclotomic parse_coefficient(const std::string& text, long root_order = 1);

std::string format_monomial(const Exponent& e, const std::vector<std::string>& names);

template <typename C>
std::string format_polynomial(const LaurentPolynomial<C>& f, const std::vector<std::string>& names, long order)
{
    using Traits = CoefficientTraits<C>;
    if (f.is_zero())
        return "0";
    std::vector<Exponent> keys = f.support();
    std::sort(keys.begin(), keys.end(), graded_before);
    std::string out;
    for (const auto& e : keys) {
        const C& c = f.terms().at(e);
        const std::string mono = format_monomial(e, names);
        std::string coef = Traits::str(c, order);
        const bool compound = Traits::compound(c, order);
        std::string term;
        if (mono.empty())
            term = compound ? "(" + coef + ")" : coef;
        else if (coef == "1")
            term = mono;
        else if (coef == "-1")
            term = "-" + mono;
        else
            term = (compound ? "(" + coef + ")" : coef) + "*" + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

/// Canonical text: headers when needed, then one polynomial per line.
template <typename C>
std::string format_system(const PolySystem<C>& F)
{
    std::string out;
    if (F.names != default_variable_names(F.nvars)) {
        out += "vars: ";
        for (std::size_t i = 0; i < F.names.size(); ++i)
            out += (i ? ", " : "") + F.names[i];
        out += ";\n";
    }
    const long order = root_order(F);
    if (order > 1)
        out += "root-order: " + std::to_string(order) + ";\n";
    for (const auto& f : F.polys)
        out += format_polynomial(f, F.names, order) + ";\n";
    return out;
}

} // namespace tropism

#endif // TROPISM_PARSER_HPP
