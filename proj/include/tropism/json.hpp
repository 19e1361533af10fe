/**
 * JSON forms of systems, cones, developments and parametrizations.
 * Big integers and rationals are decimal strings.  Cyclotomic coefficients
 * are strings in u = exp(2 pi i/m) with m stored alongside as root_order.
 */

#ifndef TROPISM_JSON_HPP
#define TROPISM_JSON_HPP

#include <json.hpp>

#include "tropism/polytope.hpp"
#include "tropism/puiseux.hpp"
#include "tropism/surface.hpp"

namespace tropism {

using Json = nlohmann::ordered_json;

Json matrix_json(const IntMatrix& m);
Json matrix_json(const RatMatrix& m);

/// {nvars, vars, root_order, polys: [{terms: [{exp, coef}]}]}
Json system_json(const CyclotomicSystem& F);

Json cone_json(const Cone& c);

/// {tropisms, root_order, coords: [{exp, coef, second}], exact, status, diagnostics, ...}
Json development_json(const PuiseuxDevelopment& dev);

Json diagnostic_json(const Diagnostic& d);

/// {d, root_order, coords: [{exp, coef}]}
Json parametrization_json(const MonomialParametrization& p);

/**
 * Inverse of parametrization_json.  Also accepts a development object whose
 * leading exponents are integral (the second terms are ignored).
 */
MonomialParametrization parametrization_from_json(const Json& j);

} // namespace tropism

#endif // TROPISM_JSON_HPP
