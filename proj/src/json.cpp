#include "tropism/json.hpp"

#include <algorithm>

#include "tropism/parser.hpp"

namespace tropism {

namespace {

Json exponent_json(const Exponent& e)
{
    Json out = Json::array();
    for (auto x : e)
        out.push_back(x);
    return out;
}

Json rows_json(const std::vector<Exponent>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back(exponent_json(r));
    return out;
}

Json rational_exp_json(const std::vector<Rational>& e)
{
    Json out = Json::array();
    for (const auto& x : e)
        out.push_back(to_string(x));
    return out;
}

long development_order(const PuiseuxDevelopment& dev)
{
    long order = 1;
    for (const auto& cs : dev.coords) {
        order = lcm_order(order, cs.leading.coef.order());
        for (const auto& t : cs.second)
            order = lcm_order(order, t.coef.order());
    }
    if (dev.curve)
        for (const auto& c : dev.curve->delta)
            order = lcm_order(order, c.order());
    return order;
}

Json term_json(const SeriesTerm& t, bool exact, long order)
{
    Json out;
    out["exp"] = rational_exp_json(t.exp);
    out["coef"] = exact ? t.coef.str(order) : CoefficientTraits<Complex>::str(t.numeric);
    return out;
}

Rational json_rational(const Json& x)
{
    if (x.is_number_integer())
        return Rational(x.get<long long>());
    if (x.is_string())
        return Rational(x.get<std::string>());
    throw DomainError("exponent entries must be integers or rational strings");
}

} // namespace

Json matrix_json(const IntMatrix& m)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json matrix_json(const RatMatrix& m)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json system_json(const CyclotomicSystem& F)
{
    const long order = root_order(F);
    Json out;
    out["nvars"] = F.nvars;
    out["vars"] = F.names;
    out["root_order"] = order;
    Json polys = Json::array();
    for (const auto& f : F.polys) {
        std::vector<Exponent> keys = f.support();
        std::sort(keys.begin(), keys.end(), graded_before);
        Json terms = Json::array();
        for (const auto& e : keys) {
            Json t;
            t["exp"] = exponent_json(e);
            t["coef"] = f.terms().at(e).str(order);
            terms.push_back(std::move(t));
        }
        Json p;
        p["terms"] = std::move(terms);
        polys.push_back(std::move(p));
    }
    out["polys"] = std::move(polys);
    return out;
}

Json cone_json(const Cone& c)
{
    Json out;
    out["dim"] = c.dim;
    out["rays"] = rows_json(c.rays);
    out["lineality"] = rows_json(c.lineality);
    return out;
}

Json development_json(const PuiseuxDevelopment& dev)
{
    const long order = development_order(dev);
    const bool exact = dev.exact_coefficients;
    Json out;
    out["tropisms"] = rows_json(dev.tropisms);
    out["root_order"] = order;
    out["transform"] = matrix_json(dev.transform.M);
    Json sol = Json::array();
    if (exact)
        for (const auto& c : dev.solution)
            sol.push_back(c.str(order));
    else
        for (const auto& c : dev.numeric_solution)
            sol.push_back(CoefficientTraits<Complex>::str(c));
    out["solution"] = std::move(sol);

    Json coords = Json::array();
    for (const auto& cs : dev.coords) {
        Json c = term_json(cs.leading, exact, order);
        if (cs.second.empty()) {
            c["second"] = nullptr;
        } else {
            Json terms = Json::array();
            for (const auto& t : cs.second)
                terms.push_back(term_json(t, exact, order));
            c["second"] = Json{{"terms", std::move(terms)}};
        }
        coords.push_back(std::move(c));
    }
    out["coords"] = std::move(coords);
    out["exact"] = dev.exact;
    out["status"] = status_name(dev.status);
    if (dev.curve) {
        Json curve;
        curve["direction"] = rational_exp_json(dev.curve->direction);
        curve["order"] = dev.curve->order;
        Json delta = Json::array();
        for (const auto& c : dev.curve->delta)
            delta.push_back(c.str(order));
        curve["delta"] = std::move(delta);
        out["curve"] = std::move(curve);
    } else {
        out["curve"] = nullptr;
    }
    out["diagnostics"] = dev.residual_terms;
    return out;
}

Json diagnostic_json(const Diagnostic& d)
{
    Json out;
    out["rays"] = rows_json(d.rays);
    out["reason"] = d.reason;
    return out;
}

Json parametrization_json(const MonomialParametrization& p)
{
    const long order = p.root_order();
    Json out;
    out["d"] = p.d;
    out["root_order"] = order;
    Json coords = Json::array();
    for (std::size_t j = 0; j < p.n(); ++j) {
        Json c;
        c["exp"] = exponent_json(p.exps[j]);
        c["coef"] = p.coef[j].str(order);
        coords.push_back(std::move(c));
    }
    out["coords"] = std::move(coords);
    return out;
}

MonomialParametrization parametrization_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
        throw DomainError("parametrization JSON needs a coords array");
    const long order = j.value("root_order", 1L);
    if (order < 1)
        throw DomainError("root_order must be positive");
    MonomialParametrization p;
    bool first = true;
    for (const auto& c : j["coords"]) {
        if (!c.contains("exp") || !c["exp"].is_array() || !c.contains("coef") || !c["coef"].is_string())
            throw DomainError("each coordinate needs exp and coef");
        Exponent e;
        for (const auto& x : c["exp"]) {
            const Rational r = json_rational(x);
            if (!is_integer(r))
                throw DomainError("parametrization exponents must be integers, got " + to_string(r));
            e.push_back(to_int64(r));
        }
        if (first)
            p.d = e.size();
        first = false;
        p.exps.push_back(std::move(e));
        p.coef.push_back(parse_coefficient(c["coef"].get<std::string>(), order));
    }
    if (j.contains("d") && j["d"].get<std::size_t>() != p.d)
        throw DomainError("d does not match the exponent length");
    p.validate();
    return p;
}

} // namespace tropism
