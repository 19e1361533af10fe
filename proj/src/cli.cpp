#include "tropism/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tropism/binomial.hpp"
#include "tropism/initial.hpp"
#include "tropism/json.hpp"
#include "tropism/parser.hpp"
#include "tropism/polytope.hpp"
#include "tropism/puiseux.hpp"
#include "tropism/surface.hpp"

namespace tropism {

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::string cleaned;
    for (char ch : text)
        if (ch != '(' && ch != ')' && ch != '[' && ch != ']')
            cleaned += ch;
    std::vector<std::string> out;
    std::stringstream ss(cleaned);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

Exponent parse_vector(const std::string& text, std::size_t n)
{
    Exponent v;
    for (const auto& item : split_list(text)) {
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer vector: " + text);
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos)
            throw UsageError("not an integer vector: " + text);
        v.push_back(x);
    }
    if (v.size() != n)
        throw UsageError("vector " + text + " has " + std::to_string(v.size()) + " entries, the system has " +
                         std::to_string(n) + " variables");
    return v;
}

CyclotomicSystem load_system(const std::string& spec)
{
    if (spec.empty())
        throw UsageError("--system is required");
    if (spec == "illus3" || spec.rfind("cyclic:", 0) == 0) {
        try {
            return builtin_system(spec);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    std::ifstream in(spec);
    if (!in)
        throw UsageError("cannot read system file " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

MonomialParametrization load_rep(const std::string& spec)
{
    if (spec.empty())
        throw UsageError("--rep is required");
    if (spec.rfind("backelin:", 0) == 0) {
        const std::string m = spec.substr(9);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(m, &used);
        } catch (const std::exception&) {
            throw UsageError("bad Backelin order: " + spec);
        }
        if (used != m.size() || value < 2)
            throw UsageError("bad Backelin order: " + spec);
        return backelin_set(value);
    }
    std::ifstream in(spec);
    if (!in)
        throw UsageError("cannot read parametrization file " + spec);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(spec + ": " + e.what());
    }
    return parametrization_from_json(j);
}

std::string vec_str(const Exponent& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

std::string power_str(const std::vector<Rational>& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += "t" + std::to_string(i);
        if (e[i] != 1)
            out += "^" + (is_integer(e[i]) ? to_string(e[i]) : "(" + to_string(e[i]) + ")");
    }
    return out;
}

std::string term_str(const std::string& coef, const std::string& mono)
{
    const bool compound = coef.find_first_of(" +-", 1) != std::string::npos;
    if (mono.empty())
        return compound ? "(" + coef + ")" : coef;
    if (coef == "1")
        return mono;
    if (coef == "-1")
        return "-" + mono;
    return (compound ? "(" + coef + ")" : coef) + "*" + mono;
}

std::string join_terms(const std::vector<std::string>& terms)
{
    std::string out;
    for (const auto& t : terms) {
        if (out.empty())
            out = t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out.empty() ? "0" : out;
}

std::vector<Rational> to_rational(const Exponent& e)
{
    std::vector<Rational> out;
    for (auto x : e)
        out.emplace_back(x);
    return out;
}

void print_parametrization(std::ostream& out, const MonomialParametrization& p, const std::string& indent)
{
    const long order = p.root_order();
    if (order > 1)
        out << indent << "u = exp(2*pi*i/" << order << ")\n";
    for (std::size_t j = 0; j < p.n(); ++j)
        out << indent << "x" << j << " = " << term_str(p.coef[j].str(order), power_str(to_rational(p.exps[j]))) << "\n";
}

void print_development(std::ostream& out, const PuiseuxDevelopment& dev, const std::vector<std::string>& names)
{
    const Json j = development_json(dev);
    out << "  tropisms:";
    for (const auto& t : dev.tropisms)
        out << " " << vec_str(t);
    out << "\n  status: " << status_name(dev.status) << (dev.exact ? " (leading term is an exact solution)" : "")
        << "\n";
    const long order = j["root_order"].get<long>();
    if (order > 1)
        out << "  u = exp(2*pi*i/" << order << ")\n";
    for (std::size_t c = 0; c < dev.coords.size(); ++c) {
        const auto& cj = j["coords"][c];
        std::vector<std::string> terms{term_str(cj["coef"].get<std::string>(), power_str(dev.coords[c].leading.exp))};
        if (!cj["second"].is_null())
            for (std::size_t k = 0; k < dev.coords[c].second.size(); ++k)
                terms.push_back(term_str(cj["second"]["terms"][k]["coef"].get<std::string>(),
                                         power_str(dev.coords[c].second[k].exp)));
        out << "  " << names[c] << " = " << join_terms(terms) << "\n";
    }
    if (dev.curve && dev.status == DevelopmentStatus::CurveSecondTerm) {
        out << "  curve t_i = (g_i*s)^L, g = (";
        const auto& g = j["curve"]["direction"];
        for (std::size_t i = 0; i < g.size(); ++i)
            out << (i ? "," : "") << g[i].get<std::string>();
        out << "): corrections at s^" << dev.curve->order << ":";
        for (const auto& dlt : j["curve"]["delta"])
            out << " " << dlt.get<std::string>();
        out << "\n";
    }
    for (const auto& r : dev.residual_terms)
        out << "  remaining: " << r << "\n";
}

struct Context
{
    const RunConfig& cfg;
    std::ostream& out;
    bool json() const { return cfg.format == "json"; }
    void emit(const Json& j) const { out << j.dump(2) << "\n"; }
};

int cmd_parse(const Context& ctx)
{
    const auto F = load_system(ctx.cfg.system);
    if (ctx.json())
        ctx.emit(system_json(F));
    else
        ctx.out << format_system(F);
    return kSuccess;
}

int cmd_tropisms(const Context& ctx)
{
    const auto F = load_system(ctx.cfg.system);
    if (ctx.cfg.dim < 1 || ctx.cfg.dim > F.nvars)
        throw UsageError("--dim must be between 1 and the number of variables");
    PretropismOptions opts;
    opts.positive_first = ctx.cfg.positive_first;
    opts.threads = thread_budget();
    const auto records = pretropism_cones(supports_of(F), ctx.cfg.dim, opts);
    const auto shift = cyclic_shift_symmetry(F);
    std::vector<Orbit> orbits;
    if (shift)
        orbits = orbit_group(records, *shift);

    if (ctx.json()) {
        Json j;
        j["dim"] = ctx.cfg.dim;
        Json cones = Json::array();
        for (const auto& r : records) {
            Json c = cone_json(r.cone);
            c["interior"] = r.interior;
            cones.push_back(std::move(c));
        }
        j["cones"] = std::move(cones);
        if (shift) {
            Json os = Json::array();
            for (const auto& o : orbits)
                os.push_back(Json{{"representative", o.representative}, {"members", o.members}});
            j["orbits"] = std::move(os);
        } else {
            j["orbits"] = nullptr;
        }
        ctx.emit(j);
        return kSuccess;
    }
    ctx.out << records.size() << " cones of dimension >= " << ctx.cfg.dim << "\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& c = records[i].cone;
        ctx.out << "cone " << i << " (dim " << c.dim << "): rays";
        for (const auto& r : c.rays)
            ctx.out << " " << vec_str(r);
        if (!c.lineality.empty()) {
            ctx.out << " lineality";
            for (const auto& l : c.lineality)
                ctx.out << " " << vec_str(l);
        }
        ctx.out << "\n";
    }
    if (shift) {
        ctx.out << orbits.size() << " orbits under the cyclic shift\n";
        for (const auto& o : orbits) {
            ctx.out << "orbit of cone " << o.representative << ":";
            for (auto m : o.members)
                ctx.out << " " << m;
            ctx.out << "\n";
        }
    }
    return kSuccess;
}

int cmd_initforms(const Context& ctx)
{
    const auto F = load_system(ctx.cfg.system);
    if (ctx.cfg.vectors.empty())
        throw UsageError("initforms needs at least one --vector");
    std::vector<Exponent> vs;
    for (const auto& v : ctx.cfg.vectors)
        vs.push_back(parse_vector(v, F.nvars));
    const auto G = initial_form_system(F, vs);
    if (ctx.json())
        ctx.emit(system_json(G));
    else
        ctx.out << format_system(G);
    return kSuccess;
}

int cmd_solve_binomial(const Context& ctx)
{
    const auto F = load_system(ctx.cfg.system);
    const auto sys = binomial_system(F);
    const auto sol = solve_binomial(sys);
    const auto& pts = sol.solutions;
    long order = 1;
    for (const auto& p : pts.exact_points)
        for (const auto& c : p)
            order = lcm_order(order, c.order());
    std::vector<std::vector<std::string>> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::string> row;
        if (pts.exact)
            for (const auto& c : pts.exact_points[i])
                row.push_back(c.str(order));
        else
            for (const auto& c : pts.points[i])
                row.push_back(CoefficientTraits<Complex>::str(c));
        points.push_back(std::move(row));
    }
    std::vector<std::string> dens;
    for (const auto& d : sol.transform.denominators)
        dens.push_back(to_string(d));

    if (ctx.json()) {
        Json j;
        j["d"] = sol.d;
        j["transform"] = matrix_json(sol.transform.M);
        j["denominators"] = dens;
        j["residual"] = matrix_json(sol.residual);
        j["exact"] = pts.exact;
        j["root_order"] = order;
        j["solutions"] = points;
        ctx.emit(j);
        return kSuccess;
    }
    ctx.out << "parameters: " << sol.d << "\n";
    ctx.out << "transform M (x = y^M, rows y_0 .. y_" << sol.transform.n - 1 << "):\n";
    for (Eigen::Index i = 0; i < sol.transform.M.rows(); ++i) {
        ctx.out << " ";
        for (Eigen::Index k = 0; k < sol.transform.M.cols(); ++k)
            ctx.out << " " << to_string(sol.transform.M(i, k));
        ctx.out << "\n";
    }
    if (order > 1)
        ctx.out << "u = exp(2*pi*i/" << order << ")\n";
    ctx.out << points.size() << " solutions for y_" << sol.d << " .. y_" << sol.transform.n - 1
            << (pts.exact ? "" : " (floating point)") << "\n";
    for (const auto& row : points) {
        ctx.out << " ";
        for (const auto& s : row)
            ctx.out << " " << s;
        ctx.out << "\n";
    }
    return kSuccess;
}

int cmd_puiseux(const Context& ctx)
{
    const auto F = load_system(ctx.cfg.system);
    if (ctx.cfg.dim < 1 || ctx.cfg.dim >= F.nvars)
        throw UsageError("--dim must be between 1 and the number of variables minus one");
    DevelopConfig dc;
    dc.solver.backend = parse_backend(ctx.cfg.backend);
    dc.solver.root_order = ctx.cfg.roots_order;
    dc.solver.max_grid = ctx.cfg.max_grid;
    dc.solver.seed = ctx.cfg.seed;
    dc.positive_first = ctx.cfg.positive_first;
    dc.expand_orbits = ctx.cfg.expand_orbits;
    dc.threads = thread_budget();
    const auto r = develop(F, ctx.cfg.dim, dc);

    if (ctx.json()) {
        Json j;
        j["dim"] = ctx.cfg.dim;
        Json devs = Json::array();
        for (const auto& dev : r.developments)
            devs.push_back(development_json(dev));
        j["developments"] = std::move(devs);
        Json diags = Json::array();
        for (const auto& d : r.diagnostics)
            diags.push_back(diagnostic_json(d));
        j["diagnostics"] = std::move(diags);
        ctx.emit(j);
        return kSuccess;
    }
    ctx.out << r.developments.size() << " developments, " << r.diagnostics.size() << " diagnostics\n";
    for (std::size_t i = 0; i < r.developments.size(); ++i) {
        ctx.out << "development " << i << "\n";
        print_development(ctx.out, r.developments[i], F.names);
    }
    for (const auto& d : r.diagnostics) {
        ctx.out << "diagnostic: rays";
        for (const auto& ray : d.rays)
            ctx.out << " " << vec_str(ray);
        ctx.out << ": " << d.reason << "\n";
    }
    return kSuccess;
}

int cmd_verify(const Context& ctx)
{
    const auto F = load_system(ctx.cfg.system);
    if (ctx.cfg.point.empty() == ctx.cfg.rep.empty())
        throw UsageError("verify needs exactly one of --point and --rep");
    Json j;
    bool ok = false;
    std::vector<std::string> residuals;
    if (!ctx.cfg.point.empty()) {
        const long order = ctx.cfg.roots_order > 0 ? ctx.cfg.roots_order : root_order(F);
        std::vector<Cyclotomic> point;
        for (const auto& item : split_list(ctx.cfg.point)) {
            try {
                point.push_back(parse_coefficient(item, order));
            } catch (const ParseError& e) {
                throw UsageError("bad coordinate '" + item + "': " + e.what());
            }
        }
        if (point.size() != F.nvars)
            throw UsageError("point has " + std::to_string(point.size()) + " coordinates, the system has " +
                             std::to_string(F.nvars) + " variables");
        long print = order;
        for (const auto& c : point)
            print = lcm_order(print, c.order());
        for (const auto& f : F.polys) {
            Cyclotomic v(0L);
            for (const auto& [e, c] : f.terms()) {
                Cyclotomic t = c;
                for (std::size_t k = 0; k < e.size(); ++k)
                    if (e[k] != 0) {
                        if (point[k].is_zero() && e[k] < 0)
                            throw DomainError("point has a zero coordinate under a negative power");
                        t *= point[k].pow(e[k]);
                    }
                v += t;
            }
            print = lcm_order(print, v.order());
            residuals.push_back(v.str(print));
        }
        ok = std::all_of(residuals.begin(), residuals.end(), [](const std::string& s) { return s == "0"; });
        j["kind"] = "point";
    } else {
        const auto p = load_rep(ctx.cfg.rep);
        const auto R = substitute(F, p);
        const long order = std::max(1L, root_order(R));
        for (const auto& f : R.polys)
            residuals.push_back(format_polynomial(f, R.names, order));
        ok = std::all_of(R.polys.begin(), R.polys.end(), [](const CyclotomicPoly& f) { return f.is_zero(); });
        j["kind"] = "parametrization";
    }
    if (ctx.json()) {
        j["satisfied"] = ok;
        j["residuals"] = residuals;
        ctx.emit(j);
        return kSuccess;
    }
    ctx.out << (ok ? "satisfied" : "not satisfied") << "\n";
    for (std::size_t i = 0; i < residuals.size(); ++i)
        ctx.out << "  f" << i << " -> " << residuals[i] << "\n";
    return kSuccess;
}

std::optional<CyclotomicSystem> optional_system(const RunConfig& cfg)
{
    if (cfg.system.empty())
        return std::nullopt;
    return load_system(cfg.system);
}

void require_satisfied(const std::optional<CyclotomicSystem>& F, const MonomialParametrization& p)
{
    if (F && !satisfies(*F, p))
        throw DomainError("the parametrization does not satisfy the system");
}

int cmd_degree(const Context& ctx)
{
    const auto F = optional_system(ctx.cfg);
    const auto p = load_rep(ctx.cfg.rep);
    require_satisfied(F, p);
    const auto deg = degree_of_parametrization(p, ctx.cfg.seed);
    if (ctx.json()) {
        Json j;
        j["degree"] = deg;
        j["d"] = p.d;
        j["seed"] = ctx.cfg.seed;
        j["parametrization"] = parametrization_json(p);
        ctx.emit(j);
    } else {
        ctx.out << deg << "\n";
    }
    return kSuccess;
}

int cmd_components(const Context& ctx)
{
    const auto F = optional_system(ctx.cfg);
    const auto p = load_rep(ctx.cfg.rep);
    require_satisfied(F, p);
    const auto orbit = orbit_expansion(p, dihedral_orderings(p.n()));
    std::vector<std::int64_t> degrees;
    for (const auto& q : orbit) {
        require_satisfied(F, q);
        degrees.push_back(degree_of_parametrization(q, ctx.cfg.seed));
    }
    if (ctx.json()) {
        Json j;
        j["count"] = orbit.size();
        Json cs = Json::array();
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            Json c = parametrization_json(orbit[i]);
            c["degree"] = degrees[i];
            cs.push_back(std::move(c));
        }
        j["components"] = std::move(cs);
        ctx.emit(j);
        return kSuccess;
    }
    ctx.out << orbit.size() << " components under forward and backward shifts\n";
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        ctx.out << "component " << i << " (degree " << degrees[i] << ")\n";
        print_parametrization(ctx.out, orbit[i], "  ");
    }
    return kSuccess;
}

void add_system(CLI::App* sub, RunConfig& cfg, bool required)
{
    auto* opt = sub->add_option("--system", cfg.system, "system file, cyclic:n or illus3");
    if (required)
        opt->required();
}

void add_format(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

} // namespace

unsigned thread_budget()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TROPISM_FORGE_THREADS")) {
        const std::string s(env);
        std::size_t used = 0;
        unsigned long cap = 0;
        try {
            cap = std::stoul(s, &used);
        } catch (const std::exception&) {
            throw UsageError("TROPISM_FORGE_THREADS must be a positive integer");
        }
        if (used != s.size() || cap == 0)
            throw UsageError("TROPISM_FORGE_THREADS must be a positive integer");
        n = std::min<unsigned long>(n, cap);
    }
    return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Puiseux series developments of positive-dimensional solution sets", "tropism-forge"};
    app.require_subcommand(1);

    auto* parse = app.add_subcommand("parse", "read a system and print it in canonical form");
    add_system(parse, cfg, true);
    add_format(parse, cfg);

    auto* trop = app.add_subcommand("tropisms", "pretropism cones and their orbits");
    add_system(trop, cfg, true);
    trop->add_option("--dim", cfg.dim, "minimal cone dimension")->check(CLI::PositiveNumber);
    trop->add_flag("--positive-first,!--no-positive-first", cfg.positive_first,
                   "keep only cones with a generator whose first coordinate is positive (default on)");
    add_format(trop, cfg);

    auto* init = app.add_subcommand("initforms", "nested initial forms in_v1(in_v2(...(F)))");
    add_system(init, cfg, true);
    init->add_option("--vector", cfg.vectors, "comma separated integer vector; repeat for nesting")->required();
    add_format(init, cfg);

    auto* bin = app.add_subcommand("solve-binomial", "solve a system with two terms per equation");
    add_system(bin, cfg, true);
    add_format(bin, cfg);

    auto* pui = app.add_subcommand("puiseux", "leading and second terms of Puiseux series");
    add_system(pui, cfg, true);
    pui->add_option("--dim", cfg.dim, "dimension of the solution set")->check(CLI::PositiveNumber);
    pui->add_option("--roots-order", cfg.roots_order, "search the torus of m-th roots of unity")
        ->check(CLI::PositiveNumber);
    pui->add_option("--max-grid", cfg.max_grid, "cap on grid candidates")->check(CLI::PositiveNumber);
    pui->add_option("--backend", cfg.backend, "initial form solver")
        ->check(CLI::IsMember({"auto", "grid", "binomial"}));
    pui->add_option("--seed", cfg.seed, "seed for generic choices");
    pui->add_flag("--positive-first,!--no-positive-first", cfg.positive_first,
                  "develop only cones with a positive-first generator (default on)");
    pui->add_flag("--expand-orbits", cfg.expand_orbits, "develop every cone, not one per orbit");
    add_format(pui, cfg);

    auto* ver = app.add_subcommand("verify", "substitute a point or a parametrization");
    add_system(ver, cfg, true);
    ver->add_option("--point", cfg.point, "comma separated coordinates, u = exp(2 pi i/m)");
    ver->add_option("--rep", cfg.rep, "backelin:m or a parametrization JSON file");
    ver->add_option("--roots-order", cfg.roots_order, "order m of u in --point")->check(CLI::PositiveNumber);
    add_format(ver, cfg);

    auto* deg = app.add_subcommand("degree", "degree of a monomial parametrization");
    add_system(deg, cfg, false);
    deg->add_option("--rep", cfg.rep, "backelin:m or a parametrization JSON file")->required();
    deg->add_option("--seed", cfg.seed, "seed for the random hyperplanes");
    add_format(deg, cfg);

    auto* comp = app.add_subcommand("components", "orbit of a parametrization under shifts and reflection");
    add_system(comp, cfg, false);
    comp->add_option("--rep", cfg.rep, "backelin:m or a parametrization JSON file")->required();
    comp->add_option("--seed", cfg.seed, "seed for the random hyperplanes");
    add_format(comp, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    const Context ctx{cfg, out};
    try {
        if (cfg.subcommand == "parse")
            return cmd_parse(ctx);
        if (cfg.subcommand == "tropisms")
            return cmd_tropisms(ctx);
        if (cfg.subcommand == "initforms")
            return cmd_initforms(ctx);
        if (cfg.subcommand == "solve-binomial")
            return cmd_solve_binomial(ctx);
        if (cfg.subcommand == "puiseux")
            return cmd_puiseux(ctx);
        if (cfg.subcommand == "verify")
            return cmd_verify(ctx);
        if (cfg.subcommand == "degree")
            return cmd_degree(ctx);
        return cmd_components(ctx);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError& e) {
        err << "syntax error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

} // namespace tropism
