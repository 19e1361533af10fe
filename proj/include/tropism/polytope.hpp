/**
 * Newton polytopes, initial forms and pretropism cones.
 *
 * Faces are selected by MINIMAL inner product throughout.  Cones are handled
 * by an incremental double description (generators plus tight-constraint
 * sets) over 64-bit integers with overflow checks; supports and cones in this
 * library are small enough that no entry comes near the limit in practice.
 */

#ifndef TROPISM_POLYTOPE_HPP
#define TROPISM_POLYTOPE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "tropism/laurent.hpp"

namespace tropism {

using Support = std::vector<Exponent>;

struct Edge
{
    std::size_t a = 0;  // indices into NewtonPolytope::vertices
    std::size_t b = 0;
    Exponent direction;  // primitive, vertices[b] - vertices[a] scaled down
};

struct NewtonPolytope
{
    Support points;
    Support vertices;
    std::vector<Edge> edges;
};

/**
 * Polyhedral cone {v : <h,v> >= 0 for h in inequalities, <e,v> = 0 for e in
 * equalities}, kept together with its generators: extreme rays of the
 * pointed part plus a basis of the lineality space.
 */
class DDCone
{
public:
    DDCone() = default;
    /// The whole space R^n.
    explicit DDCone(std::size_t n);

    void add_inequality(const Exponent& h);
    void add_equality(const Exponent& e);

    std::size_t ambient() const { return n_; }
    const std::vector<Exponent>& rays() const { return rays_; }
    const std::vector<Exponent>& lineality() const { return lineality_; }
    const std::vector<Exponent>& inequalities() const { return ineqs_; }
    const std::vector<Exponent>& equalities() const { return eqs_; }

    std::size_t dim() const;
    bool contains(const Exponent& v) const;
    /// Every generator of `other` lies in this cone.
    bool contains(const DDCone& other) const;
    /// A point of the relative interior: the sum of the extreme rays.
    Exponent interior_point() const;
    /// Canonical generator data: sorted rays, then the lineality basis in reduced echelon form.
    std::vector<Exponent> canonical_key() const;

private:
    using Bits = std::vector<std::uint64_t>;

    std::size_t n_ = 0;
    std::vector<Exponent> ineqs_;
    std::vector<Exponent> eqs_;
    std::vector<Exponent> rays_;
    std::vector<Bits> tight_;
    std::vector<Exponent> lineality_;
};

/// Primitive integer vector in the direction of v (v != 0).
Exponent primitive_vector(const Exponent& v);
/// Rank of a set of integer vectors.
std::size_t vector_rank(const std::vector<Exponent>& vs);

NewtonPolytope newton_polytope(const Support& support);

template <typename C>
NewtonPolytope newton_polytope(const LaurentPolynomial<C>& f)
{
    if (f.is_zero())
        throw DomainError("Newton polytope of the zero polynomial");
    return newton_polytope(f.support());
}

/// Points of A minimizing <a,v>; v must be nonzero.
Support initial_support(const Support& A, const Exponent& v);
/// Same, allowing v = 0 (which selects all of A).
Support minimal_face(const Support& A, const Exponent& v);

template <typename C>
LaurentPolynomial<C> initial_form(const LaurentPolynomial<C>& f, const Exponent& v)
{
    if (f.is_zero())
        return f;
    const Support face = initial_support(f.support(), v);
    LaurentPolynomial<C> out(f.nvars());
    for (const auto& a : face)
        out.add_term(a, f.terms().at(a));
    return out;
}

/// in_{vs[0]}(in_{vs[1]}( ... in_{vs[last]}(F) ... )): the last vector acts first.
template <typename C>
PolySystem<C> initial_form_system(const PolySystem<C>& F, const std::vector<Exponent>& vs)
{
    PolySystem<C> out = F;
    for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        for (auto& f : out.polys)
            f = initial_form(f, *it);
    return out;
}

struct Cone
{
    std::vector<Exponent> rays;
    std::vector<Exponent> lineality;
    std::size_t dim = 0;

    /// Rays followed by +/- each lineality basis vector.
    std::vector<Exponent> generators() const;
    friend bool operator==(const Cone& a, const Cone& b) { return a.rays == b.rays && a.lineality == b.lineality; }
};

struct PretropismRecord
{
    Cone cone;
    DDCone hrep;
    Exponent interior;
    /// in_v(A_i) for v = interior, one per polynomial.
    std::vector<Support> certificates;
};

struct PretropismOptions
{
    bool positive_first = true;
    unsigned threads = 1;
};

/// |in_v(A_i)| >= 2 for every support.
bool is_pretropism(const std::vector<Support>& supports, const Exponent& v);

std::vector<PretropismRecord> pretropism_cones(const std::vector<Support>& supports, std::size_t d,
                                               const PretropismOptions& options = {});

template <typename C>
std::vector<Support> supports_of(const PolySystem<C>& F)
{
    std::vector<Support> out;
    for (const auto& f : F.polys)
        out.push_back(f.support());
    return out;
}

template <typename C>
std::vector<PretropismRecord> pretropism_cones(const PolySystem<C>& F, std::size_t d, bool positive_first)
{
    PretropismOptions options;
    options.positive_first = positive_first;
    return pretropism_cones(supports_of(F), d, options);
}

using Permutation = std::vector<std::size_t>;

/// Coordinates moved by the permutation: w[perm[i]] = v[i].
Exponent permute(const Exponent& v, const Permutation& perm);
Cone permute(const Cone& c, const Permutation& perm);
Cone canonical_cone(std::vector<Exponent> rays, std::vector<Exponent> lineality);

struct Orbit
{
    std::size_t representative = 0;  // index into the records
    std::vector<std::size_t> members;
};

std::vector<Orbit> orbit_group(const std::vector<PretropismRecord>& records, const Permutation& generator);

/// The forward shift i -> i+1 mod n when it maps the system to itself, else nullopt.
template <typename C>
std::optional<Permutation> cyclic_shift_symmetry(const PolySystem<C>& F)
{
    const std::size_t n = F.nvars;
    if (n < 2)
        return std::nullopt;
    Permutation shift(n);
    for (std::size_t i = 0; i < n; ++i)
        shift[i] = (i + 1) % n;
    for (const auto& f : F.polys) {
        LaurentPolynomial<C> g(n);
        for (const auto& [e, c] : f.terms())
            g.add_term(permute(e, shift), c);
        if (!(g == f))
            return std::nullopt;
    }
    return shift;
}

} // namespace tropism

#endif // TROPISM_POLYTOPE_HPP
