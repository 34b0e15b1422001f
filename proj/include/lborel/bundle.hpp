#pragma once

#include <map>
#include <optional>
#include <string>

#include "lborel/pontryagin.hpp"
#include "lborel/ring.hpp"
#include "lborel/ring_map.hpp"

namespace lborel {

// Vector-bundle data over a catalogued base: the total Pontryagin class
// (constant term 1), a rank that may be stable, and an optional Euler
// class kept for documentation of normal bundles.
struct BundleModel {
    std::string base_space;
    RingPtr ring;
    std::optional<int> rank; // nullopt = stable
    GradedElement total_pontryagin;
    std::optional<GradedElement> euler;
    bool oriented = true;

    void check() const {
        if (total_pontryagin.constant_term() != Rational(1))
            throw FailedAxiomCheck("bundle over '" + base_space +
                                   "': total Pontryagin class must have constant term 1");
        for (const auto& [name, c] : total_pontryagin.coefficients()) {
            if (ring->degree_of(name) % 4 != 0)
                throw FailedAxiomCheck("bundle over '" + base_space +
                                       "': Pontryagin support in degree not divisible by 4");
        }
        if (euler && rank) {
            auto d = euler->homogeneous_degree();
            if (d && *d != *rank)
                throw FailedAxiomCheck("bundle over '" + base_space +
                                       "': Euler class degree differs from rank");
        }
    }

    static BundleModel trivial(std::string base, RingPtr ring, int rank = 0) {
        BundleModel b;
        b.base_space = std::move(base);
        b.ring = ring;
        b.rank = rank;
        b.total_pontryagin = GradedElement::unit(ring);
        return b;
    }

    // p_i as homogeneous components of the total class, indexed by i
    std::map<int, GradedElement> pontryagin_components() const {
        std::map<int, GradedElement> out;
        for (int deg = 4; deg <= ring->top_degree; deg += 4) {
            GradedElement c = total_pontryagin.homogeneous_component(deg);
            if (!c.is_zero())
                out.emplace(deg / 4, c);
        }
        return out;
    }
};

// Hirzebruch L-class of the bundle: substitute the Pontryagin components
// into the cached L-polynomials and sum through the requested degree.
inline GradedElement l_class(const BundleModel& bundle, int up_to_degree,
                             const MultiplicativeSequence& seq) {
    if (up_to_degree > bundle.ring->top_degree)
        up_to_degree = bundle.ring->top_degree;
    auto components = bundle.pontryagin_components();
    GradedElement out = GradedElement::unit(bundle.ring);
    for (int j = 1; 4 * j <= up_to_degree; ++j) {
        if (j > seq.depth())
            throw CatalogueDepth("L-polynomial cache depth " + std::to_string(seq.depth()) +
                                 " too shallow for degree " + std::to_string(4 * j));
        out = out + seq.polynomial(j).substitute(components, bundle.ring);
    }
    return out;
}

// Multiplicative inverse of a class with constant term 1 (e.g. L^*(TBG_k)^{-1}).
inline GradedElement inverse_l_class(const GradedElement& c) {
    return inverse_unit_element(c);
}

inline BundleModel whitney_sum(const BundleModel& a, const BundleModel& b) {
    if (a.ring != b.ring)
        throw RingMismatch("whitney_sum of bundles over '" + a.base_space + "' and '" +
                           b.base_space + "'");
    BundleModel out;
    out.base_space = a.base_space;
    out.ring = a.ring;
    if (a.rank && b.rank)
        out.rank = *a.rank + *b.rank;
    out.total_pontryagin = a.total_pontryagin * b.total_pontryagin;
    if (a.euler && b.euler)
        out.euler = (*a.euler) * (*b.euler);
    out.oriented = a.oriented && b.oriented;
    return out;
}

inline BundleModel pullback_bundle(const RingMap& f, const BundleModel& b,
                                   std::string new_base) {
    if (f.source != b.ring)
        throw RingMismatch("pullback of bundle over '" + b.base_space +
                           "' along map '" + f.name + "'");
    BundleModel out;
    out.base_space = std::move(new_base);
    out.ring = f.target;
    out.rank = b.rank;
    out.total_pontryagin = f.apply(b.total_pontryagin);
    if (b.euler)
        out.euler = f.apply(*b.euler);
    out.oriented = b.oriented;
    return out;
}

} // namespace lborel
