#pragma once

#include <map>
#include <memory>
#include <string>

#include "lborel/errors.hpp"
#include "lborel/ring.hpp"

namespace lborel {

// Degree-preserving multiplicative map between ring presentations, stored
// as images of the source basis. An image may be zero (e.g. classes that
// restrict to zero); a nonzero image must be homogeneous of the source
// degree.
class RingMap {
public:
    std::string name;
    RingPtr source;
    RingPtr target;
    std::map<std::string, GradedElement> images;

    GradedElement apply(const GradedElement& x) const {
        if (x.ring() != source)
            throw RingMismatch("map '" + name + "' applied to element of '" +
                               (x.ring() ? x.ring()->name : "?") + "'");
        GradedElement out(target);
        for (const auto& [bn, c] : x.coefficients()) {
            const GradedElement& img = image_of(bn);
            for (const auto& [tn, tc] : img.coefficients())
                out.add_term(tn, c * tc);
        }
        return out;
    }

    const GradedElement& image_of(const std::string& basis_name) const {
        auto it = images.find(basis_name);
        if (it == images.end())
            throw MalformedDocument("map '" + name + "' lacks image of '" + basis_name + "'");
        return it->second;
    }

    // Checked at load: totality, grading, unit, multiplicativity on all
    // source basis pairs.
    void check() const {
        for (const auto& [deg, names] : source->basis_by_degree)
            for (const auto& n : names) {
                const GradedElement& img = image_of(n);
                if (img.ring() != target)
                    throw MalformedDocument("map '" + name + "': image of '" + n +
                                            "' lives in the wrong ring");
                auto d = img.homogeneous_degree();
                if (d && *d != deg)
                    throw FailedAxiomCheck("map '" + name + "': image of '" + n +
                                           "' is not degree-preserving");
                if (!d && !img.is_zero())
                    throw FailedAxiomCheck("map '" + name + "': image of '" + n +
                                           "' is not homogeneous");
            }
        if (image_of("1") != GradedElement::unit(target))
            throw FailedAxiomCheck("map '" + name + "': unit not sent to unit");
        std::vector<std::string> all;
        for (const auto& [deg, names] : source->basis_by_degree)
            for (const auto& n : names)
                if (n != "1")
                    all.push_back(n);
        for (const auto& a : all)
            for (const auto& b : all) {
                if (a > b)
                    continue;
                GradedElement lhs = apply(GradedElement(source, a) * GradedElement(source, b));
                GradedElement rhs = image_of(a) * image_of(b);
                if (lhs != rhs)
                    throw FailedAxiomCheck("map '" + name + "': multiplicativity fails on (" +
                                           a + ", " + b + ")");
            }
    }
};

using RingMapPtr = std::shared_ptr<const RingMap>;

inline RingMap compose(const RingMap& after, const RingMap& before) {
    if (before.target != after.source)
        throw RingMismatch("composition of '" + after.name + "' after '" + before.name + "'");
    RingMap out;
    out.name = after.name + "." + before.name;
    out.source = before.source;
    out.target = after.target;
    for (const auto& [n, img] : before.images)
        out.images.emplace(n, after.apply(img));
    return out;
}

inline RingMap identity_map(const RingPtr& ring) {
    RingMap out;
    out.name = "id." + ring->name;
    out.source = ring;
    out.target = ring;
    for (const auto& [deg, names] : ring->basis_by_degree)
        for (const auto& n : names)
            out.images.emplace(n, GradedElement(ring, n));
    return out;
}

} // namespace lborel
