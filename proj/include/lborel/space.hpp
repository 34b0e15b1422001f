#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lborel/bundle.hpp"
#include "lborel/ratmat.hpp"
#include "lborel/ring.hpp"
#include "lborel/ring_map.hpp"

namespace lborel {

enum class SpaceKind { Manifold, Singular };

// Prescribed homology data for singular models: an ordered degree-indexed
// basis carrying the Goresky-MacPherson class coefficients. Singular
// L-data is catalogue input, never computed.
struct LHomologyData {
    std::map<int, std::vector<std::string>> basis_by_degree; // homology degree
    std::string fundamental;
    std::map<std::string, Rational> l_coefficients;
    // optional module action for cap products: (ring element, basis) -> class
    std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>> cap_action;

    std::map<std::string, int> degree_of;

    void finalize() {
        degree_of.clear();
        for (const auto& [deg, names] : basis_by_degree)
            for (const auto& n : names) {
                if (degree_of.count(n))
                    throw MalformedDocument("duplicate homology basis name '" + n + "'");
                degree_of[n] = deg;
            }
        if (!fundamental.empty() && !degree_of.count(fundamental))
            throw MalformedDocument("unknown fundamental class '" + fundamental + "'");
        for (const auto& [n, c] : l_coefficients)
            if (!degree_of.count(n))
                throw MalformedDocument("L-class coefficient on unknown basis '" + n + "'");
    }
};

// A finitely presented closed space: cohomology ring with top-degree
// evaluation (integration against the orientation), optional tangent
// data for manifolds, optional prescribed L-homology for singular models.
struct SpaceModel : public std::enable_shared_from_this<SpaceModel> {
    std::string name;
    int dimension = 0;
    SpaceKind kind = SpaceKind::Manifold;
    RingPtr ring; // may be null for singular models without a catalogued ring
    std::map<std::string, Rational> evaluation;
    bool orientable = true;
    std::optional<BundleModel> tangent;
    std::optional<LHomologyData> l_homology;

    // set on Kunneth products
    std::shared_ptr<const SpaceModel> factor_a;
    std::shared_ptr<const SpaceModel> factor_b;
    bool is_product() const { return factor_a != nullptr; }

    bool has_odd_classes() const {
        if (ring)
            for (const auto& [deg, names] : ring->basis_by_degree)
                if (deg % 2 && !names.empty())
                    return true;
        return false;
    }

    Rational evaluate(const GradedElement& top) const {
        Rational out(0);
        for (const auto& [n, c] : top.coefficients()) {
            auto it = evaluation.find(n);
            if (it != evaluation.end())
                out += c * it->second;
        }
        return out;
    }

    void check() const;
};

using SpacePtr = std::shared_ptr<const SpaceModel>;

inline void SpaceModel::check() const {
    if (kind == SpaceKind::Manifold) {
        if (!ring)
            throw MalformedDocument("manifold model '" + name + "' without a ring");
        if (ring->top_degree > dimension)
            throw FailedAxiomCheck("manifold model '" + name +
                                   "': ring exceeds the dimension");
        for (const auto& [n, c] : evaluation)
            if (ring->degree_of(n) != dimension)
                throw MalformedDocument("model '" + name + "': evaluation on '" + n +
                                        "' which is not of top degree");
        bool top_nonzero = false;
        for (const auto& n : ring->basis_at(dimension))
            if (evaluation.count(n) && !evaluation.at(n).is_zero())
                top_nonzero = true;
        if (top_nonzero != orientable)
            throw FailedAxiomCheck("model '" + name +
                                   "': nonzero top evaluation must match orientability");
        if (orientable) {
            // Poincare duality: the pairing H^p x H^{m-p} -> Q must be
            // nondegenerate in every degree (rank check over Q)
            for (int p = 0; p <= dimension; ++p) {
                const auto& rows = ring->basis_at(p);
                const auto& cols = ring->basis_at(dimension - p);
                if (rows.size() != cols.size())
                    throw FailedAxiomCheck("model '" + name + "': rank mismatch H^" +
                                           std::to_string(p) + " vs complementary degree");
                if (rows.empty())
                    continue;
                RatMatrix m(rows.size(), RatVector(cols.size(), Rational(0)));
                auto self = ring;
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (std::size_t j = 0; j < cols.size(); ++j)
                        m[i][j] = evaluate(GradedElement(self, rows[i]) *
                                           GradedElement(self, cols[j]));
                if (mat_rank(m) != rows.size())
                    throw FailedAxiomCheck("model '" + name +
                                           "': degenerate duality pairing in degree " +
                                           std::to_string(p));
            }
        }
        if (tangent) {
            if (tangent->ring != ring)
                throw MalformedDocument("model '" + name + "': tangent bundle over foreign ring");
            tangent->check();
        }
    } else {
        if (!l_homology)
            throw MalformedDocument("singular model '" + name + "' without l_homology data");
    }
}

// Homology class on a space model. On manifold models the class is
// represented by its Poincare-dual cohomology element; on singular models
// (including products with a singular factor) by coefficients on the
// prescribed homology basis.
class HomologyClass {
public:
    HomologyClass() = default;
    HomologyClass(SpacePtr space, GradedElement dual)
        : space_(std::move(space)), dual_(std::move(dual)) {}
    HomologyClass(SpacePtr space, std::map<std::string, Rational> coeff)
        : space_(std::move(space)), coeff_(std::move(coeff)) {
        prune();
    }

    const SpacePtr& space() const { return space_; }
    const GradedElement& dual() const { return dual_; }
    const std::map<std::string, Rational>& coefficients() const { return coeff_; }
    bool manifold_rep() const { return space_->kind == SpaceKind::Manifold; }

    bool is_zero() const {
        return manifold_rep() ? dual_.is_zero() : coeff_.empty();
    }

    HomologyClass homogeneous_component(int homology_degree) const {
        if (manifold_rep())
            return HomologyClass(space_, dual_.homogeneous_component(
                                             space_->dimension - homology_degree));
        std::map<std::string, Rational> out;
        for (const auto& [n, c] : coeff_)
            if (space_->l_homology->degree_of.at(n) == homology_degree)
                out[n] = c;
        return HomologyClass(space_, std::move(out));
    }

    std::vector<int> supported_degrees() const {
        std::vector<int> out;
        if (manifold_rep()) {
            for (int d : dual_.supported_degrees())
                out.push_back(space_->dimension - d);
        } else {
            for (const auto& [n, c] : coeff_) {
                int d = space_->l_homology->degree_of.at(n);
                if (std::find(out.begin(), out.end(), d) == out.end())
                    out.push_back(d);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend HomologyClass operator+(const HomologyClass& a, const HomologyClass& b) {
        if (a.space_ != b.space_)
            throw RingMismatch("homology classes on different spaces");
        if (a.manifold_rep())
            return HomologyClass(a.space_, a.dual_ + b.dual_);
        HomologyClass out = a;
        for (const auto& [n, c] : b.coeff_) {
            auto [it, inserted] = out.coeff_.try_emplace(n, c);
            if (!inserted)
                it->second += c;
        }
        out.prune();
        return out;
    }
    friend HomologyClass operator*(const Rational& s, const HomologyClass& a) {
        if (a.manifold_rep())
            return HomologyClass(a.space_, s * a.dual_);
        std::map<std::string, Rational> out;
        if (!s.is_zero())
            for (const auto& [n, c] : a.coeff_)
                out[n] = s * c;
        return HomologyClass(a.space_, std::move(out));
    }

    bool operator==(const HomologyClass& o) const {
        return space_ == o.space_ && dual_ == o.dual_ && coeff_ == o.coeff_;
    }
    bool operator!=(const HomologyClass& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero())
            return "0";
        if (manifold_rep()) {
            if (dual_ == GradedElement::unit(space_->ring))
                return "[" + space_->name + "]";
            return "PD(" + dual_.str() + ") @ " + space_->name;
        }
        std::string out;
        bool first = true;
        for (const auto& [n, c] : coeff_) {
            if (!first)
                out += " + ";
            first = false;
            out += c.str() + " " + n;
        }
        return out + " @ " + space_->name;
    }

private:
    void prune() {
        for (auto it = coeff_.begin(); it != coeff_.end();) {
            if (!space_->l_homology || !space_->l_homology->degree_of.count(it->first))
                throw MalformedDocument("homology coefficient on unknown basis '" +
                                        it->first + "' of '" + space_->name + "'");
            if (it->second.is_zero())
                it = coeff_.erase(it);
            else
                ++it;
        }
    }

    SpacePtr space_;
    GradedElement dual_;
    std::map<std::string, Rational> coeff_;
};

inline HomologyClass fundamental_class(const SpacePtr& space) {
    if (!space->orientable)
        throw OrientationRequired("fundamental class of non-orientable '" + space->name + "'");
    if (space->kind == SpaceKind::Manifold)
        return HomologyClass(space, GradedElement::unit(space->ring));
    const auto& lh = *space->l_homology;
    if (lh.fundamental.empty())
        throw MalformedDocument("singular model '" + space->name +
                                "' lacks a fundamental class");
    return HomologyClass(space, {{lh.fundamental, Rational(1)}});
}

// PD(a) = a cap [M]; with the dual-side representation this is the
// identity on the stored element, which makes the round trip exact.
inline HomologyClass poincare_dual(const SpacePtr& space, const GradedElement& a) {
    if (space->kind != SpaceKind::Manifold)
        throw UnsupportedDuality("Poincare duality on singular model '" + space->name + "'");
    if (!space->orientable)
        throw OrientationRequired("duality on non-orientable '" + space->name + "'");
    if (a.ring() != space->ring)
        throw RingMismatch("dual element over a foreign ring for '" + space->name + "'");
    return HomologyClass(space, a);
}

inline GradedElement poincare_dual_inv(const HomologyClass& x) {
    if (x.space()->kind != SpaceKind::Manifold)
        throw UnsupportedDuality("Poincare duality on singular model '" +
                                 x.space()->name + "'");
    return x.dual();
}

// Cap product; degree drops by deg a. On manifold models this is the
// dual-side cup product, on singular models a catalogue-supplied module
// action is required.
inline HomologyClass cap(const GradedElement& a, const HomologyClass& x) {
    const SpacePtr& space = x.space();
    if (space->kind == SpaceKind::Manifold) {
        if (a.ring() != space->ring)
            throw RingMismatch("cap with element of a foreign ring on '" + space->name + "'");
        return HomologyClass(space, a * x.dual());
    }
    if (!space->l_homology || space->l_homology->cap_action.empty())
        throw UnsupportedCap("no module action catalogued for singular '" + space->name + "'");
    const auto& action = space->l_homology->cap_action;
    std::map<std::string, Rational> out;
    for (const auto& [an, ac] : a.coefficients()) {
        for (const auto& [xn, xc] : x.coefficients()) {
            if (an == "1") {
                out[xn] += ac * xc;
                continue;
            }
            auto it = action.find({an, xn});
            if (it == action.end())
                throw UnsupportedCap("module action of '" + an + "' on '" + xn +
                                     "' not catalogued for '" + space->name + "'");
            for (const auto& [rn, rc] : it->second)
                out[rn] += ac * xc * rc;
        }
    }
    return HomologyClass(space, std::move(out));
}

// Data needed to pull a homology class from stage k+1 to stage k: a full
// ring map between manifold stage rings, or a map between the manifold
// factors of product stages sharing a singular factor.
struct StageRestriction {
    SpacePtr source; // stage k+1
    SpacePtr target; // stage k
    RingMapPtr map;        // manifold stages
    RingMapPtr factor_map; // product-with-singular stages
};

// Gysin restriction of a normally nonsingular inclusion, realized as the
// duality-conjugated pullback PD . restriction . PD^{-1}. Even codimension
// is required, which eliminates the sign of the commutation rule.
inline HomologyClass gysin_restrict(const StageRestriction& link, const HomologyClass& x) {
    if (x.space() != link.source)
        throw RingMismatch("gysin_restrict: class does not live on the source stage");
    int codim = link.source->dimension - link.target->dimension;
    if (codim < 0 || codim % 2 != 0)
        throw OddCodimensionUnsupported("codimension " + std::to_string(codim) + " from '" +
                                        link.source->name + "' to '" + link.target->name + "'");
    if (link.source->kind == SpaceKind::Manifold &&
        link.target->kind == SpaceKind::Manifold) {
        if (!link.map)
            throw UnresolvableStage("no restriction map from '" + link.source->name + "'");
        if (!link.source->orientable || !link.target->orientable)
            throw OrientationRequired("gysin_restrict between non-orientable models");
        return HomologyClass(link.target, link.map->apply(x.dual()));
    }
    // product stages with one shared singular factor
    if (!link.source->is_product() || !link.target->is_product() || !link.factor_map)
        throw UnresolvableStage("gysin_restrict on singular stages without product structure");
    if (link.source->factor_b != link.target->factor_b)
        throw UnresolvableStage("product stages do not share the singular factor");
    std::map<std::string, Rational> out;
    for (const auto& [pn, c] : x.coefficients()) {
        auto bar = pn.find('|');
        if (bar == std::string::npos)
            throw UnresolvableStage("non-product homology basis name '" + pn + "'");
        std::string a = pn.substr(0, bar);
        std::string rest = pn.substr(bar + 1);
        GradedElement img =
            link.factor_map->apply(GradedElement(link.source->factor_a->ring, a));
        for (const auto& [an, ac] : img.coefficients())
            out[an + "|" + rest] += c * ac;
    }
    return HomologyClass(link.target, std::move(out));
}

// Wrong-way map of an oriented fiber bundle, raising degree by the fiber
// dimension: PD_total . pullback . PD_base^{-1}.
inline HomologyClass bundle_transfer(const RingMap& pullback, const HomologyClass& x,
                                     const SpacePtr& total) {
    const SpacePtr& base = x.space();
    if (base->kind != SpaceKind::Manifold || total->kind != SpaceKind::Manifold)
        throw UnsupportedDuality("bundle_transfer requires manifold models");
    if (!total->orientable)
        throw OrientationRequired("bundle_transfer onto non-orientable '" + total->name + "'");
    if (!base->orientable)
        throw OrientationRequired("bundle_transfer from non-orientable '" + base->name + "'");
    if (pullback.source != base->ring || pullback.target != total->ring)
        throw RingMismatch("bundle_transfer pullback does not match the given spaces");
    return HomologyClass(total, pullback.apply(x.dual()));
}

// L_*(M) = L^*(TM) cap [M] for manifold models with tangent data.
inline HomologyClass lclass_manifold(const SpacePtr& space, const MultiplicativeSequence& seq) {
    if (space->kind != SpaceKind::Manifold)
        throw UnsupportedDuality("lclass_manifold on singular model '" + space->name + "'");
    if (!space->tangent)
        throw MissingTangent("model '" + space->name + "' carries no tangent data");
    return poincare_dual(space, l_class(*space->tangent, space->dimension, seq));
}

// The L-class of any catalogued space: computed on manifolds, prescribed
// on singular models.
inline HomologyClass space_l_class(const SpacePtr& space, const MultiplicativeSequence& seq) {
    if (space->kind == SpaceKind::Manifold)
        return lclass_manifold(space, seq);
    return HomologyClass(space, space->l_homology->l_coefficients);
}

} // namespace lborel
