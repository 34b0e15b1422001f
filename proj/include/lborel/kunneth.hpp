#pragma once

#include <memory>
#include <string>

#include "lborel/space.hpp"

namespace lborel {

// Basis-pair naming for tensor rings. The (1,1) pair must be called "1"
// so the product ring satisfies the degree-0 axiom.
inline std::string pair_name(const std::string& a, const std::string& b) {
    if (a == "1" && b == "1")
        return "1";
    return a + "|" + b;
}

inline std::pair<std::string, std::string> split_pair(const std::string& n) {
    if (n == "1")
        return {"1", "1"};
    auto bar = n.find('|');
    if (bar == std::string::npos)
        throw MalformedDocument("not a basis pair: '" + n + "'");
    return {n.substr(0, bar), n.substr(bar + 1)};
}

namespace detail {

inline GradedElement tensor_into(const RingPtr& product_ring, const GradedElement& a,
                                 const GradedElement& b) {
    GradedElement out(product_ring);
    for (const auto& [an, ac] : a.coefficients())
        for (const auto& [bn, bc] : b.coefficients())
            out.add_term(pair_name(an, bn), ac * bc);
    return out;
}

inline RingPtr tensor_ring(const SpaceModel& a, const SpaceModel& b,
                           const std::string& model_name) {
    auto ring = std::make_shared<RingPresentation>();
    ring->name = model_name;
    ring->top_degree = a.ring->top_degree + b.ring->top_degree;
    ring->generators = a.ring->generators;
    ring->generators.insert(ring->generators.end(), b.ring->generators.begin(),
                            b.ring->generators.end());
    for (const auto& [da, as] : a.ring->basis_by_degree)
        for (const auto& [db, bs] : b.ring->basis_by_degree)
            for (const auto& an : as)
                for (const auto& bn : bs)
                    ring->basis_by_degree[da + db].push_back(pair_name(an, bn));

    RingPtr frozen = ring; // products reference the final ring
    for (const auto& [da, as] : a.ring->basis_by_degree)
        for (const auto& an : as)
            for (const auto& [db, bs] : b.ring->basis_by_degree)
                for (const auto& bn : bs) {
                    std::string left = pair_name(an, bn);
                    if (left == "1")
                        continue;
                    for (const auto& [da2, as2] : a.ring->basis_by_degree)
                        for (const auto& an2 : as2)
                            for (const auto& [db2, bs2] : b.ring->basis_by_degree)
                                for (const auto& bn2 : bs2) {
                                    std::string right = pair_name(an2, bn2);
                                    if (right == "1" || left > right)
                                        continue;
                                    if (da + db + da2 + db2 > ring->top_degree)
                                        continue;
                                    GradedElement pa = GradedElement(a.ring, an) *
                                                       GradedElement(a.ring, an2);
                                    GradedElement pb = GradedElement(b.ring, bn) *
                                                       GradedElement(b.ring, bn2);
                                    GradedElement prod = tensor_into(frozen, pa, pb);
                                    if (!prod.is_zero())
                                        ring->products[{left, right}] = prod.coefficients();
                                }
                }
    ring->finalize_and_check();
    return frozen;
}

} // namespace detail

// Tensor model A x B: basis pairs, evaluation the product of top-degree
// evaluations, tangent data summed by pullback from the factors. When the
// second factor is singular the product carries a prescribed homology
// basis of pairs instead of a ring. Both factors carrying odd-degree
// classes is rejected, since that is where Koszul signs would enter.
inline SpacePtr kunneth_model(const SpacePtr& a, const SpacePtr& b) {
    if (a->kind != SpaceKind::Manifold)
        throw UnsupportedProduct("first Kunneth factor must be a manifold model");
    if (a->has_odd_classes() && b->has_odd_classes())
        throw UnsupportedProduct("both factors of '" + a->name + " x " + b->name +
                                 "' carry odd-degree classes");
    auto model = std::make_shared<SpaceModel>();
    model->name = a->name + " x " + b->name;
    model->dimension = a->dimension + b->dimension;
    model->orientable = a->orientable && b->orientable;
    model->factor_a = a;
    model->factor_b = b;

    if (b->kind == SpaceKind::Manifold) {
        model->kind = SpaceKind::Manifold;
        model->ring = detail::tensor_ring(*a, *b, model->name);
        for (const auto& [an, av] : a->evaluation)
            for (const auto& [bn, bv] : b->evaluation)
                model->evaluation[pair_name(an, bn)] = av * bv;
        if (a->tangent && b->tangent) {
            BundleModel t;
            t.base_space = model->name;
            t.ring = model->ring;
            if (a->tangent->rank && b->tangent->rank)
                t.rank = *a->tangent->rank + *b->tangent->rank;
            t.total_pontryagin = detail::tensor_into(model->ring,
                                                     a->tangent->total_pontryagin,
                                                     b->tangent->total_pontryagin);
            t.oriented = a->tangent->oriented && b->tangent->oriented;
            model->tangent = std::move(t);
        }
    } else {
        model->kind = SpaceKind::Singular;
        LHomologyData lh;
        const auto& blh = *b->l_homology;
        for (const auto& [da, names] : a->ring->basis_by_degree)
            for (const auto& an : names)
                for (const auto& [db, bnames] : blh.basis_by_degree)
                    for (const auto& bn : bnames)
                        lh.basis_by_degree[(a->dimension - da) + db].push_back(an + "|" + bn);
        if (!blh.fundamental.empty())
            lh.fundamental = "1|" + blh.fundamental;
        lh.finalize();
        model->l_homology = std::move(lh);
    }
    model->check();
    return model;
}

// Pullback along the projection to the first/second factor.
inline RingMap first_factor_map(const SpacePtr& product) {
    if (!product->is_product() || !product->ring)
        throw MalformedDocument("'" + product->name + "' is not a ring product model");
    RingMap f;
    f.name = "proj_a." + product->name;
    f.source = product->factor_a->ring;
    f.target = product->ring;
    for (const auto& [deg, names] : f.source->basis_by_degree)
        for (const auto& n : names)
            f.images.emplace(n, GradedElement(product->ring, pair_name(n, "1")));
    return f;
}

inline RingMap second_factor_map(const SpacePtr& product) {
    if (!product->is_product() || !product->ring)
        throw MalformedDocument("'" + product->name + "' is not a ring product model");
    RingMap f;
    f.name = "proj_b." + product->name;
    f.source = product->factor_b->ring;
    f.target = product->ring;
    for (const auto& [deg, names] : f.source->basis_by_degree)
        for (const auto& n : names)
            f.images.emplace(n, GradedElement(product->ring, pair_name("1", n)));
    return f;
}

// f x g on tensor rings, used for the restriction maps of product stages.
inline RingMap kunneth_map(const RingMap& fa, const RingMap& fb, const SpacePtr& source,
                           const SpacePtr& target) {
    if (!source->is_product() || !target->is_product() || !source->ring || !target->ring)
        throw MalformedDocument("kunneth_map requires ring product models");
    if (fa.source != source->factor_a->ring || fa.target != target->factor_a->ring ||
        fb.source != source->factor_b->ring || fb.target != target->factor_b->ring)
        throw RingMismatch("kunneth_map factors do not line up");
    RingMap f;
    f.name = fa.name + " x " + fb.name;
    f.source = source->ring;
    f.target = target->ring;
    for (const auto& [deg, names] : source->ring->basis_by_degree)
        for (const auto& n : names) {
            auto [an, bn] = split_pair(n);
            GradedElement img = detail::tensor_into(
                target->ring, fa.apply(GradedElement(fa.source, an)),
                fb.apply(GradedElement(fb.source, bn)));
            f.images.emplace(n, std::move(img));
        }
    return f;
}

// Homological cross product; bilinear and degree-additive.
inline HomologyClass cross(const HomologyClass& x, const HomologyClass& y,
                           const SpacePtr& product) {
    if (product->factor_a != x.space() || product->factor_b != y.space())
        throw RingMismatch("cross: classes do not live on the factors of '" +
                           product->name + "'");
    if (product->kind == SpaceKind::Manifold)
        return HomologyClass(product,
                             detail::tensor_into(product->ring, x.dual(), y.dual()));
    std::map<std::string, Rational> out;
    for (const auto& [an, ac] : x.dual().coefficients())
        for (const auto& [bn, bc] : y.coefficients())
            out[an + "|" + bn] = ac * bc;
    return HomologyClass(product, std::move(out));
}

} // namespace lborel
