#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "lborel/kunneth.hpp"
#include "lborel/tower.hpp"

namespace lborel {

enum class ActionMode { Point, Trivial, Free, Explicit };

inline std::string mode_name(ActionMode m) {
    switch (m) {
    case ActionMode::Point: return "point";
    case ActionMode::Trivial: return "trivial";
    case ActionMode::Free: return "free";
    case ActionMode::Explicit: return "explicit";
    }
    return "?";
}

// Catalogued per-stage data for free and explicit actions.
struct ExplicitStageData {
    SpacePtr model;         // X_G(k)
    RingMapPtr q_pullback;  // ring(BG_k)  -> ring(X_G(k))
    RingMapPtr pi_pullback; // ring(X/G)   -> ring(X_G(k)), free mode
    RingMapPtr restriction; // ring(X_G(k+1)) -> ring(X_G(k))
    std::optional<BundleModel> vertical; // (TM)_G(k) for the manifold route
};

// A group action on a space, in one of the four resolvable shapes.
struct ActionSpec {
    std::string name;
    TowerPtr tower;
    SpacePtr space;
    ActionMode mode = ActionMode::Point;
    SpacePtr quotient;                        // free mode: X/G
    std::map<int, ExplicitStageData> stages;  // free / explicit modes
};

using ActionPtr = std::shared_ptr<const ActionSpec>;

// Stage models, projections and restriction links for a k-range, built
// from the catalogue (point/trivial modes derive everything from the
// tower; free/explicit read the catalogued stage data).
class ResolvedAction {
public:
    struct Stage {
        int k = 0;
        SpacePtr model;
        RingMapPtr q_pullback;
        RingMapPtr pi_pullback;
        std::optional<BundleModel> vertical;
    };

    const ActionSpec& action() const { return *action_; }
    const std::map<int, Stage>& stages() const { return stages_; }
    const std::map<int, StageRestriction>& links() const { return links_; }
    const Stage& stage(int k) const {
        auto it = stages_.find(k);
        if (it == stages_.end())
            throw UnresolvableStage("action '" + action_->name + "' has no resolved stage k=" +
                                    std::to_string(k));
        return it->second;
    }
    int k_lo() const { return stages_.begin()->first; }
    int k_hi() const { return stages_.rbegin()->first; }

    static ResolvedAction resolve(const ActionPtr& action, int k_lo, int k_hi);

private:
    ActionPtr action_;
    std::map<int, Stage> stages_;
    std::map<int, StageRestriction> links_;
};

inline ResolvedAction ResolvedAction::resolve(const ActionPtr& action, int k_lo, int k_hi) {
    if (k_lo < 1 || k_hi < k_lo + 1)
        throw UnresolvableStage("action '" + action->name +
                                "': need at least two consecutive stages");
    const BorelTower& tower = *action->tower;
    if (!action->space->orientable)
        throw OrientationRequired("action '" + action->name + "': space '" +
                                  action->space->name + "' is not orientable");
    ResolvedAction out;
    out.action_ = action;

    for (int k = k_lo; k <= k_hi; ++k) {
        const TowerStage& ts = tower.stage(k);
        if (!ts.base->orientable)
            throw OrientationRequired("action '" + action->name + "': base model '" +
                                      ts.base->name + "' is not orientable");
        Stage st;
        st.k = k;
        switch (action->mode) {
        case ActionMode::Point: {
            st.model = ts.base;
            st.q_pullback = std::make_shared<RingMap>(identity_map(ts.base->ring));
            st.vertical = BundleModel::trivial(ts.base->name, ts.base->ring, 0);
            break;
        }
        case ActionMode::Trivial: {
            st.model = kunneth_model(ts.base, action->space);
            if (st.model->kind == SpaceKind::Manifold)
                st.q_pullback = std::make_shared<RingMap>(first_factor_map(st.model));
            if (action->space->kind == SpaceKind::Manifold) {
                if (!action->space->tangent)
                    throw MissingTangent("action '" + action->name + "': space '" +
                                         action->space->name + "' carries no tangent data");
                RingMap snd = second_factor_map(st.model);
                st.vertical = pullback_bundle(snd, *action->space->tangent, st.model->name);
            }
            break;
        }
        case ActionMode::Free:
        case ActionMode::Explicit: {
            auto it = action->stages.find(k);
            if (it == action->stages.end() || !it->second.model)
                throw UnresolvableStage("action '" + action->name + "': no stage data at k=" +
                                        std::to_string(k));
            st.model = it->second.model;
            st.q_pullback = it->second.q_pullback;
            st.pi_pullback = it->second.pi_pullback;
            st.vertical = it->second.vertical;
            if (action->mode == ActionMode::Free) {
                if (!action->quotient)
                    throw UnresolvableStage("action '" + action->name +
                                            "': free mode without a quotient model");
                if (!action->quotient->orientable)
                    throw OrientationRequired("action '" + action->name + "': quotient '" +
                                              action->quotient->name + "' is not orientable");
                if (!st.pi_pullback)
                    throw UnresolvableStage("action '" + action->name +
                                            "': free stage k=" + std::to_string(k) +
                                            " lacks the projection pullback");
            }
            break;
        }
        }
        int want = action->space->dimension + tower.n * k + tower.shift_a;
        if (st.model->dimension != want)
            throw MalformedDocument("action '" + action->name + "': dim X_G(" +
                                    std::to_string(k) + ") = " +
                                    std::to_string(st.model->dimension) + ", expected " +
                                    std::to_string(want));
        if (st.model->kind == SpaceKind::Manifold && !st.model->orientable)
            throw OrientationRequired("action '" + action->name + "': stage model '" +
                                      st.model->name + "' is not orientable");
        out.stages_.emplace(k, std::move(st));
    }

    for (int k = k_lo; k < k_hi; ++k) {
        const Stage& cur = out.stages_.at(k);
        const Stage& next = out.stages_.at(k + 1);
        StageRestriction link;
        link.source = next.model;
        link.target = cur.model;
        switch (action->mode) {
        case ActionMode::Point:
            link.map = tower.stage(k).restriction;
            break;
        case ActionMode::Trivial: {
            RingMapPtr beta = tower.stage(k).restriction;
            if (!beta)
                throw UnresolvableStage("tower '" + tower.name +
                                        "' lacks the restriction at k=" + std::to_string(k));
            if (cur.model->kind == SpaceKind::Manifold) {
                RingMap id_x = identity_map(action->space->ring);
                link.map = std::make_shared<RingMap>(
                    kunneth_map(*beta, id_x, next.model, cur.model));
            } else {
                link.factor_map = beta;
            }
            break;
        }
        case ActionMode::Free:
        case ActionMode::Explicit:
            link.map = action->stages.at(k).restriction;
            break;
        }
        if (!link.map && !link.factor_map)
            throw UnresolvableStage("action '" + action->name +
                                    "': no restriction between stages " + std::to_string(k) +
                                    " and " + std::to_string(k + 1));
        out.links_.emplace(k, std::move(link));
    }
    return out;
}

// Stage-k equivariant L-class. The point and trivial modes use the closed
// forms [BG_k] and [BG_k] x L_*(X); the free mode transfers L_*(X/G)
// along the stage projection; the explicit mode evaluates the defining
// formula q_k^* L^*(TBG_k)^{-1} cap L_*(X_G(k)).
inline HomologyClass stage_k_class(const ResolvedAction& ra, int k,
                                   const MultiplicativeSequence& seq) {
    const ActionSpec& a = ra.action();
    const ResolvedAction::Stage& st = ra.stage(k);
    switch (a.mode) {
    case ActionMode::Point:
        return fundamental_class(st.model);
    case ActionMode::Trivial:
        return cross(fundamental_class(a.tower->stage(k).base),
                     space_l_class(a.space, seq), st.model);
    case ActionMode::Free:
        return bundle_transfer(*st.pi_pullback, space_l_class(a.quotient, seq), st.model);
    case ActionMode::Explicit: {
        const TowerStage& ts = a.tower->stage(k);
        if (!ts.base->tangent)
            throw UnresolvableStage("tower '" + a.tower->name + "': no tangent data for '" +
                                    ts.base->name + "'");
        if (!st.q_pullback)
            throw UnresolvableStage("action '" + a.name + "': explicit stage k=" +
                                    std::to_string(k) + " lacks q_k^*");
        GradedElement lb_inv =
            inverse_l_class(l_class(*ts.base->tangent, ts.base->ring->top_degree, seq));
        return cap(st.q_pullback->apply(lb_inv), space_l_class(st.model, seq));
    }
    }
    throw UnresolvableStage("unreachable mode");
}

// L^G_*(X) as the certified family of stage classes over the k-range.
inline InverseLimitClass equivariant_l_class(const ResolvedAction& ra,
                                             const MultiplicativeSequence& seq) {
    std::map<int, HomologyClass> stages;
    for (const auto& [k, st] : ra.stages())
        stages.emplace(k, stage_k_class(ra, k, seq));
    return assemble_inverse_limit(std::move(stages), ra.links(), ra.action().tower->n,
                                  ra.action().tower->shift_a,
                                  ra.action().space->dimension);
}

// The family {[X_G(k)]}; its stable degree-m component is the equivariant
// fundamental class.
inline InverseLimitClass equivariant_fundamental_class(const ResolvedAction& ra) {
    std::map<int, HomologyClass> stages;
    for (const auto& [k, st] : ra.stages())
        stages.emplace(k, fundamental_class(st.model));
    return assemble_inverse_limit(std::move(stages), ra.links(), ra.action().tower->n,
                                  ra.action().tower->shift_a,
                                  ra.action().space->dimension);
}

// The equivariant-degree-m component extractor; on the equivariant
// L-class this recovers the equivariant fundamental class.
inline InverseLimitClass::StableValue top_degree_component(const InverseLimitClass& cls) {
    return cls.value_at(cls.space_dimension());
}

// Manifold route: L^*((TM)_G(k)) cap [M_G(k)] per stage. Both this and the
// defining route are computed and compared; a mismatch fails the
// certificate.
inline InverseLimitClass manifold_equiv_l(const ResolvedAction& ra,
                                          const MultiplicativeSequence& seq) {
    std::map<int, HomologyClass> stages;
    for (const auto& [k, st] : ra.stages()) {
        if (!st.vertical)
            throw MissingVerticalBundle("action '" + ra.action().name +
                                        "': stage k=" + std::to_string(k) +
                                        " has no vertical bundle data");
        GradedElement l_vertical = l_class(*st.vertical, st.model->ring->top_degree, seq);
        stages.emplace(k, cap(l_vertical, fundamental_class(st.model)));
    }
    InverseLimitClass manifold_route =
        assemble_inverse_limit(std::move(stages), ra.links(), ra.action().tower->n,
                               ra.action().tower->shift_a, ra.action().space->dimension);
    InverseLimitClass defining = equivariant_l_class(ra, seq);
    for (const auto& [k, cls] : manifold_route.stages()) {
        if (cls != defining.stages().at(k))
            throw CompatibilityFailure(k, -1,
                                       "manifold route differs from the defining route at k=" +
                                           std::to_string(k));
    }
    return manifold_route;
}

// Stagewise cross product of two resolved actions over the product of the
// towers (base products stage by stage).
inline InverseLimitClass product_class(const ResolvedAction& ra, const ResolvedAction& rb,
                                       const MultiplicativeSequence& seq) {
    int lo = std::max(ra.k_lo(), rb.k_lo());
    int hi = std::min(ra.k_hi(), rb.k_hi());
    if (hi < lo + 1)
        throw UnresolvableStage("product_class: stage ranges do not overlap");
    std::map<int, HomologyClass> stages;
    std::map<int, SpacePtr> models;
    for (int k = lo; k <= hi; ++k) {
        SpacePtr prod = kunneth_model(ra.stage(k).model, rb.stage(k).model);
        models.emplace(k, prod);
        stages.emplace(k, cross(stage_k_class(ra, k, seq), stage_k_class(rb, k, seq), prod));
    }
    std::map<int, StageRestriction> links;
    for (int k = lo; k < hi; ++k) {
        const StageRestriction& la = ra.links().at(k);
        const StageRestriction& lb = rb.links().at(k);
        if (!la.map || !lb.map)
            throw UnresolvableStage("product_class: factor restrictions unavailable at k=" +
                                    std::to_string(k));
        StageRestriction link;
        link.source = models.at(k + 1);
        link.target = models.at(k);
        link.map = std::make_shared<RingMap>(
            kunneth_map(*la.map, *lb.map, models.at(k + 1), models.at(k)));
        links.emplace(k, std::move(link));
    }
    const BorelTower& ta = *ra.action().tower;
    const BorelTower& tb = *rb.action().tower;
    return assemble_inverse_limit(std::move(stages), std::move(links), ta.n + tb.n,
                                  ta.shift_a + tb.shift_a,
                                  ra.action().space->dimension +
                                      rb.action().space->dimension);
}

// Stagewise base products BG_k x BG'_k as a tower; this is the canonical
// identification used for product actions, so the shift is additive and
// the orthogonal-embedding dimension formula does not apply.
inline TowerPtr product_tower(const TowerPtr& ta, const TowerPtr& tb) {
    auto out = std::make_shared<BorelTower>();
    out->name = ta->name + " x " + tb->name;
    out->n = ta->n + tb->n;
    out->d = ta->d + tb->d;
    out->shift_a = ta->shift_a + tb->shift_a;
    out->product_tower = true;
    int lo = std::max(ta->min_stage(), tb->min_stage());
    int hi = std::min(ta->max_stage(), tb->max_stage());
    for (int k = lo; k <= hi; ++k) {
        TowerStage st;
        st.base = kunneth_model(ta->stage(k).base, tb->stage(k).base);
        out->stages.emplace(k, std::move(st));
    }
    for (int k = lo; k < hi; ++k) {
        RingMapPtr a = ta->stage(k).restriction;
        RingMapPtr b = tb->stage(k).restriction;
        if (a && b)
            out->stages.at(k).restriction = std::make_shared<RingMap>(kunneth_map(
                *a, *b, out->stages.at(k + 1).base, out->stages.at(k).base));
    }
    out->check();
    return out;
}

// Default stage range [2, min(8, catalogue depth, stable_k(m, j_min)+1)],
// deep enough to extract the lowest requested degree and verify its
// stabilization where the catalogue allows.
inline std::pair<int, int> default_k_range(const ActionSpec& a, int j_min) {
    int hi_avail = a.tower->max_stage();
    if (a.mode == ActionMode::Free || a.mode == ActionMode::Explicit) {
        int stage_max = a.stages.empty() ? 0 : a.stages.rbegin()->first;
        hi_avail = std::min(hi_avail, stage_max);
    }
    int want = stable_k(a.space->dimension, j_min) + 1;
    int hi = std::min({8, hi_avail, std::max(want, 3)});
    if (hi < 3)
        throw UnresolvableStage("action '" + a.name + "': catalogue depth " +
                                std::to_string(hi_avail) + " is too shallow");
    return {2, hi};
}

// Explicit-mode companion of an already-resolved action: the stage models,
// projections and restriction maps are reused, so the defining formula can
// be evaluated against the closed-form route on identical data.
inline ActionPtr as_explicit(const ResolvedAction& ra) {
    auto out = std::make_shared<ActionSpec>();
    out->name = ra.action().name + ".explicit";
    out->tower = ra.action().tower;
    out->space = ra.action().space;
    out->mode = ActionMode::Explicit;
    for (const auto& [k, st] : ra.stages()) {
        ExplicitStageData data;
        data.model = st.model;
        data.q_pullback = st.q_pullback;
        data.vertical = st.vertical;
        auto link = ra.links().find(k);
        if (link != ra.links().end())
            data.restriction = link->second.map;
        out->stages.emplace(k, std::move(data));
    }
    return out;
}

// Catalogued subgroup pair data: the total spaces E'_k of the stage
// projections X_{G'}(k) -> X_G(k) for the trivial subgroup, with the
// projection pullbacks and the restriction maps between the E'_k.
struct SubgroupPair {
    std::string name;
    std::string tower_name;
    struct Stage {
        SpacePtr e_model;       // E'_k
        RingMapPtr p_pullback;  // ring(BG_k) -> ring(E'_k)
        RingMapPtr restriction; // ring(E'_{k+1}) -> ring(E'_k)
    };
    std::map<int, Stage> stages;

    const Stage& stage(int k) const {
        auto it = stages.find(k);
        if (it == stages.end())
            throw UncataloguedPair("pair '" + name + "' has no stage k=" + std::to_string(k));
        return it->second;
    }
};

using PairPtr = std::shared_ptr<const SubgroupPair>;

// Result of restricting to the trivial subgroup: the raw transferred
// family on the models E'_k x X, and the stable values identified with
// classes on X where the family has the product form [E'_k] x v.
struct RestrictedClass {
    InverseLimitClass raw;
    std::map<int, HomologyClass> identified; // equivariant degree -> class on X
};

inline RestrictedClass restrict_group(const InverseLimitClass& cls, const SubgroupPair& pair,
                                      const BorelTower& tower, const SpacePtr& space) {
    std::map<int, HomologyClass> stages;
    std::map<int, SpacePtr> models;
    for (const auto& [k, stage_class] : cls.stages()) {
        const SubgroupPair::Stage& ps = pair.stage(k);
        const SpacePtr& sp = stage_class.space();
        if (sp == tower.stage(k).base) {
            stages.emplace(k, bundle_transfer(*ps.p_pullback, stage_class, ps.e_model));
            models.emplace(k, ps.e_model);
        } else if (sp->is_product() && sp->factor_a == tower.stage(k).base &&
                   sp->kind == SpaceKind::Manifold) {
            SpacePtr prod = kunneth_model(ps.e_model, sp->factor_b);
            RingMap id_x = identity_map(sp->factor_b->ring);
            RingMap pi = kunneth_map(*ps.p_pullback, id_x, sp, prod);
            stages.emplace(k, bundle_transfer(pi, stage_class, prod));
            models.emplace(k, prod);
        } else {
            throw UncataloguedPair("pair '" + pair.name +
                                   "': stage class does not live over BG_k at k=" +
                                   std::to_string(k));
        }
    }
    std::map<int, StageRestriction> links;
    for (auto it = stages.begin(); it != stages.end(); ++it) {
        auto next = std::next(it);
        if (next == stages.end())
            break;
        int k = it->first;
        const SubgroupPair::Stage& ps = pair.stage(k);
        if (!ps.restriction)
            throw UncataloguedPair("pair '" + pair.name + "': no restriction at k=" +
                                   std::to_string(k));
        StageRestriction link;
        link.source = models.at(k + 1);
        link.target = models.at(k);
        if (models.at(k)->is_product()) {
            RingMap id_x = identity_map(models.at(k)->factor_b->ring);
            link.map = std::make_shared<RingMap>(
                kunneth_map(*ps.restriction, id_x, models.at(k + 1), models.at(k)));
        } else {
            link.map = ps.restriction;
        }
        links.emplace(k, std::move(link));
    }
    RestrictedClass out;
    out.raw = assemble_inverse_limit(std::move(stages), std::move(links), cls.n(),
                                     cls.shift_a() + tower.d, cls.space_dimension());

    // identify stable values of the form [E'_k] x v with v on X
    for (int j : out.raw.supported_equivariant_degrees()) {
        int k = stable_k(cls.space_dimension(), j);
        if (!out.raw.stages().count(k))
            continue;
        HomologyClass comp =
            out.raw.stages().at(k).homogeneous_component(out.raw.stage_degree_of(k, j));
        const SpacePtr& model = comp.space();
        if (model->is_product()) {
            GradedElement v(space->ring);
            bool pure = true;
            for (const auto& [n, c] : comp.dual().coefficients()) {
                auto [a, b] = split_pair(n);
                if (a != "1") {
                    pure = false;
                    break;
                }
                v.add_term(b, c);
            }
            if (pure)
                out.identified.emplace(j, HomologyClass(space, v));
        } else if (space->dimension == 0) {
            // point case: the stage lives on E'_k itself
            Rational c = comp.dual().constant_term();
            GradedElement v(space->ring);
            if (GradedElement(model->ring, "1", c) == comp.dual()) {
                v.add_term("1", c);
                out.identified.emplace(j, HomologyClass(space, v));
            }
        }
    }
    return out;
}

} // namespace lborel
