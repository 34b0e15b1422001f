#include <catch2/catch_amalgamated.hpp>

#include "lborel/kunneth.hpp"
#include "lborel/space.hpp"
#include "support/test_util.hpp"

using namespace lborel;
using namespace lborel::testing;

TEST_CASE("cap products on manifold models") {
    const Catalogue& cat = shipped_catalogue();
    SpacePtr cp2 = cat.space("cp2");
    HomologyClass fund = fundamental_class(cp2);
    GradedElement t(cp2->ring, "t");
    GradedElement t2(cp2->ring, "t2");

    CHECK(cap(GradedElement::unit(cp2->ring), fund) == fund);

    // <t^2, [CP^2]> = 1 by the catalogue normalization; oracle = the
    // duality pairing matrix entry
    HomologyClass point_class = cap(t2, fund);
    CHECK(point_class.supported_degrees() == std::vector<int>{0});
    CHECK(cp2->evaluate(t2 * GradedElement::unit(cp2->ring)) == Rational(1));
    CHECK(point_class.dual() == t2);

    CHECK(cap(t, cap(t, fund)) == cap(t * t, fund));
}

TEST_CASE("cap products on singular models need a module action") {
    const Catalogue& cat = shipped_catalogue();
    SpacePtr pinched = cat.space("pinched_torus");
    HomologyClass fund = fundamental_class(pinched);
    RingPtr some_ring = cat.space("s2")->ring;
    CHECK_THROWS_AS(cap(GradedElement(some_ring, "x"), fund), UnsupportedCap);

    // a toy singular model carrying a catalogued action does support cap
    auto toy = std::make_shared<SpaceModel>();
    toy->name = "toy";
    toy->dimension = 2;
    toy->kind = SpaceKind::Singular;
    toy->ring = some_ring;
    LHomologyData lh;
    lh.basis_by_degree = {{0, {"p"}}, {2, {"f"}}};
    lh.fundamental = "f";
    lh.l_coefficients = {{"f", Rational(1)}};
    lh.cap_action[{"x", "f"}] = {{"p", Rational(1)}};
    lh.cap_action[{"x", "p"}] = {};
    lh.finalize();
    toy->l_homology = lh;
    SpacePtr toy_ptr = toy;
    HomologyClass toy_fund = fundamental_class(toy_ptr);
    HomologyClass capped = cap(GradedElement(some_ring, "x"), toy_fund);
    CHECK(capped.coefficients() == std::map<std::string, Rational>{{"p", Rational(1)}});
}

TEST_CASE("poincare duality round trips") {
    const Catalogue& cat = shipped_catalogue();
    for (const auto& name : {"cp2", "s2", "bs1_3", "bs1_4", "hopf_3", "v2_4"}) {
        SpacePtr space = cat.space(name);
        CHECK(poincare_dual(space, GradedElement::unit(space->ring)) ==
              fundamental_class(space));
        for (const auto& [deg, basis] : space->ring->basis_by_degree)
            for (const auto& b : basis) {
                GradedElement e(space->ring, b);
                CHECK(poincare_dual_inv(poincare_dual(space, e)) == e);
            }
    }
    CHECK_THROWS_AS(poincare_dual_inv(fundamental_class(cat.space("pinched_torus"))),
                    UnsupportedDuality);
}

TEST_CASE("gysin restriction along the circle tower") {
    const Catalogue& cat = shipped_catalogue();
    TowerPtr tower = cat.tower("s1");
    for (int k = 1; k <= 7; ++k) {
        SpacePtr big = tower->stage(k + 1).base;
        SpacePtr small = tower->stage(k).base;
        StageRestriction link{big, small, tower->stage(k).restriction, nullptr};

        // fundamental class maps to fundamental class
        CHECK(gysin_restrict(link, fundamental_class(big)) == fundamental_class(small));

        // tau_{k+1}^j -> tau_k^j via t_{k+1} -> t_k, for every power both
        // stages carry
        GradedElement tb = GradedElement::unit(big->ring);
        GradedElement ts = GradedElement::unit(small->ring);
        for (int j = 1; j <= 3; ++j) {
            tb = tb * GradedElement(big->ring, "t");
            ts = ts * GradedElement(small->ring, "t");
            if (tb.is_zero() || ts.is_zero())
                break;
            CHECK(gysin_restrict(link, cap(tb, fundamental_class(big))) ==
                  cap(ts, fundamental_class(small)));
        }

        CHECK(gysin_restrict(link, HomologyClass(big, GradedElement(big->ring))).is_zero());
    }
}

TEST_CASE("gysin restriction requires even codimension") {
    const Catalogue& cat = shipped_catalogue();
    SpacePtr s3 = cat.space("s3");
    SpacePtr s2 = cat.space("s2");
    auto map = std::make_shared<RingMap>();
    map->name = "collapse";
    map->source = s3->ring;
    map->target = s2->ring;
    map->images.emplace("1", GradedElement::unit(s2->ring));
    map->images.emplace("y", GradedElement(s2->ring));
    map->check();
    StageRestriction link{s3, s2, map, nullptr};
    CHECK_THROWS_AS(gysin_restrict(link, fundamental_class(s3)),
                    OddCodimensionUnsupported);
}

TEST_CASE("bundle transfer raises degree by the fiber dimension") {
    const Catalogue& cat = shipped_catalogue();
    SpacePtr s2 = cat.space("s2");
    SpacePtr cp2 = cat.space("cp2");
    SpacePtr prod = kunneth_model(cp2, s2);

    RingMap proj = second_factor_map(prod);
    HomologyClass transferred = bundle_transfer(proj, fundamental_class(s2), prod);
    CHECK(transferred == fundamental_class(prod));

    // pt to BS^1_k: the transfer of [pt] is the fundamental class
    SpacePtr pt = cat.space("pt");
    SpacePtr bs13 = cat.space("bs1_3");
    RingMap unit_map;
    unit_map.name = "unit";
    unit_map.source = pt->ring;
    unit_map.target = bs13->ring;
    unit_map.images.emplace("1", GradedElement::unit(bs13->ring));
    unit_map.check();
    CHECK(bundle_transfer(unit_map, fundamental_class(pt), bs13) ==
          fundamental_class(bs13));
}

TEST_CASE("kunneth models") {
    const Catalogue& cat = shipped_catalogue();
    SpacePtr cp2 = cat.space("cp2");
    SpacePtr pt = cat.space("pt");
    SpacePtr s2 = cat.space("s2");

    SpacePtr with_pt = kunneth_model(cp2, pt);
    CHECK(with_pt->dimension == 4);
    CHECK(with_pt->ring->total_dimension() == cp2->ring->total_dimension());
    for (const auto& [deg, names] : cp2->ring->basis_by_degree)
        CHECK(with_pt->ring->basis_at(deg).size() == names.size());

    SpacePtr prod = kunneth_model(cp2, s2);
    CHECK(cross(fundamental_class(cp2), fundamental_class(s2), prod) ==
          fundamental_class(prod));

    // nonequivariant product formula, exact: L(CP^2 x CP^2) = L(CP^2) x L(CP^2)
    SpacePtr cp2cp2 = kunneth_model(cp2, cp2);
    HomologyClass via_product =
        cross(lclass_manifold(cp2, l_seq()), lclass_manifold(cp2, l_seq()), cp2cp2);
    CHECK(lclass_manifold(cp2cp2, l_seq()) == via_product);

    // both factors odd is where Koszul signs would enter; rejected
    SpacePtr s3 = cat.space("s3");
    CHECK_THROWS_AS(kunneth_model(s3, s3), UnsupportedProduct);
    CHECK_THROWS_AS(kunneth_model(cat.space("pinched_torus"), s2), UnsupportedProduct);
}

TEST_CASE("manifold L-classes") {
    const Catalogue& cat = shipped_catalogue();
    const auto& seq = l_seq();

    CHECK(lclass_manifold(cat.space("s2"), seq) == fundamental_class(cat.space("s2")));
    CHECK(lclass_manifold(cat.space("pt"), seq) == fundamental_class(cat.space("pt")));

    SpacePtr cp2 = cat.space("cp2");
    HomologyClass l = lclass_manifold(cp2, seq);
    CHECK(l == fundamental_class(cp2) +
                   HomologyClass(cp2, GradedElement(cp2->ring, "t2")));
    // degree-0 coefficient equals the signature of the cup form
    CHECK(cp2->evaluate(l.homogeneous_component(0).dual()) ==
          Rational(signature_of_cup_form(cp2)));

    auto no_tangent = std::make_shared<SpaceModel>(*cp2);
    no_tangent->tangent.reset();
    CHECK_THROWS_AS(lclass_manifold(SpacePtr(no_tangent), seq), MissingTangent);
}

TEST_CASE("space axiom checks") {
    const Catalogue& cat = shipped_catalogue();
    SpacePtr cp2 = cat.space("cp2");

    // degenerate pairing: evaluation zero kills orientability consistency
    auto broken = std::make_shared<SpaceModel>(*cp2);
    broken->evaluation.clear();
    CHECK_THROWS_AS(broken->check(), FailedAxiomCheck);

    // non-orientable manifold models skip the duality requirement
    SpacePtr rp2 = cat.space("rp2");
    CHECK_FALSE(rp2->orientable);
    CHECK_THROWS_AS(fundamental_class(rp2), OrientationRequired);
}
