#include <catch2/catch_amalgamated.hpp>

#include "lborel/group.hpp"
#include "lborel/tower.hpp"
#include "support/test_util.hpp"

using namespace lborel;
using namespace lborel::testing;

TEST_CASE("bi-invariant orientability verdicts") {
    const Catalogue& cat = shipped_catalogue();

    CHECK(check_biinvariant_orientable(*cat.group("trivial")).orientable);
    CHECK(check_biinvariant_orientable(*cat.group("z2")).orientable);  // discrete
    CHECK(check_biinvariant_orientable(*cat.group("s1")).orientable);  // abelian, connected

    OrientabilityVerdict v = check_biinvariant_orientable(*cat.group("o2"));
    CHECK_FALSE(v.orientable);
    REQUIRE(v.witness);
    RatMatrix expected{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    CHECK(*v.witness == expected);
}

TEST_CASE("invalid group data is rejected") {
    GroupData g;
    g.name = "broken";
    g.dim = 1;
    g.embed_n = 2;
    // basis not Ad-closed: conjugating a symmetric matrix by the rotation
    // representative leaves the span of the single basis element
    g.lie_algebra_basis = {{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}}};
    g.component_reps = {identity_matrix(2),
                        {{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}}};
    g.connected = false;
    CHECK_THROWS_AS(check_biinvariant_orientable(g), InvalidGroupData);

    GroupData no_id = g;
    no_id.component_reps = {{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    CHECK_THROWS_AS(check_biinvariant_orientable(no_id), MalformedDocument);

    GroupData dependent;
    dependent.name = "dependent";
    dependent.dim = 2;
    dependent.embed_n = 2;
    RatMatrix j{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
    RatMatrix j2{{Rational(0), Rational(2)}, {Rational(-2), Rational(0)}};
    dependent.lie_algebra_basis = {j, j2};
    dependent.component_reps = {identity_matrix(2)};
    dependent.connected = true;
    CHECK_THROWS_AS(check_biinvariant_orientable(dependent), InvalidGroupData);
}

TEST_CASE("tower dimension formulas") {
    const Catalogue& cat = shipped_catalogue();

    // S^1 in Or(2): dim EG_k = 2k + 1, dim BG_k = 2k
    TowerPtr s1 = cat.tower("s1");
    CHECK(tower_dims(*s1, 4) == std::pair<int, int>{9, 8});
    for (int k = 1; k <= 8; ++k) {
        auto [dim_e, dim_b] = tower_dims(*s1, k);
        CHECK(dim_e == 2 * k + 1);
        CHECK(dim_b == 2 * k);
        CHECK(s1->stage(k).base->dimension == dim_b);
    }

    TowerPtr trivial = cat.tower("trivial");
    for (int k = 1; k <= 8; ++k)
        CHECK(tower_dims(*trivial, k) == std::pair<int, int>{0, 0});

    TowerPtr z2 = cat.tower("z2rp");
    CHECK(tower_dims(*z2, 5) == std::pair<int, int>{5, 5});

    // consecutive stage dimensions differ by exactly n
    for (const auto& name : {"s1", "trivial", "z2rp"}) {
        TowerPtr t = cat.tower(name);
        for (int k = 1; k < 8; ++k)
            CHECK(t->stage(k + 1).base->dimension - t->stage(k).base->dimension == t->n);
    }
}

TEST_CASE("stage orientability via rational top cohomology") {
    const Catalogue& cat = shipped_catalogue();
    TowerPtr z2 = cat.tower("z2rp");
    CHECK_FALSE(tower_orientable(*z2, 2)); // RP^2
    CHECK(tower_orientable(*z2, 3));       // RP^3
    for (int k = 1; k <= 8; ++k)
        CHECK(tower_orientable(*z2, k) == (k % 2 == 1));
    TowerPtr s1 = cat.tower("s1");
    for (int k = 1; k <= 8; ++k)
        CHECK(tower_orientable(*s1, k));
}

TEST_CASE("stable range formula") {
    CHECK(stable_k(0, 0) == 2);
    CHECK(stable_k(0, -4) == 5);
    CHECK(stable_k(0, -2) == 3);
    CHECK(stable_k(3, 3) == 2);
    CHECK(stable_k(4, 0) == 5);
}

TEST_CASE("equivariant homology of the point over the circle tower") {
    const Catalogue& cat = shipped_catalogue();
    TowerPtr s1 = cat.tower("s1");

    PointHomology j0 = point_equivariant_homology(*s1, 0);
    CHECK(j0.rank == 1);
    CHECK(j0.stable_from == 2);
    CHECK(j0.generator_duals == std::vector<std::string>{"1"});
    CHECK(j0.verified_against_next);

    PointHomology jm1 = point_equivariant_homology(*s1, -1);
    CHECK(jm1.rank == 0);

    PointHomology jm2 = point_equivariant_homology(*s1, -2);
    CHECK(jm2.rank == 1);
    CHECK(jm2.stable_from == 3);
    CHECK(jm2.generator_duals == std::vector<std::string>{"t"});

    PointHomology jm4 = point_equivariant_homology(*s1, -4);
    CHECK(jm4.stable_from == 5);
    CHECK(jm4.generator_duals == std::vector<std::string>{"t2"});

    CHECK(point_equivariant_homology(*s1, 3).rank == 0); // vanishing above dim

    CHECK_THROWS_AS(point_equivariant_homology(*s1, -20), CatalogueDepth);
}

TEST_CASE("cohomological stabilization below the stage index") {
    const Catalogue& cat = shipped_catalogue();
    TowerPtr s1 = cat.tower("s1");
    for (int k = 1; k <= 7; ++k)
        CHECK(cohomological_stabilization(*s1, k));
}

TEST_CASE("the Euler-class generator restricts to itself along the tower") {
    const Catalogue& cat = shipped_catalogue();
    TowerPtr s1 = cat.tower("s1");
    for (int k = 1; k <= 7; ++k) {
        const RingMapPtr& beta = s1->stage(k).restriction;
        CHECK(beta->image_of("t") ==
              GradedElement(s1->stage(k).base->ring, "t"));
    }
}

TEST_CASE("inverse limit assembly and its certificate") {
    const Catalogue& cat = shipped_catalogue();
    TowerPtr s1 = cat.tower("s1");

    std::map<int, HomologyClass> stages;
    std::map<int, StageRestriction> links;
    for (int k = 2; k <= 6; ++k) {
        stages.emplace(k, fundamental_class(s1->stage(k).base));
        if (k < 6)
            links.emplace(k, StageRestriction{s1->stage(k + 1).base, s1->stage(k).base,
                                              s1->stage(k).restriction, nullptr});
    }

    InverseLimitClass cls = assemble_inverse_limit(stages, links, 2, 0, 0);
    CHECK(cls.verified());
    auto v = cls.value_at(0);
    CHECK(v.stage == 2);
    CHECK(v.component == fundamental_class(s1->stage(2).base));
    CHECK(v.stabilization_verified);

    // perturb one stage: the certificate must locate the failure
    auto perturbed = stages;
    SpacePtr base4 = s1->stage(4).base;
    perturbed.at(4) =
        perturbed.at(4) + HomologyClass(base4, GradedElement(base4->ring, "t"));
    try {
        assemble_inverse_limit(perturbed, links, 2, 0, 0);
        FAIL("expected CompatibilityFailure");
    } catch (const CompatibilityFailure& e) {
        CHECK((e.stage() == 3 || e.stage() == 4));
    }

    // zero family is certified and extracts to zero
    std::map<int, HomologyClass> zero;
    for (int k = 2; k <= 6; ++k)
        zero.emplace(k, HomologyClass(s1->stage(k).base,
                                      GradedElement(s1->stage(k).base->ring)));
    InverseLimitClass zcls = assemble_inverse_limit(zero, links, 2, 0, 0);
    CHECK(zcls.verified());
    CHECK(zcls.value_at(0).component.is_zero());
    CHECK(zcls.supported_equivariant_degrees().empty());

    // vanishing bound: fundamental classes of a dim-0 "space" cannot carry
    // support above equivariant degree m = -1
    CHECK_THROWS_AS(assemble_inverse_limit(stages, links, 2, 0, -1),
                    DegreeBoundViolation);
}
