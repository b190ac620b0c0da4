#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlm/errors.hpp"
#include "qlm/pipeline.hpp"

using namespace qlm;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

CellComplexDescription cp2_desc(std::optional<Rational> t1 = std::nullopt,
                                std::optional<Rational> t2 = std::nullopt) {
    CellComplexDescription desc;
    desc.stages.push_back({2, t1, {{"v", "0"}}});
    desc.stages.push_back({4, t2, {{"w", "[v,v]"}}});
    return desc;
}

std::vector<Interval> bars(Rational birth, std::optional<Rational> death) {
    return {{birth, death}};
}

}  // namespace

TEST_CASE("building persistence models") {
    SUBCASE("projective plane filtration is already minimal") {
        auto free_model = build_persistence_model(cp2_desc(), 7, false);
        CHECK(free_model.minimal);
        CHECK(free_model.module.size() == 2);
        CHECK(free_model.module.grid().values() == std::vector<Rational>{q(2), q(4)});
        CHECK(free_model.degree_cutoff == 5);
        auto min_model = build_persistence_model(cp2_desc(), 7, true);
        CHECK(min_model.minimal);
        CHECK(min_model.module.object(1).generators().size() == 2);
    }
    SUBCASE("cancelling cell pair collapses in the minimal variant") {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"a", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"b", "a"}}});
        auto free_model = build_persistence_model(desc, 6, false);
        CHECK(!free_model.minimal);
        CHECK(free_model.module.object(1).generators().size() == 2);
        auto min_model = build_persistence_model(desc, 6, true);
        CHECK(min_model.minimal);
        CHECK(min_model.module.object(0).generators().size() == 1);
        CHECK(min_model.module.object(1).generators().empty());
    }
    SUBCASE("single stage gives a constant model") {
        CellComplexDescription desc;
        desc.stages.push_back({3, std::nullopt, {{"v", "0"}}});
        auto model = build_persistence_model(desc, 8, false);
        CHECK(model.module.size() == 1);
        CHECK(model.minimal);
    }
}

TEST_CASE("homotopy barcodes") {
    SUBCASE("projective plane golden values") {
        auto model = build_persistence_model(cp2_desc(), 7, false);
        auto bc = pi_barcode(model);
        CHECK(bc.intervals.at(2) == bars(q(2), std::nullopt));
        CHECK(bc.intervals.at(3) == bars(q(2), q(4)));
        CHECK(bc.intervals.at(5) == bars(q(4), std::nullopt));
    }
    SUBCASE("constant sphere filtration") {
        CellComplexDescription desc;
        desc.stages.push_back({3, std::nullopt, {{"v", "0"}}});
        auto bc = pi_barcode(build_persistence_model(desc, 8, false));
        CHECK(bc.intervals.at(3) == bars(q(3), std::nullopt));
    }
    SUBCASE("wedge growth adds a bar") {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"v", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"u", "0"}}});
        auto bc = pi_barcode(build_persistence_model(desc, 6, false));
        CHECK(bc.intervals.at(2) == bars(q(2), std::nullopt));
        REQUIRE(bc.intervals.at(3).size() >= 2);
        CHECK(bc.intervals.at(3)[0].birth == q(2));
        CHECK(bc.intervals.at(3)[1].birth == q(3));
    }
    SUBCASE("minimal and free variants agree") {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"a", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"b", "a"}}});
        desc.stages.push_back({4, std::nullopt, {{"c", "0"}}});
        CHECK(pi_barcode(build_persistence_model(desc, 6, false)) ==
              pi_barcode(build_persistence_model(desc, 6, true)));
    }
}

TEST_CASE("space homology barcodes") {
    SUBCASE("projective plane golden values") {
        auto model = build_persistence_model(cp2_desc(), 7, true);
        auto bc = h_barcode(model);
        CHECK(bc.intervals.at(0) == bars(q(2), std::nullopt));
        CHECK(bc.intervals.at(2) == bars(q(2), std::nullopt));
        CHECK(bc.intervals.at(4) == bars(q(4), std::nullopt));
        CHECK(bc.intervals.size() == 3);
    }
    SUBCASE("point model has only the constant class") {
        PersistenceQuillenModel point{
            DGLModule(Grid({q(0)}), {FreeDGL::make({}, 5)}, {}), true, 3};
        auto bc = h_barcode(point);
        CHECK(bc.intervals.size() == 1);
        CHECK(bc.intervals.at(0) == bars(q(0), std::nullopt));
    }
    SUBCASE("wedge of spheres counts trivially attached cells") {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"a", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"b", "0"}, {"c", "0"}}});
        auto bc = h_barcode(build_persistence_model(desc, 6, true));
        CHECK(bc.intervals.at(0) == bars(q(2), std::nullopt));
        CHECK(bc.intervals.at(2) == bars(q(2), std::nullopt));
        CHECK(bc.intervals.at(3) ==
              std::vector<Interval>{{q(3), std::nullopt}, {q(3), std::nullopt}});
    }
    SUBCASE("non-minimal stages are rejected") {
        CellComplexDescription desc;
        desc.stages.push_back({2, std::nullopt, {{"a", "0"}}});
        desc.stages.push_back({3, std::nullopt, {{"b", "a"}}});
        auto free_model = build_persistence_model(desc, 6, false);
        CHECK_THROWS_AS(h_barcode(free_model), ValidationError);
    }
}

TEST_CASE("stability reports") {
    SUBCASE("a model against itself") {
        auto x = build_persistence_model(cp2_desc(), 6, true);
        auto rep = stability_report(x, x);
        CHECK(rep.pi_distance == q(0));
        CHECK(rep.h_distance == q(0));
        CHECK(rep.generator_distance == q(0));
        CHECK(rep.dgl_upper_bound == q(0));
        CHECK(rep.pi_matches_model_homology_distance);
        CHECK(rep.ok);
        CHECK(rep.homotopy_distance_note == "not computed");
    }
    SUBCASE("shift pairs are certified automatically") {
        auto x = build_persistence_model(cp2_desc(), 6, true);
        PersistenceQuillenModel y{shift(x.module, q(3, 2)), x.minimal, x.degree_cutoff};
        auto rep = stability_report(x, y, std::nullopt, q(3, 2));
        CHECK(rep.dgl_upper_bound == q(3, 2));
        CHECK(rep.pi_distance == q(3, 2));
        CHECK(rep.h_distance.value() <= q(3, 2));
        CHECK(rep.ok);
        // the swapped order is certified too
        auto rep2 = stability_report(y, x, std::nullopt, q(3, 2));
        CHECK(rep2.dgl_upper_bound == q(3, 2));
        CHECK(rep2.ok);
    }
    SUBCASE("delayed cell attachment with a hand-built certificate") {
        auto x = build_persistence_model(cp2_desc(q(2), q(4)), 7, false);
        auto y = build_persistence_model(cp2_desc(q(2), q(5)), 7, false);
        auto vy0 = y.module.object(0).basis()->generator_element("v");
        auto vy1 = y.module.object(1).basis()->generator_element("v");
        auto wy1 = y.module.object(1).basis()->generator_element("w");
        auto vx0 = x.module.object(0).basis()->generator_element("v");
        auto vx1 = x.module.object(1).basis()->generator_element("v");
        auto wx1 = x.module.object(1).basis()->generator_element("w");
        DGLCertificate cert{q(1), Grid({q(2), q(4), q(5)}), {}, {}};
        cert.f = {DGLMorphism(x.module.object(0), y.module.object(0), {vy0}),
                  DGLMorphism(x.module.object(1), y.module.object(1), {vy1, wy1}),
                  DGLMorphism(x.module.object(1), y.module.object(1), {vy1, wy1})};
        cert.g = {DGLMorphism(y.module.object(0), x.module.object(0), {vx0}),
                  DGLMorphism(y.module.object(0), x.module.object(1), {vx1}),
                  DGLMorphism(y.module.object(1), x.module.object(1), {vx1, wx1})};
        auto rep = stability_report(x, y, cert);
        CHECK(rep.dgl_upper_bound == q(1));
        CHECK(rep.pi_distance == q(1));
        CHECK(rep.ok);
        // the delayed 4-cell lengthens the degree 3 bar by one
        auto bx = pi_barcode(x), by = pi_barcode(y);
        CHECK(bx.intervals.at(3) == bars(q(2), q(4)));
        CHECK(by.intervals.at(3) == bars(q(2), q(5)));
    }
    SUBCASE("an invalid certificate yields no bound") {
        auto x = build_persistence_model(cp2_desc(q(2), q(4)), 6, false);
        auto y = build_persistence_model(cp2_desc(q(2), q(5)), 6, false);
        auto rep = stability_report(x, y);
        CHECK(!rep.dgl_upper_bound.has_value());
        CHECK(rep.pi_distance == q(1));
        CHECK(rep.ok);
    }
    SUBCASE("mismatched truncations are rejected") {
        auto x = build_persistence_model(cp2_desc(), 6, false);
        auto y = build_persistence_model(cp2_desc(), 7, false);
        CHECK_THROWS_AS(stability_report(x, y), ValidationError);
    }
}
