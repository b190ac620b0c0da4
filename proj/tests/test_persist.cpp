#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qlm/errors.hpp"
#include "qlm/models.hpp"
#include "qlm/persist.hpp"

using namespace qlm;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

// Builds the interval module with the given barcode, with one basis element
// per interval and projection structure maps. Interval endpoints must lie on
// the grid for the decomposition to round-trip exactly.
GrVecModule module_from_intervals(const std::vector<Rational>& grid_vals,
                                  const std::map<int, std::vector<Interval>>& bars) {
    Grid grid(grid_vals);
    auto alive = [](const Interval& iv, const Rational& t) {
        return iv.birth <= t && (!iv.death || t < *iv.death);
    };
    std::vector<GradedVectorSpace> objects(grid_vals.size());
    for (std::size_t i = 0; i < grid_vals.size(); ++i)
        for (const auto& [deg, list] : bars)
            for (std::size_t k = 0; k < list.size(); ++k)
                if (alive(list[k], grid_vals[i]))
                    objects[i].add_basis_element(
                        deg, "e" + std::to_string(deg) + "_" + std::to_string(k));
    std::vector<GradedLinearMap> steps;
    for (std::size_t i = 0; i + 1 < grid_vals.size(); ++i) {
        GradedLinearMap s(objects[i], objects[i + 1], 0);
        for (const auto& [deg, list] : bars) {
            (void)list;
            const auto& sb = objects[i].basis(deg);
            const auto& tb = objects[i + 1].basis(deg);
            for (std::size_t c = 0; c < sb.size(); ++c) {
                auto it = std::find(tb.begin(), tb.end(), sb[c]);
                if (it != tb.end())
                    s.set_entry(deg, static_cast<std::size_t>(it - tb.begin()), c, 1);
            }
        }
        steps.push_back(s);
    }
    return GrVecModule(grid, std::move(objects), std::move(steps));
}

std::vector<Interval> random_intervals(std::mt19937& rng, std::size_t max_count) {
    std::uniform_int_distribution<int> count(0, static_cast<int>(max_count));
    std::uniform_int_distribution<int> coord(0, 6);
    std::uniform_int_distribution<int> inf(0, 4);
    std::vector<Interval> out;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        int b = coord(rng);
        if (inf(rng) == 0) {
            out.push_back({q(b), std::nullopt});
        } else {
            int len = 1 + coord(rng);
            out.push_back({q(b), q(b + len)});
        }
    }
    return out;
}

DGLModule cp2_filtration(int trunc) {
    CellComplexDescription desc;
    desc.stages.push_back({2, std::nullopt, {{"v", "0"}}});
    desc.stages.push_back({4, std::nullopt, {{"w", "[v,v]"}}});
    auto sk = skeletal_persistence_model(desc, trunc);
    return DGLModule(Grid(sk.times), {sk.stages[0].dgl, sk.stages[1].dgl}, {sk.inclusion(0)});
}

}  // namespace

TEST_CASE("grids") {
    Grid g({q(0), q(1, 2), q(3)});
    CHECK(g.stage_at(q(-1)) == -1);
    CHECK(g.stage_at(q(0)) == 0);
    CHECK(g.stage_at(q(1)) == 1);
    CHECK(g.stage_at(q(100)) == 2);
    CHECK_THROWS_AS(Grid(std::vector<Rational>{}), ValidationError);
    CHECK_THROWS_AS(Grid({q(1), q(1)}), ValidationError);
    CHECK_THROWS_AS(Grid({q(2), q(1)}), ValidationError);
    Grid h({q(1, 2), q(1)});
    CHECK(merged(g, h).values() == std::vector<Rational>{q(0), q(1, 2), q(1), q(3)});
}

TEST_CASE("module plumbing") {
    auto m = module_from_intervals({q(0), q(1), q(2)}, {{2, {{q(0), q(2)}, {q(1), std::nullopt}}}});
    CHECK(m.object(0).dim(2) == 1);
    CHECK(m.object(1).dim(2) == 2);
    CHECK(m.object(2).dim(2) == 1);
    CHECK(m.space_at(q(-5)).total_dim() == 0);
    CHECK(m.space_at(q(3, 2)) == m.object(1));
    CHECK(rank(m.transition(q(0), q(1)).matrix(2)) == 1);
    CHECK(rank(m.transition(q(0), q(2)).matrix(2)) == 0);
    CHECK(m.transition(q(-1), q(0)).source().total_dim() == 0);
    CHECK_THROWS_AS(m.transition(q(1), q(0)), ValidationError);

    // endpoint mismatches are rejected
    GradedVectorSpace a, b;
    a.add_basis_element(0, "x");
    b.add_basis_element(0, "y");
    b.add_basis_element(0, "z");
    CHECK_THROWS_AS(GrVecModule(Grid({q(0), q(1)}), {a, b}, {GradedLinearMap(a, a, 0)}),
                    ValidationError);
    CHECK_THROWS_AS(GrVecModule(Grid({q(0), q(1)}), {a, b}, {}), ValidationError);
}

TEST_CASE("barcodes") {
    SUBCASE("constant module survives forever") {
        auto m = module_from_intervals({q(1), q(3), q(5)}, {{2, {{q(1), std::nullopt}}}});
        auto bc = barcode(m);
        REQUIRE(bc.intervals.size() == 1);
        CHECK(bc.intervals.at(2) == std::vector<Interval>{{q(1), std::nullopt}});
    }
    SUBCASE("one-point support dies at the next grid value") {
        std::vector<GradedVectorSpace> objects(3);
        objects[1].add_basis_element(0, "x");
        std::vector<GradedLinearMap> steps{GradedLinearMap(objects[0], objects[1], 0),
                                           GradedLinearMap(objects[1], objects[2], 0)};
        GrVecModule m(Grid({q(0), q(1), q(4)}), objects, steps);
        auto bc = barcode(m);
        CHECK(bc.intervals.at(0) == std::vector<Interval>{{q(1), q(4)}});
    }
    SUBCASE("interval modules round-trip") {
        std::map<int, std::vector<Interval>> bars;
        bars[1] = {{q(0), q(2)}, {q(0), std::nullopt}, {q(1), q(3)}};
        bars[4] = {{q(2), q(3)}, {q(2), q(3)}};
        auto m = module_from_intervals({q(0), q(1), q(2), q(3)}, bars);
        auto bc = barcode(m);
        for (auto& [deg, list] : bars) std::sort(list.begin(), list.end());
        CHECK(bc.intervals == bars);
    }
    SUBCASE("barcode ranks reproduce every composite rank") {
        std::mt19937 rng(7);
        std::vector<Rational> grid_vals{q(0), q(1), q(2), q(3), q(4)};
        for (int trial = 0; trial < 20; ++trial) {
            std::uniform_int_distribution<int> coord(0, 4);
            std::map<int, std::vector<Interval>> bars;
            for (int i = 0; i < 4; ++i) {
                int b = coord(rng), d = coord(rng);
                if (b == d) {
                    bars[3].push_back({q(b), std::nullopt});
                } else {
                    bars[3].push_back({q(std::min(b, d)), q(std::max(b, d))});
                }
            }
            auto m = module_from_intervals(grid_vals, bars);
            auto bc = barcode(m);
            for (std::size_t i = 0; i < grid_vals.size(); ++i)
                for (std::size_t j = i; j < grid_vals.size(); ++j) {
                    std::size_t expect = 0;
                    for (const auto& iv : bc.intervals[3])
                        if (iv.birth <= grid_vals[i] &&
                            (!iv.death || grid_vals[j] < *iv.death))
                            ++expect;
                    CHECK(rank(m.composite(i, j).matrix(3)) == expect);
                }
        }
    }
    SUBCASE("shift translates the barcode") {
        auto m = module_from_intervals({q(1), q(2), q(4)}, {{0, {{q(1), q(4)}, {q(2), std::nullopt}}}});
        auto bc = barcode(shift(m, q(1, 2)));
        CHECK(bc.intervals.at(0) ==
              std::vector<Interval>{{q(1, 2), q(7, 2)}, {q(3, 2), std::nullopt}});
    }
}

TEST_CASE("bottleneck matching and distance") {
    SUBCASE("simple pairs") {
        Barcode a, b;
        a.intervals[0] = {{q(0), q(2)}};
        b.intervals[0] = {{q(0), q(4)}};
        // matching costs max(0,2)=2; deleting both costs max(1,2)=2
        CHECK(interleaving_distance(a, b) == q(2));
        CHECK(interleaving_distance(a, a) == q(0));
        Barcode empty;
        CHECK(interleaving_distance(a, empty) == q(1));
        Barcode inf;
        inf.intervals[0] = {{q(0), std::nullopt}};
        CHECK(!interleaving_distance(a, inf).has_value());
        Barcode inf2;
        inf2.intervals[0] = {{q(3), std::nullopt}};
        CHECK(interleaving_distance(inf, inf2) == q(3));
    }
    SUBCASE("matching beats deleting when cheaper") {
        Barcode a, b;
        a.intervals[2] = {{q(0), q(10)}};
        b.intervals[2] = {{q(1), q(10)}};
        CHECK(interleaving_distance(a, b) == q(1));
        b.intervals[2] = {{q(4), q(6)}};
        // deleting both (costs 5 and 1) beats matching (cost 4)
        CHECK(interleaving_distance(a, b) == q(4));
    }
    SUBCASE("maximum over degrees") {
        Barcode a, b;
        a.intervals[1] = {{q(0), q(2)}};
        b.intervals[1] = {{q(0), q(2)}};
        a.intervals[5] = {{q(0), q(8)}};
        CHECK(interleaving_distance(a, b) == q(4));
    }
    SUBCASE("engines agree on random inputs") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 60; ++trial) {
            auto a = random_intervals(rng, 4);
            auto b = random_intervals(rng, 4);
            for (int twice = 0; twice < 2; ++twice) {
                Rational delta = q(twice == 0 ? 1 : 3, 2);
                CHECK(delta_matchable(a, b, delta, MatchEngine::exhaustive) ==
                      delta_matchable(a, b, delta, MatchEngine::bipartite));
            }
        }
    }
    SUBCASE("distances agree across engines and satisfy the triangle inequality") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 25; ++trial) {
            Barcode a, b, c;
            a.intervals[0] = random_intervals(rng, 3);
            b.intervals[0] = random_intervals(rng, 3);
            c.intervals[0] = random_intervals(rng, 3);
            auto dab = interleaving_distance(a, b, MatchEngine::exhaustive);
            CHECK(dab == interleaving_distance(a, b, MatchEngine::bipartite));
            auto dbc = interleaving_distance(b, c, MatchEngine::exhaustive);
            auto dac = interleaving_distance(a, c, MatchEngine::exhaustive);
            if (dab && dbc && dac) CHECK(*dac <= *dab + *dbc);
        }
    }
}

TEST_CASE("interleaving certificates") {
    auto m = module_from_intervals({q(0), q(1), q(2)},
                                   {{2, {{q(0), std::nullopt}, {q(1), q(2)}}}});
    SUBCASE("shift certificate verifies") {
        auto cert = shift_certificate(m, q(1, 2));
        auto y = shift(m, q(1, 2));
        auto res = verify_interleaving(m, y, cert);
        CHECK(res.ok);
        CHECK(res.witness.empty());
        // and the identity certificate at delta 0
        auto id = shift_certificate(m, q(0));
        CHECK(verify_interleaving(m, m, id).ok);
    }
    SUBCASE("zero maps are rejected with a witness") {
        InterleavingCertificate cert{q(0), m.grid(), {}, {}};
        for (const auto& t : m.grid().values()) {
            cert.f.push_back(GradedLinearMap(m.space_at(t), m.space_at(t), 0));
            cert.g.push_back(GradedLinearMap(m.space_at(t), m.space_at(t), 0));
        }
        auto res = verify_interleaving(m, m, cert);
        CHECK(!res.ok);
        CHECK(!res.structural_error);
        CHECK(!res.witness.empty());
    }
    SUBCASE("wrong endpoints are a structural error") {
        InterleavingCertificate cert{q(0), m.grid(), {}, {}};
        auto res = verify_interleaving(m, m, cert);
        CHECK(!res.ok);
        CHECK(res.structural_error);
    }
    SUBCASE("hand-built interleaving of two offset bars") {
        auto x = module_from_intervals({q(0), q(2)}, {{0, {{q(0), q(2)}}}});
        auto y = module_from_intervals({q(1), q(3)}, {{0, {{q(1), q(3)}}}});
        Grid sample({q(-1), q(0), q(1), q(2), q(3)});
        InterleavingCertificate cert{q(1), sample, {}, {}};
        for (const auto& t : sample.values()) {
            GradedLinearMap f(x.space_at(t), y.space_at(t + 1), 0);
            if (f.source().total_dim() == 1 && f.target().total_dim() == 1)
                f.set_entry(0, 0, 0, 1);
            cert.f.push_back(f);
            cert.g.push_back(GradedLinearMap(y.space_at(t), x.space_at(t + 1), 0));
        }
        auto res = verify_interleaving(x, y, cert);
        CHECK(res.ok);
        CHECK(interleaving_distance(barcode(x), barcode(y)) == q(1));
    }
}

TEST_CASE("dgl modules and pushforward") {
    auto m = cp2_filtration(7);
    SUBCASE("homology pushforward matches the stagewise oracle") {
        auto hm = homology_pushforward(m);
        for (std::size_t i = 0; i < m.size(); ++i) {
            Homology h(m.object(i).chain_complex());
            CHECK(hm.object(i) == h.space());
        }
        CHECK(rank(hm.step(0).matrix(1)) == 1);  // the bottom class survives
        auto bc = barcode(hm);
        CHECK(bc.intervals.at(1) == std::vector<Interval>{{q(2), std::nullopt}});
        CHECK(bc.intervals.at(2) == std::vector<Interval>{{q(2), q(4)}});
        CHECK(bc.intervals.at(4) == std::vector<Interval>{{q(4), std::nullopt}});
    }
    SUBCASE("generic pushforward checks functoriality") {
        auto chains = pushforward(
            m, [](const FreeDGL& d) { return d.chain_complex().space(); },
            [](const DGLMorphism& f) { return f.as_graded_map(); });
        CHECK(chains.object(0) == m.object(0).chain_complex().space());
        CHECK_THROWS_AS(
            pushforward(
                m, [](const FreeDGL& d) { return d.chain_complex().space(); },
                [](const DGLMorphism& f) {
                    auto g = f.as_graded_map();
                    return GradedLinearMap(g.source(), g.target(), 0);
                }),
            ValidationError);
    }
    SUBCASE("endpoint validation") {
        auto other = cp2_filtration(7);
        CHECK_THROWS_AS(DGLModule(m.grid(), {m.object(0), m.object(1)}, {other.step(0)}),
                        ValidationError);
    }
}

TEST_CASE("dgl certificates") {
    auto m = cp2_filtration(6);
    SUBCASE("shift certificate verifies strictly and in homology") {
        auto cert = shift_certificate(m, q(1));
        auto y = shift(m, q(1));
        auto res = verify_interleaving(m, y, cert);
        CHECK(res.ok);
        CHECK(res.witness.empty());
        auto hcert = homology_pushforward(m, y, cert);
        CHECK(hcert.delta == q(1));
        auto hres = verify_interleaving(homology_pushforward(m), homology_pushforward(y), hcert);
        CHECK(hres.ok);
    }
    SUBCASE("identity certificate at delta zero") {
        auto cert = shift_certificate(m, q(0));
        CHECK(verify_interleaving(m, m, cert).ok);
    }
    SUBCASE("zero morphisms fail compatibility") {
        DGLCertificate cert{q(0), m.grid(), {}, {}};
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::vector<LieElement> zeros(m.object(i).generators().size());
            cert.f.push_back(DGLMorphism(m.object(i), m.object(i), zeros));
            cert.g.push_back(DGLMorphism(m.object(i), m.object(i), zeros));
        }
        auto res = verify_interleaving(m, m, cert);
        CHECK(!res.ok);
        CHECK(!res.structural_error);
    }
    SUBCASE("mismatched sample length is structural") {
        DGLCertificate cert{q(0), m.grid(), {}, {}};
        auto res = verify_interleaving(m, m, cert);
        CHECK(!res.ok);
        CHECK(res.structural_error);
    }
}
