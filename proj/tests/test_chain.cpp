#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlm/chain.hpp"
#include "qlm/errors.hpp"

using namespace qlm;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

// Two-term complex Q -> Q in degrees 1, 0 with the given differential entry.
ChainComplex two_term(const Rational& a) {
    GradedVectorSpace v;
    v.add_basis_element(0, "x0");
    v.add_basis_element(1, "x1");
    GradedLinearMap d(v, v, -1);
    d.set_entry(1, 0, 0, a);
    return ChainComplex(v, d);
}

}  // namespace

TEST_CASE("zero differential gives H = the space itself") {
    GradedVectorSpace v;
    v.add_basis_element(0, "a");
    v.add_basis_element(2, "b");
    v.add_basis_element(2, "c");
    ChainComplex c(v, GradedLinearMap(v, v, -1));
    Homology h(c);
    CHECK(h.dim(0) == 1);
    CHECK(h.dim(2) == 2);
    CHECK(h.dim(1) == 0);
}

TEST_CASE("acyclic two-term complex") {
    Homology h(two_term(q(1)));
    CHECK(h.dim(0) == 0);
    CHECK(h.dim(1) == 0);
}

TEST_CASE("d^2 != 0 rejected") {
    GradedVectorSpace v;
    v.add_basis_element(0, "a");
    v.add_basis_element(1, "b");
    v.add_basis_element(2, "c");
    GradedLinearMap d(v, v, -1);
    d.set_entry(1, 0, 0, q(1));
    d.set_entry(2, 0, 0, q(1));
    CHECK_THROWS_AS(ChainComplex(v, d), ValidationError);
}

TEST_CASE("boundary membership and class coordinates") {
    // Degrees 0,1,2: d(c) = b1; H_1 should be Q spanned by b2's class.
    GradedVectorSpace v;
    v.add_basis_element(1, "b1");
    v.add_basis_element(1, "b2");
    v.add_basis_element(2, "c");
    GradedLinearMap d(v, v, -1);
    d.set_entry(2, 0, 0, q(1));
    ChainComplex cc(v, d);
    Homology h(cc);
    CHECK(h.dim(1) == 1);
    CHECK(h.dim(2) == 0);
    CHECK(h.is_boundary(1, {q(3), q(0)}));
    CHECK(!h.is_boundary(1, {q(0), q(1)}));
    auto cls = h.class_of(1, {q(5), q(2)});
    REQUIRE(cls.size() == 1);
    CHECK(cls[0] == q(2) * h.class_of(1, h.representative(1, 0))[0]);
}

TEST_CASE("identity is a quasi-iso, zero map is not") {
    auto c = two_term(q(0));  // H = Q in degrees 0 and 1
    ChainMap id(c, c, GradedLinearMap::identity(c.space()));
    CHECK(is_quasi_iso(id, 0, 1).ok);
    ChainMap zero(c, c, GradedLinearMap::zero(c.space(), c.space(), 0));
    auto rep = is_quasi_iso(zero, 0, 1);
    CHECK(!rep.ok);
    CHECK(rep.first_failing_degree == 0);
}

TEST_CASE("non-chain maps rejected") {
    auto c0 = two_term(q(0));
    auto c1 = two_term(q(1));
    GradedLinearMap f = GradedLinearMap::identity(c0.space());
    CHECK_THROWS_AS(ChainMap(c0, c1, f), ValidationError);
}

TEST_CASE("homology is functorial on composable chain maps") {
    auto c = two_term(q(0));
    GradedLinearMap f = GradedLinearMap::identity(c.space());
    f.matrix(0).at(0, 0) = q(2);
    f.matrix(1).at(0, 0) = q(3);
    GradedLinearMap g = GradedLinearMap::identity(c.space());
    g.matrix(0).at(0, 0) = q(5);
    g.matrix(1).at(0, 0) = q(7);
    ChainMap fm(c, c, f), gm(c, c, g);
    ChainMap gf(c, c, g.compose_after(f));
    Homology h(c);
    auto hf = induced_on_homology(fm, h, h);
    auto hg = induced_on_homology(gm, h, h);
    auto hgf = induced_on_homology(gf, h, h);
    CHECK(hgf == hg.compose_after(hf));
}
