#include "doctest.h"

#include "hfk/complex.hpp"
#include "hfk/knotlib.hpp"

using namespace hfk;

namespace {

ComplexPtr trefoil() { return staircase_torus(1).complex; }
ComplexPtr fig8() { return figure_eight().complex; }

} // namespace

TEST_CASE("verify accepts the model complexes") {
    CHECK(trefoil()->verify().ok());
    CHECK(fig8()->verify().ok());
    // d^2(a) = U e + U e = 0 in the figure-eight complex
    auto c = fig8();
    Element dd = c->diff(c->diff(Element::gen(c->index_of("a"))));
    CHECK(dd.is_zero());
}

TEST_CASE("verify reports a forced failure") {
    BigradedComplex bad;
    bad.add_generator("g", 0, 0);
    bad.add_generator("h", 1, -1);
    bad.add_diff("g", "h", wz(1, 0));
    bad.add_diff("h", "g", wz(0, 1));
    auto rep = make_complex(std::move(bad))->verify();
    CHECK(!rep.ok());
    bool saw_dsq = false;
    for (const auto& v : rep.violations)
        saw_dsq |= v.kind == "d_squared";
    CHECK(saw_dsq);
}

TEST_CASE("tensor rank and Leibniz differential") {
    auto c3 = staircase_torus(3).complex;
    auto t = BigradedComplex::tensor(c3, c3);
    CHECK(t->rank() == 121);
    CHECK(t->verify().ok());

    auto c1 = trefoil();
    auto t1 = BigradedComplex::tensor(c1, c1);
    // d(x0*x0) = Z y-1*x0 + W y1*x0 + Z x0*y-1 + W x0*y1
    Element d = t1->diff(Element::gen(t1->index_of("x0*x0")));
    Element want;
    want += wz(0, 1) * Element::gen(t1->index_of("y-1*x0"));
    want += wz(1, 0) * Element::gen(t1->index_of("y1*x0"));
    want += wz(0, 1) * Element::gen(t1->index_of("x0*y-1"));
    want += wz(1, 0) * Element::gen(t1->index_of("x0*y1"));
    CHECK(d == want);

    // unknot is the tensor unit
    auto u = unknot().complex;
    auto tu = BigradedComplex::tensor(u, c1);
    CHECK(tu->rank() == c1->rank());
    CHECK(tu->verify().ok());
}

TEST_CASE("tensor associativity up to the canonical re-pairing") {
    auto a = trefoil();
    auto b = fig8();
    auto c = unknot().complex;
    auto left = BigradedComplex::tensor(BigradedComplex::tensor(a, b), c);
    auto right = BigradedComplex::tensor(a, BigradedComplex::tensor(b, c));
    REQUIRE(left->rank() == right->rank());
    for (std::size_t i = 0; i < left->rank(); ++i) {
        CHECK(left->gen(i).gr_w == right->gen(i).gr_w);
        CHECK(left->gen(i).gr_z == right->gen(i).gr_z);
        CHECK(left->diff_row(static_cast<int>(i)) == right->diff_row(static_cast<int>(i)));
    }
}

TEST_CASE("dual is a grading-negating involution") {
    auto c1 = trefoil();
    auto d = BigradedComplex::dual(c1);
    CHECK(d->verify().ok());
    // transposing d x0 = Z y-1 + W y1
    CHECK(d->diff(Element::gen(d->index_of("y1"))) == wz(1, 0) * Element::gen(d->index_of("x0")));
    CHECK(d->diff(Element::gen(d->index_of("y-1"))) == wz(0, 1) * Element::gen(d->index_of("x0")));
    for (std::size_t i = 0; i < c1->rank(); ++i) {
        CHECK(d->gen(i).gr_w == -c1->gen(i).gr_w);
        CHECK(d->gen(i).gr_z == -c1->gen(i).gr_z);
    }
    auto dd = BigradedComplex::dual(d);
    for (std::size_t i = 0; i < c1->rank(); ++i) {
        CHECK(dd->gen(i).gr_w == c1->gen(i).gr_w);
        CHECK(dd->diff_row(static_cast<int>(i)) == c1->diff_row(static_cast<int>(i)));
    }
    CHECK(BigradedComplex::dual(staircase_torus(3).complex)->rank() == 11);
}

TEST_CASE("reverse exchanges W and Z") {
    auto r = BigradedComplex::reverse(trefoil());
    CHECK(r->verify().ok());
    Element d = r->diff(Element::gen(r->index_of("x0")));
    Element want;
    want += wz(1, 0) * Element::gen(r->index_of("y-1"));
    want += wz(0, 1) * Element::gen(r->index_of("y1"));
    CHECK(d == want);
}

TEST_CASE("alexander_slice of the trefoil at 0") {
    auto s = alexander_slice(trefoil(), 0);
    REQUIRE(s->rank() == 3);
    CHECK(s->verify().ok());
    CHECK(s->gen(s->index_of("x0")).gr == -1);
    CHECK(s->gen(s->index_of("W y1")).gr == -2);
    CHECK(s->gen(s->index_of("Z y-1")).gr == -2);
    UElement d = s->diff(UElement::gen(s->index_of("x0")));
    CHECK(d == UElement::gen(s->index_of("W y1")) + UElement::gen(s->index_of("Z y-1")));
}

TEST_CASE("alexander_slice of the figure eight at 0") {
    auto s = alexander_slice(fig8(), 0);
    REQUIRE(s->rank() == 5);
    CHECK(s->verify().ok());
    CHECK(s->diff(UElement::gen(s->index_of("a"))) ==
          UElement::gen(s->index_of("W b")) + UElement::gen(s->index_of("Z c")));
    CHECK(s->diff(UElement::gen(s->index_of("W b"))) == upow(1) * UElement::gen(s->index_of("e")));
    CHECK(s->diff(UElement::gen(s->index_of("Z c"))) == upow(1) * UElement::gen(s->index_of("e")));
}

TEST_CASE("alexander_slice of the unknot") {
    auto s = alexander_slice(unknot().complex, 0);
    REQUIRE(s->rank() == 1);
    CHECK(s->diff_row(0).empty());
    for (int t = -3; t <= 3; ++t)
        CHECK(alexander_slice(unknot().complex, t)->rank() == 1);
}

TEST_CASE("chain map composition and the skew transport") {
    auto k = staircase_torus(1);
    const ChainMap& phi = k.map("phi");
    CHECK(phi.check_graded().ok());
    CHECK(phi.is_chain_map());

    ChainMap sq = compose(phi, phi);
    CHECK(sq.variance() == Variance::Equivariant);
    CHECK(sq == ChainMap::identity(k.complex));

    ChainMap id = ChainMap::identity(k.complex);
    CHECK(compose(id, phi) == phi);
    CHECK(add(phi, phi).is_zero());
}

TEST_CASE("is_chain_map catches a broken skew map") {
    auto k = staircase_torus(1);
    ChainMap f(k.complex, k.complex, Variance::Skew, 0, 0);
    f.add_entry("y1", "y1", wz(1, 0));
    CHECK(!f.check_graded().ok());
}

TEST_CASE("slice_map restricts symmetry maps to slices") {
    auto k = staircase_torus(1);
    auto a0 = alexander_slice(k.complex, 0);
    UMap phi0 = slice_map(k.map("phi"), a0, 0, a0);
    CHECK(phi0.is_chain_map());
    CHECK(phi0.check_graded().ok());
    CHECK(phi0.apply(UElement::gen(a0->index_of("W y1"))) == UElement::gen(a0->index_of("Z y-1")));
    CHECK(phi0.apply(UElement::gen(a0->index_of("x0"))) == UElement::gen(a0->index_of("x0")));
}

TEST_CASE("ucomplex tensor and dual") {
    auto a0 = alexander_slice(fig8(), 0);
    auto t = UComplex::tensor(a0, a0);
    CHECK(t->rank() == 25);
    CHECK(t->verify().ok());
    auto d = UComplex::dual(a0);
    CHECK(d->verify().ok());
    CHECK(d->gen(0).gr == -a0->gen(0).gr);
}
