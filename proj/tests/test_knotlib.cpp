#include "doctest.h"

#include "hfk/knotlib.hpp"
#include "hfk/linalg.hpp"

using namespace hfk;

TEST_CASE("staircase_torus shape and gradings") {
    auto k1 = staircase_torus(1);
    REQUIRE(k1.complex->rank() == 3);
    Element d = k1.complex->diff(Element::gen(k1.complex->index_of("x0")));
    Element want;
    want += wz(0, 1) * Element::gen(k1.complex->index_of("y-1"));
    want += wz(1, 0) * Element::gen(k1.complex->index_of("y1"));
    CHECK(d == want);
    CHECK(k1.complex->gen(k1.complex->index_of("y1")).gr_w == 0);
    CHECK(k1.complex->gen(k1.complex->index_of("y1")).gr_z == -2);
    CHECK(k1.complex->gen(k1.complex->index_of("x0")).gr_w == -1);
    CHECK(k1.complex->gen(k1.complex->index_of("y-1")).gr_z == 0);
    CHECK(k1.genus() == 1);

    auto k3 = staircase_torus(3);
    CHECK(k3.complex->rank() == 11);
    CHECK(k3.genus() == 15);
    // exponent sequence (1,5,2,4,3,3,4,2,5,1): middle arrows out of x0
    Element d0 = k3.complex->diff(Element::gen(k3.complex->index_of("x0")));
    Element want3;
    want3 += wz(0, 3) * Element::gen(k3.complex->index_of("y-1"));
    want3 += wz(3, 0) * Element::gen(k3.complex->index_of("y1"));
    CHECK(d0 == want3);
    Element d2 = k3.complex->diff(Element::gen(k3.complex->index_of("x4")));
    Element want4;
    want4 += wz(0, 5) * Element::gen(k3.complex->index_of("y3"));
    want4 += wz(1, 0) * Element::gen(k3.complex->index_of("y5"));
    CHECK(d2 == want4);

    for (int n = 1; n <= 6; ++n) {
        auto k = staircase_torus(n);
        CHECK(k.complex->rank() == static_cast<std::size_t>(4 * n - 1));
        CHECK(k.complex->verify().ok());
        const ChainMap& phi = k.map("phi");
        CHECK(phi.check_graded().ok());
        CHECK(phi.is_chain_map());
        // phi is exactly an involution on staircases
        CHECK(compose(phi, phi) == ChainMap::identity(k.complex));
    }
}

TEST_CASE("figure_eight tables") {
    auto k = figure_eight();
    CHECK(k.complex->verify().ok());
    auto gen = [&](const char* id) { return Element::gen(k.complex->index_of(id)); };
    CHECK(k.map("phi").apply(gen("x0")) == gen("x0") + gen("e"));
    CHECK(k.map("sigma").apply(gen("b")) == gen("c"));
    CHECK(k.map("sigma_prime").apply(gen("a")) == gen("a") + gen("e"));
    CHECK(k.map("iota").apply(gen("a")) == gen("a") + gen("x0"));
    for (const char* key : {"iota", "sigma", "sigma_prime", "phi"}) {
        CHECK(k.map(key).check_graded().ok());
        CHECK(k.map(key).is_chain_map());
    }
    // iota^2 ~ xi, sigma^2 ~ id, phi^2 ~ xi, phi iota ~ iota phi
    ChainMap xi = sarkar_xi(k.complex);
    CHECK(homotopy_between(compose(k.map("iota"), k.map("iota")), xi).has_value());
    CHECK(homotopy_between(compose(k.map("sigma"), k.map("sigma")), ChainMap::identity(k.complex))
              .has_value());
    CHECK(homotopy_between(compose(k.map("phi"), k.map("phi")), xi).has_value());
    CHECK(homotopy_between(compose(k.map("phi"), k.map("iota")), compose(k.map("iota"), k.map("phi")))
              .has_value());
}

TEST_CASE("box complex") {
    for (int n : {1, 2, 3, 6}) {
        auto k = box(n);
        CHECK(k.complex->verify().ok());
        CHECK(k.map("phi").check_graded().ok());
        CHECK(k.map("phi").is_chain_map());
    }
    auto k = box(2);
    auto gen = [&](const char* id) { return Element::gen(k.complex->index_of(id)); };
    CHECK(k.map("phi").apply(gen("v")) == gen("v") + gen("t"));
    CHECK(k.complex->gen(k.complex->index_of("r1")).gr_w == 1);
    CHECK(k.complex->gen(k.complex->index_of("r1")).gr_z == 1 - 2 * 2);
}

TEST_CASE("basepoint maps and the Sarkar map") {
    auto k1 = staircase_torus(1);
    ChainMap phi = basepoint_phi(k1.complex);
    ChainMap psi = basepoint_psi(k1.complex);
    auto gen = [&](const char* id) { return Element::gen(k1.complex->index_of(id)); };
    CHECK(phi.apply(gen("x0")) == gen("y1"));
    CHECK(phi.apply(gen("y1")).is_zero());
    CHECK(psi.apply(gen("x0")) == gen("y-1"));
    CHECK(chain_commutator(phi).is_zero());
    CHECK(chain_commutator(psi).is_zero());
    // xi = id on staircases
    CHECK(sarkar_xi(k1.complex) == ChainMap::identity(k1.complex));
    CHECK(sarkar_xi(staircase_torus(2).complex) == ChainMap::identity(staircase_torus(2).complex));

    auto f8 = figure_eight();
    ChainMap xi = sarkar_xi(f8.complex);
    auto g8 = [&](const char* id) { return Element::gen(f8.complex->index_of(id)); };
    CHECK(xi.apply(g8("a")) == g8("a") + g8("e"));

    // Phi on the box: r0 -> r1 (n = 1), r-1 -> t
    auto b1 = box(1);
    ChainMap phib = basepoint_phi(b1.complex);
    auto gb = [&](const char* id) { return Element::gen(b1.complex->index_of(id)); };
    CHECK(phib.apply(gb("r0")) == gb("r1"));
    CHECK(phib.apply(gb("r-1")) == gb("t"));
}

TEST_CASE("xi squared is homotopic to the identity on a tensor square") {
    auto t = BigradedComplex::tensor(staircase_torus(3).complex, staircase_torus(3).complex);
    ChainMap xi = sarkar_xi(t);
    CHECK(homotopy_between(compose(xi, xi), ChainMap::identity(t)).has_value());
}

TEST_CASE("swap involution") {
    auto t1 = swap_involution(staircase_torus(1));
    const ChainMap& sw1 = t1.map("phi");
    CHECK(sw1.variance() == Variance::Skew);
    CHECK(sw1.check_graded().ok());
    CHECK(sw1.is_chain_map());
    // y_i (x) y_j -> y_{-j} (x) y_{-i} with no correction
    auto idx = [&](const char* id) { return t1.complex->index_of(id); };
    CHECK(sw1.apply(Element::gen(idx("y1*y-1"))) == Element::gen(idx("y1*y-1")));
    CHECK(sw1.apply(Element::gen(idx("y1*y1"))) == Element::gen(idx("y-1*y-1")));
    // x0 (x) x0 picks up the correction term in U-power 0
    CHECK(sw1.apply(Element::gen(idx("x0*x0"))) ==
          Element::gen(idx("x0*x0")) + Element::gen(idx("y1*y-1")));
    CHECK(homotopy_between(compose(sw1, sw1), ChainMap::identity(t1.complex)).has_value());
}

TEST_CASE("swap involution squared on the n = 3 model") {
    auto t3 = swap_involution(staircase_torus(3));
    const ChainMap& sw = t3.map("phi");
    CHECK(sw.is_chain_map());
    CHECK(homotopy_between(compose(sw, sw), ChainMap::identity(t3.complex)).has_value());
}

TEST_CASE("connected sums tensor complexes and maps") {
    auto k1 = staircase_torus(1);
    auto sum = connected_sum(k1, k1);
    CHECK(sum.complex->rank() == 9);
    CHECK(sum.complex->verify().ok());
    const ChainMap& phi = sum.map("phi");
    CHECK(phi.variance() == Variance::Skew);
    CHECK(phi.is_chain_map());
    CHECK(homotopy_between(compose(phi, phi), ChainMap::identity(sum.complex)).has_value());
    // Alexander additivity spot checks
    auto c = sum.complex;
    CHECK(c->gen(c->index_of("y1*y1")).alexander() == 2);
    CHECK(c->gen(c->index_of("y1*y-1")).alexander() == 0);

    auto s33 = connected_sum(staircase_torus(3), staircase_torus(3));
    const ChainMap& phi33 = s33.map("phi");
    CHECK(homotopy_between(compose(phi33, phi33), ChainMap::identity(s33.complex)).has_value());
}

TEST_CASE("mirror and reverse") {
    auto k = staircase_torus(3);
    auto m = mirror(k);
    CHECK(m.complex->rank() == 11);
    CHECK(m.complex->verify().ok());
    CHECK(m.map("phi").check_graded().ok());
    CHECK(m.map("phi").is_chain_map());
    auto mm = mirror(m);
    CHECK(mm.complex->gen(0).gr_w == k.complex->gen(0).gr_w);
    CHECK(mm.complex->diff_row(0) == k.complex->diff_row(0));

    auto r = reverse(staircase_torus(1));
    CHECK(r.complex->verify().ok());
    CHECK(r.map("phi").is_chain_map());
    auto f8r = reverse(figure_eight());
    CHECK(f8r.complex->verify().ok());
    for (const char* key : {"iota", "sigma", "sigma_prime", "phi"})
        CHECK(f8r.map(key).is_chain_map());
}

TEST_CASE("knot spec parsing") {
    CHECK(parse_knot_spec("torus:3").complex->rank() == 11);
    CHECK(parse_knot_spec("fig8").complex->rank() == 5);
    CHECK(parse_knot_spec("unknot").complex->rank() == 1);
    CHECK(parse_knot_spec("box:2").complex->rank() == 5);
    CHECK(parse_knot_spec("torus:1#torus:1").complex->rank() == 9);
    CHECK(parse_knot_spec("mirror(torus:3)").complex->rank() == 11);
    CHECK(parse_knot_spec("reverse(torus:1)#fig8").complex->rank() == 15);
    CHECK(parse_knot_spec("swap(torus:1)").complex->rank() == 9);
    CHECK_THROWS(parse_knot_spec("torus"));
    CHECK_THROWS(parse_knot_spec("nonsense:2"));
}
