#include "doctest.h"

#include "hfk/knotlib.hpp"
#include "hfk/linalg.hpp"

#include <random>

using namespace hfk;

namespace {

UComplexPtr free_tower() {
    UComplex c;
    c.add_generator("g", 0);
    return make_ucomplex(std::move(c));
}

UComplexPtr two_step(int power) {
    UComplex c;
    c.add_generator("a", 0);
    c.add_generator("b", 1 - 2 * power);
    c.add_diff("b", "a", upow(power));
    return make_ucomplex(std::move(c));
}

} // namespace

TEST_CASE("homology towers of the model slices") {
    // A_0 of the trefoil: one free tower at gr -2, no torsion
    auto a0t = alexander_slice(staircase_torus(1).complex, 0);
    TowerDecomposition t = homology_towers(a0t);
    CHECK(t.free_gradings == std::vector<int>{-2});
    CHECK(t.torsion.empty());

    // A_0 of the figure eight: free tower at 0 plus F2[U]/U at 0
    auto a0f = alexander_slice(figure_eight().complex, 0);
    TowerDecomposition f = homology_towers(a0f);
    CHECK(f.free_gradings == std::vector<int>{0});
    CHECK(f.torsion == std::vector<std::pair<int, int>>{{0, 1}});

    // F2[U] itself
    TowerDecomposition u = homology_towers(free_tower());
    CHECK(u.free_gradings == std::vector<int>{0});
    CHECK(u.torsion.empty());
}

TEST_CASE("homology towers see torsion orders") {
    TowerDecomposition t = homology_towers(two_step(3));
    CHECK(t.free_gradings.empty());
    CHECK(t.torsion == std::vector<std::pair<int, int>>{{0, 3}});
}

TEST_CASE("towers are invariant under adding a cancelling pair") {
    // stabilization: same complex plus an acyclic U^0 pair
    auto c3 = staircase_torus(3);
    auto a2 = alexander_slice(c3.complex, 2);
    UComplex stab;
    for (const auto& g : a2->gens())
        stab.add_generator(g.id, g.gr);
    for (std::size_t i = 0; i < a2->rank(); ++i)
        for (const auto& [j, coef] : a2->diff_row(static_cast<int>(i)))
            stab.add_diff(static_cast<int>(i), j, coef);
    stab.add_generator("p", 5);
    stab.add_generator("q", 4);
    stab.add_diff("p", "q", upow(0));
    CHECK(homology_towers(make_ucomplex(std::move(stab))) == homology_towers(a2));
}

TEST_CASE("reduce_units collapses the localized slice model") {
    auto a0f = alexander_slice(figure_eight().complex, 0);
    Reduction r = reduce_units(a0f);
    // a, Wb, Zc cancel down to x0, e with dE... remaining differential is in im U
    CHECK(r.reduced->rank() == 3);
    for (std::size_t i = 0; i < r.reduced->rank(); ++i)
        for (const auto& [j, coef] : r.reduced->diff_row(static_cast<int>(i)))
            for (const auto& m : coef.terms())
                CHECK(m.u >= 1);
    // the reduction interface is verified internally; spot check shapes
    CHECK(r.project.source()->rank() == 5);
    CHECK(r.include.target()->rank() == 5);
}

TEST_CASE("solve_nullhomotopy finds and certifies witnesses") {
    // U id on the two-step complex db = U a is null-homotopic
    auto c = two_step(1);
    UMap f = UMap::u_times(c, 1);
    NullhomotopyResult res = solve_nullhomotopy(f);
    REQUIRE(res.homotopy.has_value());
    CHECK(add(d_commutator(*res.homotopy), f).is_zero());

    // the identity of F2[U] is not null-homotopic; obstruction reported
    UMap id = UMap::identity(free_tower());
    NullhomotopyResult none = solve_nullhomotopy(id);
    CHECK(!none.homotopy.has_value());
    CHECK(none.obstruction.has_value());
}

TEST_CASE("solve_nullhomotopy for 1 + phi^2 on a swap model") {
    // the swap inversion squares to the identity only up to homotopy
    auto t = swap_involution(staircase_torus(1));
    ChainMap phi2 = compose(t.map("phi"), t.map("phi"));
    ChainMap f = add(ChainMap::identity(t.complex), phi2);
    auto h = solve_nullhomotopy(f);
    REQUIRE(h.has_value());
    CHECK(add(chain_commutator(*h), f).is_zero());

    // the strong-inversion square on the figure eight is exactly the identity
    auto k = figure_eight();
    ChainMap s2 = compose(k.map("sigma"), k.map("sigma"));
    CHECK(s2 == ChainMap::identity(k.complex));
}

TEST_CASE("homotopy_between identities") {
    auto k = figure_eight();
    ChainMap id = ChainMap::identity(k.complex);

    // xi^2 ~ id on the figure eight
    ChainMap xi = sarkar_xi(k.complex);
    CHECK(homotopy_between(compose(xi, xi), id).has_value());

    // id is not homotopic to 0 on F2[U]
    auto tower = free_tower();
    CHECK(!homotopy_between(UMap::identity(tower), UMap::zero(tower, tower, 0)).has_value());

    // iota phi ~ phi iota on the figure eight
    ChainMap lhs = compose(k.map("iota"), k.map("phi"));
    ChainMap rhs = compose(k.map("phi"), k.map("iota"));
    CHECK(homotopy_between(lhs, rhs).has_value());
}

TEST_CASE("homotopic is an equivalence relation on random chain maps") {
    auto k = figure_eight();
    auto basis = chain_map_space(k.complex, k.complex, Variance::Equivariant, 0, 0);
    REQUIRE(!basis.empty());
    std::mt19937 rng(23);
    auto rand_map = [&] {
        ChainMap f = ChainMap::zero(k.complex, k.complex, Variance::Equivariant, 0, 0);
        for (const auto& b : basis)
            if (rng() % 2)
                f = add(f, b);
        return f;
    };
    for (int trial = 0; trial < 6; ++trial) {
        ChainMap f = rand_map(), g = rand_map(), h = rand_map();
        CHECK(homotopy_between(f, f).has_value()); // reflexive
        auto fg = homotopy_between(f, g);
        auto gf = homotopy_between(g, f);
        CHECK(fg.has_value() == gf.has_value()); // symmetric
        auto gh = homotopy_between(g, h);
        if (fg && gh) { // transitive with explicit witness
            ChainMap sum = add(*fg, *gh);
            CHECK(add(chain_commutator(sum), add(f, h)).is_zero());
        }
    }
}

TEST_CASE("chain_map_space examples") {
    // maps F2[U] -> F2[U] of shift 0: multiples of the identity
    auto tower = free_tower();
    auto sp = chain_map_space(tower, tower, 0);
    CHECK(sp.size() == 1);

    // grading-preserving chain maps A_0(trefoil) -> F2[U]<gr -2> include v
    UComplex shifted;
    shifted.add_generator("d", -2);
    auto target = make_ucomplex(std::move(shifted));
    auto a0 = alexander_slice(staircase_torus(1).complex, 0);
    auto maps = chain_map_space(a0, target, 0);
    bool found_v = false;
    for (const auto& f : maps) {
        UElement img = f.apply(UElement::gen(a0->index_of("W y1")));
        if (img == UElement::gen(0))
            found_v = true;
    }
    CHECK(found_v);

    // skew chain maps on the trefoil of shift 0 contain the strong inversion
    auto k = staircase_torus(1);
    auto skew = chain_map_space(k.complex, k.complex, Variance::Skew, 0, 0);
    bool found_phi = false;
    for (const auto& f : skew)
        found_phi |= (f == k.map("phi"));
    CHECK(found_phi);
}

TEST_CASE("tower_class finds the top nontorsion cycle") {
    auto a0t = alexander_slice(staircase_torus(1).complex, 0);
    TowerClass t = tower_class(a0t);
    CHECK(t.grading == -2);
    // the witness is a genuine nontorsion cycle
    CHECK(a0t->diff(t.cycle).is_zero());
}

TEST_CASE("mod U homotopy drops U-divisible equations") {
    // phi-bar with [d, phi-bar] in im U only: almost-commuting is accepted
    auto c = two_step(2); // db = U^2 a
    UMap f(c, c, 0);
    f.add_entry("a", "a", upow(0));
    f.add_entry("b", "b", upow(0));
    // f is honestly a chain map; f ~ id mod U and strictly
    CHECK(homotopy_between(f, UMap::identity(c), true).has_value());
    CHECK(homotopy_between(f, UMap::identity(c), false).has_value());

    // U id ~ 0 mod U but not strictly on F2[U]
    auto tower = free_tower();
    UMap uid = UMap::u_times(tower, 1);
    UMap z = UMap::zero(tower, tower, -2);
    CHECK(homotopy_between(uid, z, true).has_value());
    CHECK(!homotopy_between(uid, z, false).has_value());
}
