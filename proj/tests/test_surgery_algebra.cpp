#include "doctest.h"

#include "hfk/surgery_algebra.hpp"

using namespace hfk;

namespace {

// aliases between the three-generator staircase names and the customary
// one-letter trefoil names: x = y1, y = x0, z = y-1
const char* TX = "y1";
const char* TY = "x0";
const char* TZ = "y-1";

} // namespace

TEST_CASE("type-D module of the unknot at framing +1") {
    auto x = type_d_from_cfk(unknot(), 1, FlipKind::StrongInversion);
    REQUIRE(x.rank() == 2);
    CHECK(x.check_structure().ok());
    // u -> p weighted sigma + T tau
    const auto& row = x.delta_row(x.index_of("u"));
    REQUIRE(row.size() == 1);
    CHECK(row.front().second == AlgebraElement::connecting(ut(0, 0), ut(0, 1)));
}

TEST_CASE("type-D module of the trefoil at framing +1") {
    auto x = type_d_from_cfk(staircase_torus(1), 1, FlipKind::StrongInversion);
    CHECK(x.check_structure().ok());
    // x -> (T s + U T^2 t) p ; z -> (U T^-1 s + 1 t) p ; y -> W x + Z z
    const auto* ax = &x.delta_row(x.index_of(TX));
    REQUIRE(ax->size() == 1);
    CHECK(ax->front().second == AlgebraElement::connecting(ut(0, 1), ut(1, 2)));
    const auto* az = &x.delta_row(x.index_of(TZ));
    REQUIRE(az->size() == 1);
    CHECK(az->front().second == AlgebraElement::connecting(ut(1, -1), ut(0, 0)));
    const auto* ay = &x.delta_row(x.index_of(TY));
    CHECK(ay->size() == 2);
}

TEST_CASE("structure relation holds for larger models and framings") {
    for (int n : {-1, 1, 5}) {
        auto x = type_d_from_cfk(staircase_torus(3), n, FlipKind::StrongInversion);
        CHECK(x.check_structure().ok());
    }
    auto f = type_d_from_cfk(figure_eight(), 2, FlipKind::Conjugation);
    CHECK(f.check_structure().ok());
}

TEST_CASE("elliptic twist is an involution") {
    auto x = type_d_from_cfk(staircase_torus(1), 1, FlipKind::StrongInversion);
    auto e = tensor_e(x);
    // coefficient T sigma becomes T^-1 tau
    const auto& row = e.delta_row(e.index_of(TX));
    REQUIRE(row.size() == 1);
    CHECK(row.front().second == AlgebraElement::connecting(ut(1, -2), ut(0, -1)));
    CHECK(tensor_e(e) == x);
}

TEST_CASE("box tensor recovers the collapsed mapping cone") {
    struct Case {
        KnotModel k;
        FlipKind flip;
    };
    std::vector<Case> cases;
    cases.push_back({staircase_torus(1), FlipKind::StrongInversion});
    cases.push_back({figure_eight(), FlipKind::Conjugation});
    cases.push_back({staircase_torus(3), FlipKind::StrongInversion});
    for (const auto& cse : cases) {
        for (int n : {1, 2, 3}) {
            MappingCone cone(cse.k, n, cse.flip);
            CollapsedCone via_cone = collapse(cone);
            auto x = type_d_from_cfk(cse.k, n, cse.flip);
            CollapsedCone via_box = box_tensor_collapsed(x, cone.window());
            REQUIRE(via_box.slices.size() == via_cone.slices.size());
            for (const auto& [s, bs] : via_box.slices) {
                const auto& csl = via_cone.slices.at(s);
                REQUIRE(bs.a->same_generators(*csl.a));
                CHECK(bs.v == csl.v);
                CHECK(bs.h == csl.h);
            }
        }
    }
}

TEST_CASE("induced morphism of the trefoil strong inversion") {
    auto k = staircase_torus(1);
    auto x = type_d_from_cfk(k, 1, FlipKind::StrongInversion);
    TypeDMorphism m = induced_morphism(k.map("phi"), x);
    CHECK(m.twisted);
    CHECK(m.is_cycle());
    // x <-> z and y -> y with coefficient 1
    const AlgebraElement* e1 = m.entry(x.index_of(TX), x.index_of(TZ));
    REQUIRE(e1 != nullptr);
    CHECK(*e1 == AlgebraElement::from_wz(wz_one()));
    const AlgebraElement* e2 = m.entry(x.index_of(TY), x.index_of(TY));
    REQUIRE(e2 != nullptr);
    // p -> p with coefficient T^-1 (drawn as T theta)
    const AlgebraElement* ep = m.entry(x.p_index(), x.p_index());
    REQUIRE(ep != nullptr);
    CHECK(*ep == AlgebraElement::from_ut(ut(0, -1)));
    // no sigma/tau corrections appear for the trefoil
    for (std::size_t i = 0; i < x.rank(); ++i)
        for (const auto& [t, a] : m.entries[i])
            if (a.left() == Idem::One && a.right() == Idem::Zero)
                CHECK(a.is_zero());
}

TEST_CASE("equivariant box values reproduce the truncation diagram") {
    auto k = staircase_torus(1);
    auto x = type_d_from_cfk(k, 1, FlipKind::StrongInversion);
    TypeDMorphism m = induced_morphism(k.map("phi"), x);
    int xi = x.index_of(TX), zi = x.index_of(TZ), yi = x.index_of(TY);
    int p = x.p_index();

    // x | W^2 -> z | Z^2
    auto v1 = apply_box_idem0(m, xi, {2, 0});
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] == BoxValue{zi, false, {0, 2}, {}});
    // x | W <-> z | Z
    auto v2 = apply_box_idem0(m, xi, {1, 0});
    REQUIRE(v2.size() == 1);
    CHECK(v2[0] == BoxValue{zi, false, {0, 1}, {}});
    auto v3 = apply_box_idem0(m, zi, {0, 1});
    REQUIRE(v3.size() == 1);
    CHECK(v3[0] == BoxValue{xi, false, {1, 0}, {}});
    // y | W <-> y | Z, y | 1 fixed
    auto v4 = apply_box_idem0(m, yi, {1, 0});
    REQUIRE(v4.size() == 1);
    CHECK(v4[0] == BoxValue{yi, false, {0, 1}, {}});
    CHECK(apply_box_idem0(m, yi, {0, 0})[0] == BoxValue{yi, false, {0, 0}, {}});
    // p | T^0 <-> p | T
    auto v5 = apply_box_idem1(m, {0, 0});
    REQUIRE(v5.size() == 1);
    CHECK(v5[0] == BoxValue{p, true, {}, {0, 1}});
    auto v6 = apply_box_idem1(m, {0, 1});
    REQUIRE(v6.size() == 1);
    CHECK(v6[0] == BoxValue{p, true, {}, {0, 0}});
}

TEST_CASE("induced morphism of the identity is the identity") {
    auto k = figure_eight();
    auto x = type_d_from_cfk(k, 1, FlipKind::Conjugation);
    TypeDMorphism m = induced_morphism(ChainMap::identity(k.complex), x);
    CHECK(!m.twisted);
    CHECK(m.is_cycle());
    for (std::size_t i = 0; i < x.rank(); ++i) {
        const AlgebraElement* e = m.entry(static_cast<int>(i), static_cast<int>(i));
        REQUIRE(e != nullptr);
        if (x.gen(i).idem == Idem::Zero)
            CHECK(*e == AlgebraElement::from_wz(wz_one()));
        else
            CHECK(*e == AlgebraElement::from_ut(ut_one()));
    }
}

TEST_CASE("induced morphism of the periodic symmetry is a cycle") {
    auto k = figure_eight();
    auto x = type_d_from_cfk(k, 1, FlipKind::Conjugation);
    TypeDMorphism m = induced_morphism(k.map("phi"), x);
    CHECK(!m.twisted);
    CHECK(m.is_cycle());
    // phi fixes the tower, so the idempotent-1 part survives
    CHECK(m.entry(x.p_index(), x.p_index()) != nullptr);
}

TEST_CASE("induced morphism of a homotopy-trivial map is null-homotopic") {
    // an unknot summand plus an acyclic pair, which admits a graded
    // degree-(1,1) homotopy u -> w
    BigradedComplex c;
    c.add_generator("o", 0, 0);
    c.add_generator("u", 0, 0);
    c.add_generator("w", 1, 1);
    c.add_diff("w", "u", wz_one());
    KnotModel k;
    k.name = "stabilized-unknot";
    k.complex = make_complex(std::move(c));
    ChainMap id_skew(k.complex, k.complex, Variance::Skew, 0, 0);
    for (const char* g : {"o", "u", "w"})
        id_skew.add_entry(g, g, wz_one());
    k.maps["phi"] = id_skew;
    k.maps["iota"] = id_skew;
    REQUIRE(k.complex->verify().ok());
    REQUIRE(id_skew.check_graded().ok());
    REQUIRE(id_skew.is_chain_map());

    auto x = type_d_from_cfk(k, 1, FlipKind::StrongInversion);
    ChainMap h0 = ChainMap::zero(k.complex, k.complex, Variance::Equivariant, 1, 1);
    h0.add_entry("u", "w", wz_one());
    ChainMap f = chain_commutator(h0); // projection onto the acyclic part
    REQUIRE(!f.is_zero());
    REQUIRE(f.check_graded().ok());
    TypeDMorphism m = induced_morphism(f, x);
    CHECK(m.is_cycle());
    CHECK(type_d_nullhomotopic(m));

    // the identity is not null-homotopic
    TypeDMorphism idm = induced_morphism(ChainMap::identity(k.complex), x);
    CHECK(!type_d_nullhomotopic(idm));
}
