#include "doctest.h"

#include "hfk/json_io.hpp"
#include "hfk/regress.hpp"

using namespace hfk;

TEST_CASE("complex json round trip") {
    auto k = staircase_torus(3);
    std::string text = json_io::complex_to_json(*k.complex);
    ComplexPtr back = json_io::complex_from_json(text);
    CHECK(back->same_generators(*k.complex));
    CHECK(back->verify().ok());
    for (std::size_t i = 0; i < back->rank(); ++i) {
        CHECK(back->gen(i).gr_w == k.complex->gen(i).gr_w);
        CHECK(back->diff_row(static_cast<int>(i)) == k.complex->diff_row(static_cast<int>(i)));
    }
    // emission is canonical: serializing the round trip reproduces the bytes
    CHECK(json_io::complex_to_json(*back) == text);
}

TEST_CASE("knot document round trip keeps the maps") {
    auto k = figure_eight();
    std::string text = json_io::knot_to_json(k, /*with_maps=*/true);
    KnotModel back = json_io::knot_from_json(text);
    CHECK(back.complex->verify().ok());
    for (const char* key : {"iota", "sigma", "sigma_prime", "phi"}) {
        REQUIRE(back.has_map(key));
        CHECK(back.map(key).is_chain_map());
        CHECK(back.map(key) == k.map(key));
    }
    CHECK(json_io::knot_to_json(back, true) == text);
}

TEST_CASE("malformed json is rejected") {
    CHECK_THROWS(json_io::complex_from_json("{\"generators\": [}"));
    CHECK_THROWS(json_io::complex_from_json("{\"nope\": 1}"));
    // bad coefficient grammar
    CHECK_THROWS(json_io::complex_from_json(
        "{\"generators\":[{\"id\":\"a\",\"gr_w\":0,\"gr_z\":0}],"
        "\"differential\":[{\"from\":\"a\",\"to\":\"a\",\"coef\":\"Q^2\"}]}"));
}

TEST_CASE("type-D module json uses the ring grammar") {
    auto x = type_d_from_cfk(staircase_torus(1), 1, FlipKind::StrongInversion);
    std::string text = json_io::type_d_to_json(x);
    CHECK(text.find("\"coef\":\"T s + U T^2 t\"") != std::string::npos);
    CHECK(text.find("\"idem\":1") != std::string::npos);
}

TEST_CASE("rationals emit exactly") {
    CHECK(json_io::rational_to_json(Rational(-2)) == "-2");
    CHECK(json_io::rational_to_json(Rational(1, 4)) == "{\"num\":1,\"den\":4}");
}

TEST_CASE("sigma and tau arrows carry the grading contract") {
    // differential flavor: sigma pairs the gr_w grading with the tower
    // grading, tau pairs gr_z; the monomial absorbs the difference
    for (auto [spec, flip] : std::vector<std::pair<const char*, FlipKind>>{
             {"torus:2", FlipKind::StrongInversion}, {"fig8", FlipKind::Conjugation}}) {
        auto k = parse_knot_spec(spec);
        auto x = type_d_from_cfk(k, 1, flip);
        int p = x.p_index();
        for (std::size_t i = 0; i < x.rank(); ++i) {
            for (const auto& [j, a] : x.delta_row(static_cast<int>(i))) {
                if (j != p)
                    continue;
                for (const auto& m : a.sigma_part().terms())
                    CHECK(-2 * m.u == x.gen(i).gr1);
                for (const auto& m : a.tau_part().terms())
                    CHECK(-2 * m.u == x.gen(i).gr2);
            }
        }
    }
}

TEST_CASE("alexander slices have full U-module rank at every level") {
    auto k = staircase_torus(2);
    for (int s = -4; s <= 4; ++s)
        CHECK(alexander_slice(k.complex, s)->rank() == k.complex->rank());
}

TEST_CASE("regressions all pass in-process") {
    for (const auto& r : run_regressions())
        CHECK_MESSAGE(r.pass, r.name, ": ", r.detail);
}
