#include "hfk/regress.hpp"

#include "hfk/json_io.hpp"
#include "hfk/local_equiv.hpp"
#include "hfk/splitting.hpp"
#include "hfk/surgery_algebra.hpp"

#include <functional>
#include <sstream>

namespace hfk {

namespace {

// one-letter aliases used by the customary +1 trefoil diagrams
std::string alias(const std::string& id) {
    if (id == "y1")
        return "x";
    if (id == "x0")
        return "y";
    if (id == "y-1")
        return "z";
    return id;
}

std::string box_gen(const TypeDModule& x, const BoxValue& v) {
    if (v.idem1)
        return "p|" + to_string(UTMonomial{0, v.m1.t}) +
               (v.m1.u ? std::string(" * U^") + std::to_string(v.m1.u) : "");
    std::string coef = to_string(v.m0);
    return alias(x.gen(v.gen).id) + "|" + coef;
}

/// canonical dump of the +1 trefoil bordered data: module arrows, the
/// <-1,1> truncation differential, and the induced equivariant map
std::string trefoil_dump() {
    auto k = staircase_torus(1);
    auto x = type_d_from_cfk(k, 1, FlipKind::StrongInversion);
    std::ostringstream out;
    out << "module:\n";
    for (std::size_t i = 0; i < x.rank(); ++i) {
        auto row = x.delta_row(static_cast<int>(i));
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, a] : row)
            out << "  " << alias(x.gen(i).id) << " -> " << alias(x.gen(j).id) << " : "
                << to_string(a) << "\n";
    }
    CollapsedCone cc = box_tensor_collapsed(x, 3);
    out << "truncation:\n";
    struct Gen {
        int s;
        int idx;
        WZMonomial m;
        std::string label;
    };
    std::vector<Gen> gens;
    ComplexPtr cfk = x.cfk_part();
    for (int s = -1; s <= 1; ++s) {
        for (std::size_t i = 0; i < cfk->rank(); ++i) {
            int a = cfk->gen(i).alexander();
            WZMonomial m = a - s >= 0 ? WZMonomial{a - s, 0} : WZMonomial{0, s - a};
            gens.push_back({s, static_cast<int>(i), m,
                            alias(cfk->gen(i).id) + "|" + to_string(m)});
        }
    }
    for (const auto& g : gens) {
        // internal differential of the slice
        const auto& sl = cc.slices.at(g.s);
        for (const auto& [j, coef] : sl.a->diff_row(g.idx))
            for (const auto& m : coef.terms())
                out << "  " << g.label << " -" << to_string(UTMonomial{m.u, 0}) << "-> "
                    << gens[(g.s + 1) * cfk->rank() + j].label << "\n";
        // v into the level-s tower (dropped at the bottom level)
        if (g.s > -1)
            for (const auto& m : sl.v[g.idx].terms())
                out << "  " << g.label << " -" << to_string(UTMonomial{m.u, 0}) << "-> p|"
                    << to_string(UTMonomial{0, g.s}) << "\n";
        if (g.s + 1 <= 1)
            for (const auto& m : sl.h[g.idx].terms())
                out << "  " << g.label << " -" << to_string(UTMonomial{m.u, 0}) << "-> p|"
                    << to_string(UTMonomial{0, g.s + 1}) << "\n";
    }
    out << "equivariant:\n";
    TypeDMorphism phi = induced_morphism(k.map("phi"), x);
    for (const auto& g : gens) {
        for (const auto& v : apply_box_idem0(phi, g.idx, g.m))
            out << "  " << g.label << " => " << box_gen(x, v) << "\n";
    }
    for (int t = 0; t <= 1; ++t)
        for (const auto& v : apply_box_idem1(phi, {0, t}))
            out << "  p|" << to_string(UTMonomial{0, t}) << " => " << box_gen(x, v) << "\n";
    return out.str();
}

const char* kTrefoilExpected = R"(module:
  z -> p : U T^-1 s + 1 t
  y -> z : Z
  y -> x : W
  x -> p : T s + U T^2 t
truncation:
  z|1 -1-> p|1
  y|W -U-> z|1
  y|W -1-> x|W^2
  x|W^2 -U-> p|1
  z|Z -U-> p|1
  z|Z -U-> p|T
  y|1 -1-> z|Z
  y|1 -1-> x|W
  x|W -U-> p|1
  x|W -U-> p|T
  z|Z^2 -U-> p|T
  y|Z -1-> z|Z^2
  y|Z -U-> x|1
  x|1 -1-> p|T
equivariant:
  z|1 => x|1
  y|W => y|Z
  x|W^2 => z|Z^2
  z|Z => x|W
  y|1 => y|1
  x|W => z|Z
  z|Z^2 => x|W^2
  y|Z => y|W
  x|1 => z|1
  p|1 => p|T
  p|T => p|1
)";

} // namespace

std::vector<RegressResult> run_regressions(const std::string& filter) {
    std::vector<std::pair<std::string, std::function<std::string()>>> fixtures;

    fixtures.push_back({"trefoil-bordered", [] {
        std::string got = trefoil_dump();
        if (got != kTrefoilExpected)
            return "mismatch:\n" + got;
        return std::string();
    }});

    fixtures.push_back({"decomposition-n3", [] {
        SwapSplitting s = swap_splitting(3);
        std::ostringstream problems;
        if (s.square.complex->rank() != 121)
            problems << "square rank " << s.square.complex->rank() << "; ";
        if (s.sub->rank() != 25)
            problems << "sub rank " << s.sub->rank() << "; ";
        if (s.complement.size() != 96)
            problems << "complement size " << s.complement.size() << "; ";
        return problems.str();
    }});

    fixtures.push_back({"lens-table", [] {
        for (int p = 1; p <= 12; ++p)
            for (int i = 0; i < p; ++i) {
                Rational want((2 * i - p) * (2 * i - p) - p, 4 * p);
                if (lens_d(p, 1, i) != want)
                    return "mismatch at L(" + std::to_string(p) + ",1)[" + std::to_string(i) + "]";
            }
        return std::string();
    }});

    fixtures.push_back({"fig8-half-surgery", [] {
        auto k = figure_eight();
        PhiComplex triv = trivial_phi_complex();
        for (const char* key : {"sigma", "sigma_prime"}) {
            KnotModel m = k;
            m.maps["phi"] = m.maps.at(key);
            PhiComplex wedge = local_rep_si(m, 1, 2);
            if (!locally_equivalent(wedge, triv, LocalMode::Strict))
                return std::string(key) + " class is not trivial";
        }
        PhiComplex rep = local_rep_periodic(k, 1, 2, 0);
        if (find_local_map(triv, rep, LocalMode::Strict))
            return std::string("periodic class admits a map from the trivial class");
        return std::string();
    }});

    fixtures.push_back({"box-matches-standard", [] {
        auto a0 = alexander_slice(box(3).complex, 0);
        UMap phibar = slice_map(box(3).map("phi"), a0, 0, a0);
        auto match = match_standard({a0, phibar, Rational(0)}, 8);
        if (!match || match->steps.size() != 1 || match->steps[0].a != -1 || match->steps[0].b != 3)
            return std::string("expected C(-1,3), got ") + (match ? match->str() : "NONE");
        return std::string();
    }});

    fixtures.push_back({"bordered-equals-cone", [] {
        for (int n : {1, 2}) {
            auto k = staircase_torus(1);
            MappingCone cone(k, n, FlipKind::StrongInversion);
            CollapsedCone via_cone = collapse(cone);
            CollapsedCone via_box =
                box_tensor_collapsed(type_d_from_cfk(k, n, FlipKind::StrongInversion), cone.window());
            for (const auto& [s, bs] : via_box.slices) {
                const auto& cs = via_cone.slices.at(s);
                if (!(bs.v == cs.v) || !(bs.h == cs.h))
                    return "level " + std::to_string(s) + " differs at framing " + std::to_string(n);
            }
        }
        return std::string();
    }});

    fixtures.push_back({"dinv-trefoil", [] {
        PhiComplex p = local_rep_si(staircase_torus(1), 1, 1);
        if (d_lower(p) != Rational(-2) || d_upper(p) != Rational(-2))
            return std::string("expected both correction terms -2");
        return std::string();
    }});

    std::vector<RegressResult> out;
    for (const auto& [name, fn] : fixtures) {
        if (!filter.empty() && name.find(filter) == std::string::npos)
            continue;
        RegressResult r;
        r.name = name;
        try {
            r.detail = fn();
            r.pass = r.detail.empty();
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = ex.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace hfk
