#include "hfk/json_io.hpp"

#include <algorithm>

#include "json.hpp"

namespace hfk {
namespace json_io {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

ordered rational_json(const Rational& r) {
    if (r.is_integer())
        return ordered(r.num);
    ordered o;
    o["num"] = r.num;
    o["den"] = r.den;
    return o;
}

ordered complex_json(const BigradedComplex& c) {
    ordered gens = ordered::array();
    for (const auto& g : c.gens()) {
        ordered o;
        o["id"] = g.id;
        o["gr_w"] = g.gr_w;
        o["gr_z"] = g.gr_z;
        gens.push_back(o);
    }
    ordered diff = ordered::array();
    for (std::size_t i = 0; i < c.rank(); ++i) {
        auto row = c.diff_row(static_cast<int>(i));
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, coef] : row) {
            ordered o;
            o["from"] = c.gen(i).id;
            o["to"] = c.gen(j).id;
            o["coef"] = to_string(coef);
            diff.push_back(o);
        }
    }
    ordered out;
    out["generators"] = gens;
    out["differential"] = diff;
    return out;
}

ordered chain_map_json(const ChainMap& f) {
    ordered out;
    out["variance"] = f.variance() == Variance::Skew ? "skew" : "equivariant";
    out["shift_w"] = f.shift_w();
    out["shift_z"] = f.shift_z();
    ordered entries = ordered::array();
    for (std::size_t i = 0; i < f.source()->rank(); ++i) {
        auto row = f.row(static_cast<int>(i));
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, coef] : row) {
            ordered o;
            o["from"] = f.source()->gen(i).id;
            o["to"] = f.target()->gen(j).id;
            o["coef"] = to_string(coef);
            entries.push_back(o);
        }
    }
    out["entries"] = entries;
    return out;
}

ordered ucomplex_json(const UComplex& c) {
    ordered gens = ordered::array();
    for (const auto& g : c.gens()) {
        ordered o;
        o["id"] = g.id;
        o["gr"] = g.gr;
        gens.push_back(o);
    }
    ordered diff = ordered::array();
    for (std::size_t i = 0; i < c.rank(); ++i) {
        auto row = c.diff_row(static_cast<int>(i));
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, coef] : row) {
            ordered o;
            o["from"] = c.gen(i).id;
            o["to"] = c.gen(j).id;
            o["coef"] = to_string(coef);
            diff.push_back(o);
        }
    }
    ordered out;
    out["generators"] = gens;
    out["differential"] = diff;
    return out;
}

ordered umap_json(const UMap& f) {
    ordered entries = ordered::array();
    for (std::size_t i = 0; i < f.source()->rank(); ++i) {
        auto row = f.row(static_cast<int>(i));
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, coef] : row) {
            ordered o;
            o["from"] = f.source()->gen(i).id;
            o["to"] = f.target()->gen(j).id;
            o["coef"] = to_string(coef);
            entries.push_back(o);
        }
    }
    ordered out;
    out["shift"] = f.shift();
    out["entries"] = entries;
    return out;
}

std::string dump(const ordered& o, bool pretty) { return pretty ? o.dump(2) : o.dump(); }

BigradedComplex complex_from(const json& j) {
    BigradedComplex c;
    require(j.contains("generators") && j.contains("differential"),
            "complex json: missing generators or differential");
    for (const auto& g : j.at("generators"))
        c.add_generator(g.at("id").get<std::string>(), g.at("gr_w").get<int>(),
                        g.at("gr_z").get<int>());
    for (const auto& e : j.at("differential"))
        c.add_diff(e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                   parse_wz_poly(e.at("coef").get<std::string>()));
    return c;
}

ChainMap chain_map_from(const json& j, const ComplexPtr& src, const ComplexPtr& dst) {
    Variance var = j.at("variance").get<std::string>() == "skew" ? Variance::Skew
                                                                 : Variance::Equivariant;
    ChainMap f(src, dst, var, j.value("shift_w", 0), j.value("shift_z", 0));
    for (const auto& e : j.at("entries"))
        f.add_entry(e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                    parse_wz_poly(e.at("coef").get<std::string>()));
    return f;
}

} // namespace

std::string complex_to_json(const BigradedComplex& c, bool pretty) {
    return dump(complex_json(c), pretty);
}

ComplexPtr complex_from_json(const std::string& text) {
    json j = json::parse(text);
    return make_complex(complex_from(j));
}

std::string knot_to_json(const KnotModel& k, bool with_maps, bool pretty,
                         const std::string& verify_status) {
    ordered out;
    out["name"] = k.name;
    out["rank"] = k.complex->rank();
    out["genus"] = k.genus();
    if (!verify_status.empty())
        out["verify"] = verify_status;
    out["complex"] = complex_json(*k.complex);
    if (with_maps) {
        ordered maps;
        for (const auto& [key, f] : k.maps)
            maps[key] = chain_map_json(f);
        out["maps"] = maps;
    }
    return dump(out, pretty);
}

KnotModel knot_from_json(const std::string& text) {
    json j = json::parse(text);
    KnotModel k;
    k.name = j.value("name", "input");
    k.complex = make_complex(complex_from(j.at("complex")));
    if (j.contains("maps"))
        for (const auto& [key, val] : j.at("maps").items())
            k.maps[key] = chain_map_from(val, k.complex, k.complex);
    return k;
}

KnotModel knot_or_complex_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("complex"))
        return knot_from_json(text);
    KnotModel k;
    k.name = "input";
    k.complex = make_complex(complex_from(j));
    return k;
}

std::string ucomplex_to_json(const UComplex& c, bool pretty) { return dump(ucomplex_json(c), pretty); }

std::string cone_to_json(const MappingCone& x, const std::string& knot_spec,
                         const std::string& sym_tag, bool pretty) {
    ordered out;
    out["knot"] = knot_spec;
    out["frame"] = x.framing();
    out["flip"] = x.flip() == FlipKind::Conjugation ? "iota" : "phi";
    if (!sym_tag.empty())
        out["sym"] = sym_tag;
    out["window"] = x.window();
    out["complex"] = complex_json(*x.knot().complex);
    out["B"] = ucomplex_json(*x.b_model());
    ordered slices = ordered::array();
    for (int s : x.levels()) {
        const ConeSlice& sl = x.slice(s);
        ordered o;
        o["s"] = s;
        o["A"] = ucomplex_json(*sl.a);
        o["v"] = umap_json(sl.v)["entries"];
        o["h"] = umap_json(sl.h)["entries"];
        slices.push_back(o);
    }
    out["slices"] = slices;
    return dump(out, pretty);
}

std::string type_d_to_json(const TypeDModule& x, bool pretty) {
    ordered out;
    out["framing"] = x.framing();
    ordered gens = ordered::array();
    for (std::size_t i = 0; i < x.rank(); ++i) {
        const auto& g = x.gen(i);
        ordered o;
        o["id"] = g.id;
        o["idem"] = g.idem == Idem::Zero ? 0 : 1;
        if (g.idem == Idem::Zero) {
            o["gr_w"] = g.gr1;
            o["gr_z"] = g.gr2;
        } else {
            o["gr"] = g.gr1;
            o["alexander"] = g.gr2;
        }
        gens.push_back(o);
    }
    out["generators"] = gens;
    ordered delta = ordered::array();
    for (std::size_t i = 0; i < x.rank(); ++i) {
        auto row = x.delta_row(static_cast<int>(i));
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, a] : row) {
            ordered o;
            o["from"] = x.gen(i).id;
            o["to"] = x.gen(j).id;
            o["coef"] = to_string(a);
            delta.push_back(o);
        }
    }
    out["delta1"] = delta;
    return dump(out, pretty);
}

std::string morphism_to_json(const TypeDMorphism& m, bool pretty) {
    ordered out;
    out["twisted"] = m.twisted;
    ordered entries = ordered::array();
    for (std::size_t i = 0; i < m.src.rank(); ++i) {
        auto row = m.entries[i];
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [j, a] : row) {
            ordered o;
            o["from"] = m.src.gen(i).id;
            o["to"] = m.dst.gen(j).id;
            o["coef"] = to_string(a);
            entries.push_back(o);
        }
    }
    out["entries"] = entries;
    return dump(out, pretty);
}

std::string collapsed_to_json(const CollapsedCone& c, bool pretty) {
    ordered out;
    out["frame"] = c.framing;
    out["window"] = c.window;
    out["b_grading"] = c.b_grading;
    ordered slices = ordered::array();
    for (const auto& [s, sl] : c.slices) {
        ordered o;
        o["s"] = s;
        o["A"] = ucomplex_json(*sl.a);
        ordered v = ordered::array(), h = ordered::array();
        for (std::size_t i = 0; i < sl.a->rank(); ++i) {
            if (!sl.v[i].is_zero()) {
                ordered e;
                e["from"] = sl.a->gen(i).id;
                e["coef"] = to_string(sl.v[i]);
                v.push_back(e);
            }
            if (!sl.h[i].is_zero()) {
                ordered e;
                e["from"] = sl.a->gen(i).id;
                e["coef"] = to_string(sl.h[i]);
                h.push_back(e);
            }
        }
        o["v"] = v;
        o["h"] = h;
        slices.push_back(o);
    }
    out["slices"] = slices;
    return dump(out, pretty);
}

std::string rational_to_json(const Rational& r) { return rational_json(r).dump(); }

std::string towers_to_json(const TowerDecomposition& t) {
    ordered out;
    out["free"] = t.free_gradings;
    ordered tor = ordered::array();
    for (const auto& [g, k] : t.torsion) {
        ordered o;
        o["gr"] = g;
        o["order"] = k;
        tor.push_back(o);
    }
    out["torsion"] = tor;
    return out.dump();
}

std::string params_to_json(const StandardParams& p) {
    ordered arr = ordered::array();
    for (const auto& s : p.steps) {
        arr.push_back(s.a > 0 ? "+" : "-");
        arr.push_back(s.b);
    }
    return arr.dump();
}

std::string certificate_to_json(const LocalMapCertificate& c, bool pretty) {
    ordered out;
    out["mode"] = c.almost ? "almost" : "strict";
    out["tower_grading"] = c.tower_grading;
    out["f"] = ordered::parse(umap_json(c.f).dump());
    out["witness"] = ordered::parse(umap_json(c.witness).dump());
    return dump(out, pretty);
}

} // namespace json_io
} // namespace hfk
