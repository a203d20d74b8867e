#include "hfk/mapping_cone.hpp"

#include <algorithm>

namespace hfk {

std::string b_label(const std::string& gen_id) { return "B." + gen_id; }

/// The model is level-independent; the level only changes the implicit
/// minimal monomial Z^(s - A(g)) g.
UComplexPtr localized_level_model(const ComplexPtr& c) {
    UComplex b;
    for (const auto& g : c->gens())
        b.add_generator(b_label(g.id), g.gr_w);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i)))
            for (const auto& m : coef.terms())
                b.add_diff(static_cast<int>(i), j, upow(m.w));
    return make_ucomplex(std::move(b));
}

namespace {

WZMonomial minimal_monomial(int alexander, int s) {
    int a = alexander - s;
    return a >= 0 ? WZMonomial{a, 0} : WZMonomial{0, -a};
}

} // namespace

MappingCone::MappingCone(const KnotModel& k, int framing, FlipKind flip, std::optional<int> window)
    : knot_(k), n_(framing), flip_(flip) {
    require(framing != 0, "MappingCone: framing must be nonzero");
    const char* key = flip == FlipKind::Conjugation ? "iota" : "phi";
    require(knot_.has_map(key), std::string("MappingCone: knot model lacks the flip map '") + key + "'");
    const ChainMap& f = knot_.map(key);
    require(f.variance() == Variance::Skew && f.shift_w() == 0 && f.shift_z() == 0,
            "MappingCone: flip map must be skew of shift (0,0)");
    int g = knot_.genus();
    big_n_ = window.value_or(std::max(2 * g + std::abs(n_), std::abs(n_) + 1));
    require(big_n_ >= g + std::abs(n_), "MappingCone: window too small");
    b_ = localized_level_model(knot_.complex);
    for (int s = -big_n_; s <= big_n_; ++s) {
        ConeSlice slice;
        slice.s = s;
        slice.a = alexander_slice(knot_.complex, s);
        slice.v = make_v(s, slice.a);
        slice.h = make_h(s, slice.a);
        slices_[s] = std::move(slice);
    }
    check_window();
}

UMap MappingCone::make_v(int s, const UComplexPtr& a) const {
    const auto& c = *knot_.complex;
    UMap v(a, b_, 0);
    for (std::size_t i = 0; i < c.rank(); ++i) {
        WZMonomial m = minimal_monomial(c.gen(i).alexander(), s);
        v.add_entry(static_cast<int>(i), static_cast<int>(i), upow(m.w));
    }
    require(v.check_graded().ok(), "v is not graded");
    require(v.is_chain_map(), "v is not a chain map");
    return v;
}

UMap MappingCone::make_h(int s, const UComplexPtr& a) const {
    // h_{n,s} = Z^(2s+n) . flip . i_W on A_s, expressed in level s+n
    // coordinates of the B model; the U-power of an entry is the total
    // W-exponent of Z^(2s+n) W^(beta+c) Z^(alpha+d) g'.
    const auto& c = *knot_.complex;
    const ChainMap& flip = knot_.map(flip_ == FlipKind::Conjugation ? "iota" : "phi");
    UMap h(a, b_, -2 * s);
    for (std::size_t i = 0; i < c.rank(); ++i) {
        WZMonomial m = minimal_monomial(c.gen(i).alexander(), s);
        for (const auto& [j, coef] : flip.row(static_cast<int>(i))) {
            for (const auto& mono : coef.terms()) {
                int upower = m.z + mono.w;
                int zexp = m.w + mono.z + 2 * s + n_;
                int want = upower + (s + n_) - c.gen(j).alexander();
                require(zexp == want, "h: image leaves the expected level");
                h.add_entry(static_cast<int>(i), j, upow(upower));
            }
        }
    }
    require(h.check_graded().ok(), "h is not graded");
    require(h.is_chain_map(), "h is not a chain map");
    return h;
}

void MappingCone::check_window() const {
    // v must be a U-module isomorphism at the top level and h at the bottom
    const ConeSlice& top = slice(big_n_);
    for (std::size_t i = 0; i < top.a->rank(); ++i) {
        const auto& row = top.v.row(static_cast<int>(i));
        require(row.size() == 1 && row.front().second == upow(0),
                "MappingCone: window too small (v not an isomorphism at the top)");
    }
    const ConeSlice& bot = slice(-big_n_);
    BitMatrix unit(b_->rank(), bot.a->rank());
    for (std::size_t i = 0; i < bot.a->rank(); ++i)
        for (const auto& [j, coef] : bot.h.row(static_cast<int>(i)))
            for (const auto& m : coef.terms())
                if (m.u == 0)
                    unit.toggle(j, static_cast<int>(i));
    require(f2_rank(unit) == bot.a->rank(),
            "MappingCone: window too small (h not an isomorphism at the bottom)");
}

const ConeSlice& MappingCone::slice(int s) const {
    auto it = slices_.find(s);
    require(it != slices_.end(), "MappingCone: level outside the window");
    return it->second;
}

std::vector<int> MappingCone::levels() const {
    std::vector<int> out;
    for (const auto& [s, sl] : slices_)
        out.push_back(s);
    return out;
}

std::size_t MappingCone::rank() const {
    std::size_t r = 0;
    for (const auto& [s, sl] : slices_)
        r += sl.a->rank() + b_->rank();
    return r;
}

std::vector<int> MappingCone::spinc_levels(int s) const {
    std::vector<int> out;
    int n = std::abs(n_);
    for (const auto& [t, sl] : slices_)
        if (((t - s) % n + n) % n == 0)
            out.push_back(t);
    return out;
}

int MappingCone::canonical_level(int s) const {
    int n = std::abs(n_);
    int r = ((s % n) + n) % n;
    if (2 * r > n)
        r -= n;
    return r;
}

UComplexPtr MappingCone::assemble(int s) const {
    int n = std::abs(n_);
    int star = canonical_level(s);
    int lo = star, hi = star;
    while (lo - n >= -big_n_)
        lo -= n;
    while (hi + n <= big_n_)
        hi += n;
    return assemble(s, lo, hi);
}

UComplexPtr MappingCone::assemble(int s, int lo, int hi) const {
    int n = std::abs(n_);
    require(((lo - s) % n + n) % n == 0 && ((hi - s) % n + n) % n == 0,
            "assemble: bounds must be congruent to the class level");
    require(lo <= hi, "assemble: empty range");
    require(lo >= -big_n_ && hi <= big_n_, "assemble: range outside the window");

    // grading offsets: v has degree 0 and h degree -2t out of level t;
    // anchor the A level closest to zero at offset 0
    int anchor = lo;
    for (int t = lo; t <= hi; t += n)
        if (std::abs(t) < std::abs(anchor) || (std::abs(t) == std::abs(anchor) && t > anchor))
            anchor = t;
    std::map<int, int> aoff, boff;
    boff[anchor] = -1;
    for (int t = anchor + n; t <= hi; t += n)
        boff[t] = boff[t - n] + 2 * (t - n);
    for (int t = anchor - n; t >= lo; t -= n)
        boff[t] = boff[t + n] - 2 * t;
    for (int t = lo; t <= hi; t += n)
        aoff[t] = boff[t] + 1;

    UComplex x;
    auto alabel = [](int t, const std::string& id) { return "A" + std::to_string(t) + "|" + id; };
    auto blabel = [](int t, const std::string& id) { return "B" + std::to_string(t) + "|" + id; };
    for (int t = lo; t <= hi; t += n) {
        const ConeSlice& sl = slice(t);
        for (const auto& g : sl.a->gens())
            x.add_generator(alabel(t, g.id), g.gr + aoff[t]);
    }
    for (int t = lo + n; t <= hi; t += n)
        for (const auto& g : b_->gens())
            x.add_generator(blabel(t, g.id), g.gr + boff[t]);

    for (int t = lo; t <= hi; t += n) {
        const ConeSlice& sl = slice(t);
        for (std::size_t i = 0; i < sl.a->rank(); ++i) {
            int src = x.index_of(alabel(t, sl.a->gen(i).id));
            for (const auto& [j, coef] : sl.a->diff_row(static_cast<int>(i)))
                x.add_diff(src, x.index_of(alabel(t, sl.a->gen(j).id)), coef);
            if (t > lo) // v into B_t; the bottom B level is not in the quotient
                for (const auto& [j, coef] : sl.v.row(static_cast<int>(i)))
                    x.add_diff(src, x.index_of(blabel(t, b_->gen(j).id)), coef);
            if (t + n <= hi)
                for (const auto& [j, coef] : sl.h.row(static_cast<int>(i)))
                    x.add_diff(src, x.index_of(blabel(t + n, b_->gen(j).id)), coef);
        }
    }
    for (int t = lo + n; t <= hi; t += n)
        for (std::size_t i = 0; i < b_->rank(); ++i) {
            int src = x.index_of(blabel(t, b_->gen(i).id));
            for (const auto& [j, coef] : b_->diff_row(static_cast<int>(i)))
                x.add_diff(src, x.index_of(blabel(t, b_->gen(j).id)), coef);
        }
    auto out = make_ucomplex(std::move(x));
    VerifyReport rep = out->verify();
    require(rep.ok(), "assemble: cone fails verification: " + rep.str());
    return out;
}

InducedInvolution MappingCone::build_involution(SymmetryCase kind) const {
    InducedInvolution inv;
    inv.kind = kind;
    const auto& c = knot_.complex;
    if (kind == SymmetryCase::StrongInversion) {
        require(flip_ == FlipKind::StrongInversion,
                "build_involution: strongly invertible case needs the phi flip");
        const ChainMap& phi = knot_.map("phi");
        ChainMap phi2 = compose(phi, phi);
        UMap pb(b_, b_, 0);
        for (std::size_t i = 0; i < c->rank(); ++i)
            for (const auto& [j, coef] : phi2.row(static_cast<int>(i)))
                for (const auto& m : coef.terms())
                    pb.add_entry(static_cast<int>(i), j, upow(m.w));
        require(pb.is_chain_map(), "phi_b is not a chain map");
        for (int s = -big_n_; s <= big_n_; ++s) {
            inv.phi_b[s] = pb;
            const ConeSlice& sl = slice(s);
            UMap pa = slice_map(phi, sl.a, s, slice(-s).a);
            require(pa.is_chain_map(), "phi_a is not a chain map");
            inv.phi_a[s] = pa;
            // exact identity phi_b v_s + h_{-s} phi_a = 0
            UMap lhs = add(compose(pb, sl.v), compose(slice(-s).h, pa));
            require(lhs.is_zero(), "phi_b v + h phi_a != 0");
        }
        for (int s = -big_n_; s <= big_n_; ++s) {
            if (s + n_ > big_n_ || s + n_ < -big_n_)
                continue;
            const ConeSlice& sl = slice(s);
            UMap rhs = add(compose(pb, sl.h), compose(slice(-s).v, inv.phi_a.at(s)));
            NullhomotopyResult res = solve_nullhomotopy(rhs);
            require(res.homotopy.has_value(), "involution correction has no null-homotopy");
            inv.correction[s] = *res.homotopy;
        }
        return inv;
    }
    require(flip_ == FlipKind::Conjugation, "build_involution: periodic case needs the iota flip");
    const ChainMap& phi = knot_.map("phi");
    require(phi.variance() == Variance::Equivariant, "periodic symmetry must be grading preserving");
    const ChainMap& iota = knot_.map("iota");
    // L with iota phi + phi iota = [d, L], skew of shift (1,1)
    ChainMap defect = add(compose(iota, phi), compose(phi, iota));
    auto l = solve_nullhomotopy(defect);
    require(l.has_value(), "periodic case: no homotopy between iota phi and phi iota");
    UMap pb(b_, b_, 0);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : phi.row(static_cast<int>(i)))
            for (const auto& m : coef.terms())
                pb.add_entry(static_cast<int>(i), j, upow(m.w));
    require(pb.is_chain_map(), "phi_b is not a chain map");
    for (int s = -big_n_; s <= big_n_; ++s) {
        const ConeSlice& sl = slice(s);
        UMap pa = slice_map(phi, sl.a, s, sl.a);
        require(pa.is_chain_map(), "phi_a is not a chain map");
        inv.phi_a[s] = pa;
        inv.phi_b[s] = pb;
        if (s + n_ > big_n_ || s + n_ < -big_n_)
            continue;
        // correction = Z^(2s+n) L i_W on A_s, in level s+n coordinates
        UMap corr(sl.a, b_, -2 * s + 1);
        for (std::size_t i = 0; i < c->rank(); ++i) {
            WZMonomial m = minimal_monomial(c->gen(i).alexander(), s);
            for (const auto& [j, coef] : l->row(static_cast<int>(i))) {
                for (const auto& mono : coef.terms()) {
                    int upower = m.z + mono.w;
                    int zexp = m.w + mono.z + 2 * s + n_;
                    int want = upower + (s + n_) - c->gen(j).alexander();
                    require(zexp == want, "periodic correction leaves the expected level");
                    corr.add_entry(static_cast<int>(i), j, upow(upower));
                }
            }
        }
        UMap rhs = add(compose(sl.h, pa), compose(pb, sl.h));
        require(add(d_commutator(corr), rhs).is_zero(), "periodic correction identity fails");
        inv.correction[s] = corr;
    }
    return inv;
}

UMap MappingCone::assemble_involution(const InducedInvolution& inv, int s, int lo, int hi,
                                      const UComplexPtr& assembled) const {
    int n = std::abs(n_);
    auto alabel = [](int t, const std::string& id) { return "A" + std::to_string(t) + "|" + id; };
    auto blabel = [](int t, const std::string& id) { return "B" + std::to_string(t) + "|" + id; };
    auto a_kept = [&](int t) { return t >= lo && t <= hi && ((t - s) % n + n) % n == 0; };
    auto b_kept = [&](int t) { return t > lo && t <= hi && ((t - s) % n + n) % n == 0; };
    UMap out(assembled, assembled, 0);
    bool si = inv.kind == SymmetryCase::StrongInversion;
    for (int t = lo; t <= hi; t += n) {
        const ConeSlice& sl = slice(t);
        int ta = si ? -t : t;
        const UMap& pa = inv.phi_a.at(t);
        for (std::size_t i = 0; i < sl.a->rank(); ++i) {
            int src = assembled->index_of(alabel(t, sl.a->gen(i).id));
            if (a_kept(ta))
                for (const auto& [j, coef] : pa.row(static_cast<int>(i)))
                    out.add_entry(src, assembled->index_of(alabel(ta, slice(ta).a->gen(j).id)), coef);
            int tc = si ? -t : t + n_;
            auto corr = inv.correction.find(t);
            if (corr != inv.correction.end() && b_kept(tc))
                for (const auto& [j, coef] : corr->second.row(static_cast<int>(i)))
                    out.add_entry(src, assembled->index_of(blabel(tc, b_->gen(j).id)), coef);
        }
    }
    for (int t = lo + n; t <= hi; t += n) {
        int tb = si ? n_ - t : t;
        const UMap& pb = inv.phi_b.at(t);
        if (!b_kept(tb))
            continue;
        for (std::size_t i = 0; i < b_->rank(); ++i) {
            int src = assembled->index_of(blabel(t, b_->gen(i).id));
            for (const auto& [j, coef] : pb.row(static_cast<int>(i)))
                out.add_entry(src, assembled->index_of(blabel(tb, b_->gen(j).id)), coef);
        }
    }
    return out;
}

TowerDecomposition spinc_towers(const MappingCone& x, int s) { return homology_towers(x.assemble(s)); }

CollapsedCone collapse(const MappingCone& x) {
    CollapsedCone out;
    out.framing = x.framing();
    out.window = x.window();
    Reduction red = reduce_units(x.b_model());
    require(red.reduced->rank() == 1, "collapse: B level did not reduce to one generator");
    out.b_grading = red.reduced->gen(0).gr;
    for (int s : x.levels()) {
        const ConeSlice& sl = x.slice(s);
        CollapsedCone::Slice cs;
        cs.a = sl.a;
        cs.v.resize(sl.a->rank());
        cs.h.resize(sl.a->rank());
        UMap cv = compose(red.project, sl.v);
        UMap ch = compose(red.project, sl.h);
        for (std::size_t i = 0; i < sl.a->rank(); ++i) {
            for (const auto& [j, coef] : cv.row(static_cast<int>(i)))
                cs.v[i] += coef;
            for (const auto& [j, coef] : ch.row(static_cast<int>(i)))
                cs.h[i] += coef;
        }
        out.slices[s] = std::move(cs);
    }
    return out;
}

} // namespace hfk

namespace hfk {

UComplexPtr assemble_collapsed(const CollapsedCone& c, int s) {
    int n = std::abs(c.framing);
    int r = ((s % n) + n) % n;
    if (2 * r > n)
        r -= n;
    int lo = r, hi = r;
    while (lo - n >= -c.window)
        lo -= n;
    while (hi + n <= c.window)
        hi += n;
    int anchor = lo;
    for (int t = lo; t <= hi; t += n)
        if (std::abs(t) < std::abs(anchor) || (std::abs(t) == std::abs(anchor) && t > anchor))
            anchor = t;
    std::map<int, int> aoff, boff;
    boff[anchor] = -1;
    for (int t = anchor + n; t <= hi; t += n)
        boff[t] = boff[t - n] + 2 * (t - n);
    for (int t = anchor - n; t >= lo; t -= n)
        boff[t] = boff[t + n] - 2 * t;
    UComplex x;
    auto alabel = [](int t, const std::string& id) { return "A" + std::to_string(t) + "|" + id; };
    auto blabel = [](int t) { return "B" + std::to_string(t); };
    for (int t = lo; t <= hi; t += n)
        for (const auto& g : c.slices.at(t).a->gens())
            x.add_generator(alabel(t, g.id), g.gr + boff[t] + 1);
    for (int t = lo + n; t <= hi; t += n)
        x.add_generator(blabel(t), c.b_grading + boff[t]);
    for (int t = lo; t <= hi; t += n) {
        const auto& sl = c.slices.at(t);
        for (std::size_t i = 0; i < sl.a->rank(); ++i) {
            int src = x.index_of(alabel(t, sl.a->gen(i).id));
            for (const auto& [j, coef] : sl.a->diff_row(static_cast<int>(i)))
                x.add_diff(src, x.index_of(alabel(t, sl.a->gen(j).id)), coef);
            if (t > lo && !sl.v[i].is_zero())
                x.add_diff(src, x.index_of(blabel(t)), sl.v[i]);
            if (t + n <= hi && !sl.h[i].is_zero())
                x.add_diff(src, x.index_of(blabel(t + n)), sl.h[i]);
        }
    }
    auto out = make_ucomplex(std::move(x));
    VerifyReport rep = out->verify();
    require(rep.ok(), "assemble_collapsed: cone fails verification: " + rep.str());
    return out;
}

} // namespace hfk
