#include "hfk/complex.hpp"

#include <algorithm>
#include <sstream>

namespace hfk {

std::string VerifyReport::str() const {
    if (ok())
        return "ok";
    std::ostringstream out;
    for (const auto& v : violations)
        out << v.kind << ": " << v.detail << "\n";
    return out.str();
}

namespace {

template <typename Poly>
void merge_terms(std::vector<std::pair<int, Poly>>& into, const std::vector<std::pair<int, Poly>>& from) {
    for (const auto& [idx, coef] : from) {
        auto it = std::lower_bound(into.begin(), into.end(), idx,
                                   [](const auto& p, int i) { return p.first < i; });
        if (it != into.end() && it->first == idx) {
            it->second += coef;
            if (it->second.is_zero())
                into.erase(it);
        } else {
            into.insert(it, {idx, coef});
        }
    }
}

template <typename Poly>
void add_term(std::vector<std::pair<int, Poly>>& into, int idx, const Poly& coef) {
    if (coef.is_zero())
        return;
    merge_terms(into, {{idx, coef}});
}

} // namespace

Element& Element::operator+=(const Element& o) {
    merge_terms(terms, o.terms);
    return *this;
}

Element operator*(const WZPoly& c, const Element& e) {
    Element out;
    for (const auto& [i, coef] : e.terms)
        add_term(out.terms, i, c * coef);
    return out;
}

int BigradedComplex::add_generator(const std::string& id, int gr_w, int gr_z) {
    require(!index_.count(id), "duplicate generator id " + id);
    index_[id] = static_cast<int>(gens_.size());
    gens_.push_back({id, gr_w, gr_z});
    diff_.emplace_back();
    return static_cast<int>(gens_.size()) - 1;
}

void BigradedComplex::add_diff(const std::string& from, const std::string& to, const WZPoly& coef) {
    add_diff(index_of(from), index_of(to), coef);
}

void BigradedComplex::add_diff(int from, int to, const WZPoly& coef) {
    add_term(diff_[from], to, coef);
}

int BigradedComplex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    require(it != index_.end(), "unknown generator id " + id);
    return it->second;
}

std::optional<int> BigradedComplex::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Element BigradedComplex::diff(const Element& e) const {
    Element out;
    for (const auto& [i, coef] : e.terms)
        for (const auto& [j, d] : diff_[i])
            add_term(out.terms, j, coef * d);
    return out;
}

VerifyReport BigradedComplex::verify() const {
    VerifyReport rep;
    for (const auto& g : gens_) {
        if ((g.gr_w - g.gr_z) % 2 != 0)
            rep.violations.push_back({"grading_parity", "generator " + g.id});
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        for (const auto& [j, coef] : diff_[i]) {
            const auto& h = gens_[j];
            for (const auto& m : coef.terms()) {
                if (h.gr_w != g.gr_w + 2 * m.w - 1 || h.gr_z != g.gr_z + 2 * m.z - 1)
                    rep.violations.push_back({"homogeneity", "entry " + to_string(m) + " from " + g.id +
                                                                 " to " + h.id});
            }
        }
        Element dd = diff(diff(Element::gen(static_cast<int>(i))));
        if (!dd.is_zero()) {
            std::string detail = "d^2(" + g.id + ") =";
            for (const auto& [j, coef] : dd.terms)
                detail += " (" + to_string(coef) + ")" + gens_[j].id;
            rep.violations.push_back({"d_squared", detail});
        }
    }
    return rep;
}

int BigradedComplex::top_alexander() const {
    int top = 0;
    for (const auto& g : gens_)
        top = std::max(top, g.alexander());
    return top;
}

bool BigradedComplex::same_generators(const BigradedComplex& o) const {
    if (gens_.size() != o.gens_.size())
        return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].id != o.gens_[i].id)
            return false;
    return true;
}

ComplexPtr make_complex(BigradedComplex c) { return std::make_shared<const BigradedComplex>(std::move(c)); }

int BigradedComplex::tensor_index(const BigradedComplex&, int rank_b, int i, int j) {
    return i * rank_b + j;
}

ComplexPtr BigradedComplex::tensor(const ComplexPtr& a, const ComplexPtr& b) {
    BigradedComplex t;
    const int nb = static_cast<int>(b->rank());
    for (const auto& ga : a->gens())
        for (const auto& gb : b->gens())
            t.add_generator(ga.id + "*" + gb.id, ga.gr_w + gb.gr_w, ga.gr_z + gb.gr_z);
    for (std::size_t i = 0; i < a->rank(); ++i) {
        for (std::size_t j = 0; j < b->rank(); ++j) {
            int src = static_cast<int>(i) * nb + static_cast<int>(j);
            for (const auto& [k, coef] : a->diff_row(static_cast<int>(i)))
                t.add_diff(src, k * nb + static_cast<int>(j), coef);
            for (const auto& [k, coef] : b->diff_row(static_cast<int>(j)))
                t.add_diff(src, static_cast<int>(i) * nb + k, coef);
        }
    }
    return make_complex(std::move(t));
}

ComplexPtr BigradedComplex::dual(const ComplexPtr& c) {
    BigradedComplex d;
    for (const auto& g : c->gens())
        d.add_generator(g.id, -g.gr_w, -g.gr_z);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i)))
            d.add_diff(j, static_cast<int>(i), coef);
    return make_complex(std::move(d));
}

ComplexPtr BigradedComplex::reverse(const ComplexPtr& c) {
    BigradedComplex r;
    for (const auto& g : c->gens())
        r.add_generator(g.id, g.gr_z, g.gr_w);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i)))
            r.add_diff(static_cast<int>(i), j, exchange_wz(coef));
    return make_complex(std::move(r));
}

ChainMap::ChainMap(ComplexPtr src, ComplexPtr dst, Variance var, int shift_w, int shift_z)
    : src_(std::move(src)), dst_(std::move(dst)), var_(var), sw_(shift_w), sz_(shift_z) {
    entries_.resize(src_->rank());
}

ChainMap ChainMap::identity(const ComplexPtr& c) {
    ChainMap f(c, c, Variance::Equivariant, 0, 0);
    for (std::size_t i = 0; i < c->rank(); ++i)
        f.add_entry(static_cast<int>(i), static_cast<int>(i), wz_one());
    return f;
}

ChainMap ChainMap::zero(const ComplexPtr& src, const ComplexPtr& dst, Variance var, int sw, int sz) {
    return ChainMap(src, dst, var, sw, sz);
}

void ChainMap::add_entry(const std::string& from, const std::string& to, const WZPoly& coef) {
    add_entry(src_->index_of(from), dst_->index_of(to), coef);
}

void ChainMap::add_entry(int from, int to, const WZPoly& coef) { add_term(entries_[from], to, coef); }

bool ChainMap::is_zero() const {
    for (const auto& row : entries_)
        if (!row.empty())
            return false;
    return true;
}

Element ChainMap::apply(const Element& e) const {
    Element out;
    for (const auto& [i, coef] : e.terms) {
        WZPoly carried = var_ == Variance::Skew ? exchange_wz(coef) : coef;
        for (const auto& [j, d] : entries_[i])
            add_term(out.terms, j, carried * d);
    }
    return out;
}

Element ChainMap::apply_gen(int i) const { return Element{entries_[i]}; }

ChainMap add(const ChainMap& f, const ChainMap& g) {
    require(f.src_->same_generators(*g.src_) && f.dst_->same_generators(*g.dst_),
            "add: source/target mismatch");
    require(f.var_ == g.var_ && f.sw_ == g.sw_ && f.sz_ == g.sz_, "add: variance or shift mismatch");
    ChainMap out = f;
    for (std::size_t i = 0; i < g.entries_.size(); ++i)
        merge_terms(out.entries_[i], g.entries_[i]);
    return out;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    require(g.dst_->same_generators(*f.src_), "compose: target of g is not source of f");
    bool fskew = f.var_ == Variance::Skew;
    Variance var = (f.var_ == g.var_) ? Variance::Equivariant : Variance::Skew;
    int sw = f.sw_ + (fskew ? g.sz_ : g.sw_);
    int sz = f.sz_ + (fskew ? g.sw_ : g.sz_);
    ChainMap out(g.src_, f.dst_, var, sw, sz);
    for (std::size_t i = 0; i < g.entries_.size(); ++i) {
        for (const auto& [j, c] : g.entries_[i]) {
            WZPoly carried = fskew ? exchange_wz(c) : c;
            for (const auto& [k, d] : f.entries_[j])
                out.add_entry(static_cast<int>(i), k, carried * d);
        }
    }
    return out;
}

VerifyReport ChainMap::check_graded() const {
    VerifyReport rep;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& g = src_->gen(i);
        for (const auto& [j, coef] : entries_[i]) {
            const auto& h = dst_->gen(j);
            for (const auto& m : coef.terms()) {
                bool good;
                if (var_ == Variance::Equivariant)
                    good = (h.gr_w - 2 * m.w == g.gr_w + sw_) && (h.gr_z - 2 * m.z == g.gr_z + sz_);
                else
                    good = (h.gr_w - 2 * m.w == g.gr_z + sw_) && (h.gr_z - 2 * m.z == g.gr_w + sz_);
                if (!good)
                    rep.violations.push_back({"map_homogeneity", "entry " + to_string(m) + " from " +
                                                                     g.id + " to " + h.id});
            }
        }
    }
    return rep;
}

VerifyReport ChainMap::check_chain_map() const {
    VerifyReport rep;
    for (std::size_t i = 0; i < src_->rank(); ++i) {
        Element lhs = apply(src_->diff(Element::gen(static_cast<int>(i))));
        Element rhs = dst_->diff(apply_gen(static_cast<int>(i)));
        if (!(lhs + rhs).is_zero())
            rep.violations.push_back({"chain_map", "fails on generator " + src_->gen(i).id});
    }
    return rep;
}

bool ChainMap::operator==(const ChainMap& o) const {
    return var_ == o.var_ && sw_ == o.sw_ && sz_ == o.sz_ && entries_ == o.entries_;
}

ChainMap ChainMap::tensor(const ChainMap& f, const ChainMap& g, const ComplexPtr& src,
                          const ComplexPtr& dst) {
    require(f.var_ == g.var_, "tensor: mixed-variance maps are not F2[W,Z]-linear");
    ChainMap out(src, dst, f.var_, f.sw_ + g.sw_, f.sz_ + g.sz_);
    const int nbs = static_cast<int>(g.src_->rank());
    const int nbd = static_cast<int>(g.dst_->rank());
    for (std::size_t i = 0; i < f.src_->rank(); ++i)
        for (std::size_t j = 0; j < g.src_->rank(); ++j)
            for (const auto& [k, cf] : f.entries_[i])
                for (const auto& [l, cg] : g.entries_[j])
                    out.add_entry(static_cast<int>(i) * nbs + static_cast<int>(j), k * nbd + l, cf * cg);
    return out;
}

ChainMap ChainMap::transpose(const ChainMap& f, const ComplexPtr& dual_dst, const ComplexPtr& dual_src) {
    // dual_dst is the dual of f's target (the new source).
    ChainMap out(dual_dst, dual_src, f.var_, f.sw_, f.sz_);
    if (f.var_ == Variance::Skew)
        require((f.sz_ - f.sw_) % 2 == 0, "transpose: skew shift parity");
    for (std::size_t i = 0; i < f.src_->rank(); ++i) {
        for (const auto& [j, coef] : f.entries_[i]) {
            if (f.var_ == Variance::Equivariant) {
                out.add_entry(j, static_cast<int>(i), coef);
            } else {
                WZPoly t;
                for (const auto& m : coef.terms())
                    t += wz(m.z + (f.sz_ - f.sw_) / 2, m.w + (f.sw_ - f.sz_) / 2);
                out.add_entry(j, static_cast<int>(i), t);
            }
        }
    }
    return out;
}

ChainMap ChainMap::reverse(const ChainMap& f, const ComplexPtr& rev_src, const ComplexPtr& rev_dst) {
    ChainMap out(rev_src, rev_dst, f.var_, f.sz_, f.sw_);
    for (std::size_t i = 0; i < f.src_->rank(); ++i)
        for (const auto& [j, coef] : f.entries_[i])
            out.add_entry(static_cast<int>(i), j, exchange_wz(coef));
    return out;
}

UElement& UElement::operator+=(const UElement& o) {
    merge_terms(terms, o.terms);
    return *this;
}

UElement operator*(const UPoly& c, const UElement& e) {
    UElement out;
    for (const auto& [i, coef] : e.terms)
        add_term(out.terms, i, c * coef);
    return out;
}

int UComplex::add_generator(const std::string& id, int gr) {
    require(!index_.count(id), "duplicate generator id " + id);
    index_[id] = static_cast<int>(gens_.size());
    gens_.push_back({id, gr});
    diff_.emplace_back();
    return static_cast<int>(gens_.size()) - 1;
}

void UComplex::add_diff(const std::string& from, const std::string& to, const UPoly& coef) {
    add_diff(index_of(from), index_of(to), coef);
}

void UComplex::add_diff(int from, int to, const UPoly& coef) { add_term(diff_[from], to, coef); }

int UComplex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    require(it != index_.end(), "unknown generator id " + id);
    return it->second;
}

UElement UComplex::diff(const UElement& e) const {
    UElement out;
    for (const auto& [i, coef] : e.terms)
        for (const auto& [j, d] : diff_[i])
            add_term(out.terms, j, coef * d);
    return out;
}

VerifyReport UComplex::verify() const {
    VerifyReport rep;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        for (const auto& [j, coef] : diff_[i]) {
            const auto& h = gens_[j];
            for (const auto& m : coef.terms()) {
                require(m.t == 0, "UComplex: T-power in differential");
                if (h.gr != g.gr + 2 * m.u - 1)
                    rep.violations.push_back({"homogeneity", "entry " + to_string(m) + " from " + g.id +
                                                                 " to " + h.id});
            }
        }
        UElement dd = diff(diff(UElement::gen(static_cast<int>(i))));
        if (!dd.is_zero())
            rep.violations.push_back({"d_squared", "d^2(" + g.id + ") != 0"});
    }
    return rep;
}

bool UComplex::same_generators(const UComplex& o) const {
    if (gens_.size() != o.gens_.size())
        return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].id != o.gens_[i].id)
            return false;
    return true;
}

UComplexPtr make_ucomplex(UComplex c) { return std::make_shared<const UComplex>(std::move(c)); }

UComplexPtr UComplex::tensor(const UComplexPtr& a, const UComplexPtr& b) {
    UComplex t;
    const int nb = static_cast<int>(b->rank());
    for (const auto& ga : a->gens())
        for (const auto& gb : b->gens())
            t.add_generator(ga.id + "*" + gb.id, ga.gr + gb.gr);
    for (std::size_t i = 0; i < a->rank(); ++i)
        for (std::size_t j = 0; j < b->rank(); ++j) {
            int src = static_cast<int>(i) * nb + static_cast<int>(j);
            for (const auto& [k, coef] : a->diff_row(static_cast<int>(i)))
                t.add_diff(src, k * nb + static_cast<int>(j), coef);
            for (const auto& [k, coef] : b->diff_row(static_cast<int>(j)))
                t.add_diff(src, static_cast<int>(i) * nb + k, coef);
        }
    return make_ucomplex(std::move(t));
}

UComplexPtr UComplex::dual(const UComplexPtr& c) {
    UComplex d;
    for (const auto& g : c->gens())
        d.add_generator(g.id, -g.gr);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i)))
            d.add_diff(j, static_cast<int>(i), coef);
    return make_ucomplex(std::move(d));
}

UMap::UMap(UComplexPtr src, UComplexPtr dst, int shift)
    : src_(std::move(src)), dst_(std::move(dst)), shift_(shift) {
    entries_.resize(src_->rank());
}

UMap UMap::identity(const UComplexPtr& c) {
    UMap f(c, c, 0);
    for (std::size_t i = 0; i < c->rank(); ++i)
        f.add_entry(static_cast<int>(i), static_cast<int>(i), upow(0));
    return f;
}

UMap UMap::zero(const UComplexPtr& src, const UComplexPtr& dst, int shift) {
    return UMap(src, dst, shift);
}

UMap UMap::u_times(const UComplexPtr& c, int power) {
    UMap f(c, c, -2 * power);
    for (std::size_t i = 0; i < c->rank(); ++i)
        f.add_entry(static_cast<int>(i), static_cast<int>(i), upow(power));
    return f;
}

UMap UMap::differential(const UComplexPtr& c) {
    UMap f(c, c, -1);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i)))
            f.add_entry(static_cast<int>(i), j, coef);
    return f;
}

void UMap::add_entry(const std::string& from, const std::string& to, const UPoly& coef) {
    add_entry(src_->index_of(from), dst_->index_of(to), coef);
}

void UMap::add_entry(int from, int to, const UPoly& coef) { add_term(entries_[from], to, coef); }

bool UMap::is_zero() const {
    for (const auto& row : entries_)
        if (!row.empty())
            return false;
    return true;
}

UElement UMap::apply(const UElement& e) const {
    UElement out;
    for (const auto& [i, coef] : e.terms)
        for (const auto& [j, d] : entries_[i])
            add_term(out.terms, j, coef * d);
    return out;
}

UElement UMap::apply_gen(int i) const { return UElement{entries_[i]}; }

UMap add(const UMap& f, const UMap& g) {
    require(f.shift_ == g.shift_, "add: shift mismatch");
    require(f.src_->same_generators(*g.src_) && f.dst_->same_generators(*g.dst_),
            "add: source/target mismatch");
    UMap out = f;
    for (std::size_t i = 0; i < g.entries_.size(); ++i)
        merge_terms(out.entries_[i], g.entries_[i]);
    return out;
}

UMap compose(const UMap& f, const UMap& g) {
    require(g.dst_->same_generators(*f.src_), "compose: target of g is not source of f");
    UMap out(g.src_, f.dst_, f.shift_ + g.shift_);
    for (std::size_t i = 0; i < g.entries_.size(); ++i)
        for (const auto& [j, c] : g.entries_[i])
            for (const auto& [k, d] : f.entries_[j])
                out.add_entry(static_cast<int>(i), k, c * d);
    return out;
}

UMap d_commutator(const UMap& f) {
    UMap df = compose(UMap::differential(f.target()), f);
    UMap fd = compose(f, UMap::differential(f.source()));
    return add(df, fd);
}

VerifyReport UMap::check_graded() const {
    VerifyReport rep;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (const auto& [j, coef] : entries_[i]) {
            for (const auto& m : coef.terms()) {
                if (dst_->gen(j).gr - 2 * m.u != src_->gen(i).gr + shift_)
                    rep.violations.push_back({"map_homogeneity", "entry " + to_string(m) + " from " +
                                                                     src_->gen(i).id + " to " +
                                                                     dst_->gen(j).id});
            }
        }
    }
    return rep;
}

VerifyReport UMap::check_chain_map() const {
    VerifyReport rep;
    for (std::size_t i = 0; i < src_->rank(); ++i) {
        UElement lhs = apply(src_->diff(UElement::gen(static_cast<int>(i))));
        UElement rhs = dst_->diff(apply_gen(static_cast<int>(i)));
        if (!(lhs + rhs).is_zero())
            rep.violations.push_back({"chain_map", "fails on generator " + src_->gen(i).id});
    }
    return rep;
}

UMap UMap::tensor(const UMap& f, const UMap& g, const UComplexPtr& src, const UComplexPtr& dst) {
    UMap out(src, dst, f.shift_ + g.shift_);
    const int nbs = static_cast<int>(g.src_->rank());
    const int nbd = static_cast<int>(g.dst_->rank());
    for (std::size_t i = 0; i < f.src_->rank(); ++i)
        for (std::size_t j = 0; j < g.src_->rank(); ++j)
            for (const auto& [k, cf] : f.entries_[i])
                for (const auto& [l, cg] : g.entries_[j])
                    out.add_entry(static_cast<int>(i) * nbs + static_cast<int>(j), k * nbd + l, cf * cg);
    return out;
}

bool UMap::operator==(const UMap& o) const { return shift_ == o.shift_ && entries_ == o.entries_; }

std::string slice_label(const WZMonomial& m, const std::string& gen_id) {
    if (m.w == 0 && m.z == 0)
        return gen_id;
    return to_string(m) + " " + gen_id;
}

namespace {

WZMonomial minimal_monomial(int alexander_of_gen, int s) {
    int a = alexander_of_gen - s;
    return a >= 0 ? WZMonomial{a, 0} : WZMonomial{0, -a};
}

} // namespace

UComplexPtr alexander_slice(const ComplexPtr& c, int s) {
    UComplex slice;
    std::vector<WZMonomial> mins(c->rank());
    for (std::size_t i = 0; i < c->rank(); ++i) {
        const auto& g = c->gen(i);
        mins[i] = minimal_monomial(g.alexander(), s);
        slice.add_generator(slice_label(mins[i], g.id), g.gr_w - 2 * mins[i].w);
    }
    for (std::size_t i = 0; i < c->rank(); ++i) {
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i))) {
            for (const auto& m : coef.terms()) {
                WZMonomial total = mins[i] * m;
                int k = total.w - mins[j].w;
                require(k >= 0 && total.z - mins[j].z == k,
                        "alexander_slice: non-minimal target monomial");
                slice.add_diff(static_cast<int>(i), j, upow(k));
            }
        }
    }
    return make_ucomplex(std::move(slice));
}

UMap slice_map(const ChainMap& f, const UComplexPtr& from_slice, int s, const UComplexPtr& to_slice) {
    const auto& src = *f.source();
    const auto& dst = *f.target();
    bool skew = f.variance() == Variance::Skew;
    int a_shift = (f.shift_w() - f.shift_z()) / 2;
    int s_target = (skew ? -s : s) + a_shift;
    int u_shift = skew ? f.shift_w() - 2 * s : f.shift_w();
    require(from_slice->rank() == src.rank() && to_slice->rank() == dst.rank(),
            "slice_map: slice rank mismatch");
    UMap out(from_slice, to_slice, u_shift);
    for (std::size_t i = 0; i < src.rank(); ++i) {
        WZMonomial mi = minimal_monomial(src.gen(i).alexander(), s);
        WZMonomial carried = skew ? WZMonomial{mi.z, mi.w} : mi;
        for (const auto& [j, coef] : f.row(static_cast<int>(i))) {
            WZMonomial mj = minimal_monomial(dst.gen(j).alexander(), s_target);
            for (const auto& m : coef.terms()) {
                WZMonomial total = carried * m;
                int k = total.w - mj.w;
                require(k >= 0 && total.z - mj.z == k, "slice_map: entry leaves the slice lattice");
                out.add_entry(static_cast<int>(i), j, upow(k));
            }
        }
    }
    return out;
}

} // namespace hfk
