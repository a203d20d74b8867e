#include "hfk/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hfk {

std::size_t f2_rank(BitMatrix a) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && !a.get(pivot, col))
            ++pivot;
        if (pivot == a.rows())
            continue;
        if (pivot != rank) {
            a.xor_row(rank, pivot);
            a.xor_row(pivot, rank);
            a.xor_row(rank, pivot);
        }
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != rank && a.get(r, col))
                a.xor_row(r, rank);
        ++rank;
    }
    return rank;
}

F2Solution solve_f2(const BitMatrix& a_in, const std::vector<std::uint8_t>& b_in) {
    const std::size_t rows = a_in.rows(), cols = a_in.cols();
    require(b_in.size() == rows, "solve_f2: rhs size mismatch");
    BitMatrix a(rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            if (a_in.get(r, c))
                a.set(r, c, true);
        if (b_in[r])
            a.set(r, cols, true);
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && !a.get(piv, col))
            ++piv;
        if (piv == rows)
            continue;
        if (piv != rank) {
            a.xor_row(rank, piv);
            a.xor_row(piv, rank);
            a.xor_row(rank, piv);
        }
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && a.get(r, col))
                a.xor_row(r, rank);
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    F2Solution out;
    for (std::size_t r = rank; r < rows; ++r)
        if (a.get(r, cols))
            return out; // inconsistent
    out.consistent = true;
    out.particular.assign(cols, 0);
    for (std::size_t r = 0; r < rank; ++r)
        if (a.get(r, cols))
            out.particular[pivot_col[r]] = 1;
    std::vector<std::uint8_t> is_pivot(cols, 0);
    for (int pc : pivot_col)
        is_pivot[pc] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c])
            continue;
        std::vector<std::uint8_t> v(cols, 0);
        v[c] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            if (a.get(r, c))
                v[pivot_col[r]] = 1;
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

F2Solution F2System::solve() const {
    BitMatrix a(rows_.size(), nvars_);
    std::vector<std::uint8_t> b(rows_.size(), 0);
    std::size_t r = 0;
    for (const auto& [key, row] : rows_) {
        for (int v : row.vars)
            a.toggle(r, v);
        b[r] = row.rhs;
        ++r;
    }
    return solve_f2(a, b);
}

int TowerDecomposition::max_torsion_order() const {
    int m = 0;
    for (const auto& [gr, k] : torsion)
        m = std::max(m, k);
    return m;
}

std::string TowerDecomposition::str() const {
    std::ostringstream out;
    out << "free:";
    for (int g : free_gradings)
        out << " " << g;
    out << "; torsion:";
    for (const auto& [g, k] : torsion)
        out << " (" << g << ",U^" << k << ")";
    return out.str();
}

// ---------------------------------------------------------------------------
// Graded reduction over F2[U]
// ---------------------------------------------------------------------------

namespace {

/// Sparse endomorphism matrix with homogeneous monomial entries plus pivot
/// cancellation.  Generators keep their original indices; cancelled ones
/// are marked dead.  Cancelling the pivot x --U^k--> y is the basis change
/// a~ = a + U^(alpha-k) x (for sources a into y) and y~ = y + sum of
/// U^(beta-k) b (over other targets b of x); both substitutions act on rows
/// and on columns, after which the pair is isolated and removed.
class Reducer {
  public:
    Reducer(const UComplexPtr& c, bool track) : c_(c), track_(track) {
        const std::size_t n = c->rank();
        rows_.resize(n);
        into_.resize(n);
        alive_.assign(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [j, coef] : c->diff_row(static_cast<int>(i))) {
                require(coef.is_monomial(), "reduce: non-homogeneous differential entry");
                set_entry(static_cast<int>(i), j, coef.only_term().u);
            }
        }
        if (track_) {
            proj_.resize(n);
            incl_.resize(n);
            hot_.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                proj_[i] = {{static_cast<int>(i), upow(0)}};
                incl_[i] = {{static_cast<int>(i), upow(0)}};
            }
        }
    }

    void run(bool units_only) {
        while (true) {
            auto pivot = min_pivot();
            if (!pivot)
                break;
            auto [k, x, y] = *pivot;
            if (units_only && k > 0)
                break;
            require(!track_ || k == 0, "reduce: tracked reduction is unit-only");
            cancel(x, y, k);
            if (k > 0)
                torsion_.push_back({c_->gen(y).gr, k});
        }
    }

    TowerDecomposition towers() const {
        TowerDecomposition out;
        for (std::size_t i = 0; i < alive_.size(); ++i) {
            if (alive_[i]) {
                require(rows_[i].empty() && into_[i].empty(), "reduce: survivor with arrows");
                out.free_gradings.push_back(c_->gen(i).gr);
            }
        }
        std::sort(out.free_gradings.rbegin(), out.free_gradings.rend());
        out.torsion = torsion_;
        std::sort(out.torsion.begin(), out.torsion.end());
        return out;
    }

    Reduction reduction() const {
        UComplex red;
        std::vector<int> local(alive_.size(), -1);
        for (std::size_t i = 0; i < alive_.size(); ++i)
            if (alive_[i])
                local[i] = red.add_generator(c_->gen(i).id, c_->gen(i).gr);
        for (std::size_t i = 0; i < alive_.size(); ++i)
            if (alive_[i])
                for (const auto& [j, k] : rows_[i])
                    red.add_diff(local[i], local[j], upow(k));
        Reduction out;
        out.reduced = make_ucomplex(std::move(red));
        out.project = UMap(c_, out.reduced, 0);
        out.include = UMap(out.reduced, c_, 0);
        out.homotopy = UMap(c_, c_, 1);
        for (std::size_t i = 0; i < alive_.size(); ++i) {
            for (const auto& [j, coef] : proj_[i]) {
                require(local[j] >= 0, "reduce: projection hits a dead generator");
                out.project.add_entry(static_cast<int>(i), local[j], coef);
            }
            for (const auto& [j, coef] : hot_[i])
                out.homotopy.add_entry(static_cast<int>(i), j, coef);
            if (alive_[i])
                for (const auto& [j, coef] : incl_[i])
                    out.include.add_entry(local[i], j, coef);
        }
        verify_reduction(out);
        return out;
    }

  private:
    using Row = std::map<int, int>; // target -> exponent

    void verify_reduction(const Reduction& r) const {
        require(r.project.is_chain_map(), "reduce: projection is not a chain map");
        require(r.include.is_chain_map(), "reduce: inclusion is not a chain map");
        require(compose(r.project, r.include) == UMap::identity(r.reduced),
                "reduce: project . include != id");
        UMap lhs = add(UMap::identity(c_), compose(r.include, r.project));
        require(d_commutator(r.homotopy) == lhs, "reduce: homotopy identity fails");
    }

    std::optional<std::tuple<int, int, int>> min_pivot() {
        while (!heap_.empty()) {
            auto [k, x, y] = *heap_.begin();
            auto it = rows_[x].find(y);
            if (alive_[x] && alive_[y] && it != rows_[x].end() && it->second == k)
                return std::tuple<int, int, int>{k, x, y};
            heap_.erase(heap_.begin());
        }
        return std::nullopt;
    }

    void set_entry(int s, int t, int k) {
        require(s != t, "reduce: self arrow");
        auto it = rows_[s].find(t);
        if (it == rows_[s].end()) {
            rows_[s][t] = k;
            into_[t].insert(s);
            heap_.insert({k, s, t});
        } else {
            require(it->second == k, "reduce: exponent clash (inhomogeneous complex)");
            rows_[s].erase(it);
            into_[t].erase(s);
        }
    }

    void cancel(int x, int y, int k) {
        std::vector<std::pair<int, int>> srcs; // (a, alpha), other sources into y
        for (int a : into_[y])
            if (a != x)
                srcs.push_back({a, rows_[a].at(y)});
        std::vector<std::pair<int, int>> dx(rows_[x].begin(), rows_[x].end());

        // a~ = a + U^(alpha-k) x: row updates, then target rewriting into x
        for (const auto& [a, alpha] : srcs)
            for (const auto& [t, e] : dx)
                set_entry(a, t, e + alpha - k);
        for (const auto& [a, alpha] : srcs) {
            std::vector<std::pair<int, int>> col_a;
            for (int c : into_[a])
                col_a.push_back({c, rows_[c].at(a)});
            for (const auto& [c, e] : col_a)
                set_entry(c, x, e + alpha - k);
        }
        // y~ = y + sum U^(beta-k) b: row update on y, then target rewriting,
        // which cancels the x -> b entries
        std::vector<std::pair<int, int>> bx;
        for (const auto& [b, beta] : rows_[x])
            if (b != y)
                bx.push_back({b, beta});
        for (const auto& [b, beta] : bx) {
            std::vector<std::pair<int, int>> row_b(rows_[b].begin(), rows_[b].end());
            for (const auto& [t, e] : row_b)
                set_entry(y, t, e + beta - k);
        }
        for (int c : into_[y])
            require(c == x, "reduce: column not cleared");
        for (const auto& [b, beta] : bx)
            set_entry(x, b, beta);

        require(rows_[x].size() == 1 && rows_[x].count(y), "reduce: pivot row not isolated");
        require(rows_[y].empty(), "reduce: pivot target has outgoing arrows");
        require(into_[x].empty(), "reduce: pivot source has incoming arrows");

        if (track_) {
            // H_new = H_old + I_old . H_step . P_old, then I, then P (char 2)
            std::vector<std::pair<int, UPoly>> ix = incl_[x];
            for (std::size_t g = 0; g < proj_.size(); ++g) {
                UPoly py;
                for (const auto& [cg, coef] : proj_[g])
                    if (cg == y)
                        py = coef;
                if (!py.is_zero())
                    for (const auto& [og, coef] : ix)
                        add_tracked(hot_[g], og, py * coef);
            }
            for (const auto& [a, alpha] : srcs)
                for (const auto& [og, coef] : ix)
                    add_tracked(incl_[a], og, upow(alpha - k) * coef);
            for (std::size_t g = 0; g < proj_.size(); ++g) {
                std::vector<std::pair<int, UPoly>> next;
                for (const auto& [cg, coef] : proj_[g]) {
                    if (cg == x)
                        continue;
                    if (cg == y) {
                        for (const auto& [b, beta] : bx)
                            add_tracked(next, b, coef * upow(beta - k));
                    } else {
                        add_tracked(next, cg, coef);
                    }
                }
                proj_[g] = std::move(next);
            }
        }

        rows_[x].clear();
        into_[y].clear();
        alive_[x] = alive_[y] = 0;
        for (auto& s : into_) {
            s.erase(x);
            s.erase(y);
        }
        for (auto& r : rows_) {
            r.erase(x);
            r.erase(y);
        }
    }

    static void add_tracked(std::vector<std::pair<int, UPoly>>& terms, int idx, const UPoly& coef) {
        for (auto it = terms.begin(); it != terms.end(); ++it) {
            if (it->first == idx) {
                it->second += coef;
                if (it->second.is_zero())
                    terms.erase(it);
                return;
            }
        }
        if (!coef.is_zero())
            terms.push_back({idx, coef});
    }

    UComplexPtr c_;
    bool track_;
    std::vector<Row> rows_;
    std::vector<std::set<int>> into_;
    std::vector<std::uint8_t> alive_;
    std::set<std::tuple<int, int, int>> heap_; // (exponent, src, tgt), lazy
    std::vector<std::pair<int, int>> torsion_;
    std::vector<std::vector<std::pair<int, UPoly>>> proj_; // orig -> current
    std::vector<std::vector<std::pair<int, UPoly>>> incl_; // current -> orig
    std::vector<std::vector<std::pair<int, UPoly>>> hot_;  // orig -> orig
};

} // namespace

TowerDecomposition homology_towers(const UComplexPtr& c) {
    Reducer red(c, /*track=*/false);
    red.run(/*units_only=*/false);
    return red.towers();
}

Reduction reduce_units(const UComplexPtr& c) {
    Reducer red(c, /*track=*/true);
    red.run(/*units_only=*/true);
    return red.reduction();
}

// ---------------------------------------------------------------------------
// GradedView
// ---------------------------------------------------------------------------

const std::vector<std::pair<int, int>> GradedView::empty_{};

GradedView::GradedView(UComplexPtr c, int floor_grading) : c_(std::move(c)), floor_(floor_grading) {
    for (std::size_t i = 0; i < c_->rank(); ++i) {
        int gr = c_->gen(i).gr;
        for (int k = 0; gr - 2 * k >= floor_; ++k) {
            int g = gr - 2 * k;
            pos_[g][{static_cast<int>(i), k}] = static_cast<int>(basis_[g].size());
            basis_[g].push_back({static_cast<int>(i), k});
        }
    }
}

const std::vector<std::pair<int, int>>& GradedView::basis(int gr) const {
    auto it = basis_.find(gr);
    return it == basis_.end() ? empty_ : it->second;
}

std::size_t GradedView::dim(int gr) const { return basis(gr).size(); }

int GradedView::position(int gr, int gen, int uexp) const {
    auto it = pos_.find(gr);
    if (it == pos_.end())
        return -1;
    auto jt = it->second.find({gen, uexp});
    return jt == it->second.end() ? -1 : jt->second;
}

BitMatrix GradedView::matrix_of(const UMap& f, const GradedView& src, const GradedView& dst, int gr) {
    const auto& sb = src.basis(gr);
    int target_gr = gr + f.shift();
    BitMatrix m(dst.dim(target_gr), sb.size());
    for (std::size_t c = 0; c < sb.size(); ++c) {
        auto [gen, k] = sb[c];
        for (const auto& [j, coef] : f.row(gen)) {
            for (const auto& mono : coef.terms()) {
                int p = dst.position(target_gr, j, k + mono.u);
                if (p >= 0)
                    m.toggle(p, c);
            }
        }
    }
    return m;
}

BitMatrix GradedView::u_power_matrix(int gr, int m) const {
    const auto& sb = basis(gr);
    BitMatrix out(dim(gr - 2 * m), sb.size());
    for (std::size_t c = 0; c < sb.size(); ++c) {
        auto [gen, k] = sb[c];
        int p = position(gr - 2 * m, gen, k + m);
        if (p >= 0)
            out.toggle(p, c);
    }
    return out;
}

BitMatrix GradedView::diff_matrix(int gr) const {
    return matrix_of(UMap::differential(c_), *this, *this, gr);
}

UElement GradedView::element(int gr, const std::vector<std::uint8_t>& coords) const {
    const auto& sb = basis(gr);
    require(coords.size() == sb.size(), "GradedView::element: size mismatch");
    UElement out;
    for (std::size_t i = 0; i < sb.size(); ++i)
        if (coords[i])
            out += upow(sb[i].second) * UElement::gen(sb[i].first);
    return out;
}

// ---------------------------------------------------------------------------
// Map-solving framework
// ---------------------------------------------------------------------------

namespace {
inline std::uint64_t pack_key(std::uint64_t rel, int i, int t) {
    return (rel << 48) | (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 24) |
           static_cast<std::uint32_t>(t);
}
} // namespace

UMapSlots enumerate_umap_slots(F2System& sys, const UComplexPtr& src, const UComplexPtr& dst,
                               int shift) {
    UMapSlots out;
    out.src = src;
    out.dst = dst;
    out.shift = shift;
    for (std::size_t i = 0; i < src->rank(); ++i) {
        for (std::size_t j = 0; j < dst->rank(); ++j) {
            // gr(U^k j) = gr(j) - 2k must equal gr(i) + shift
            int delta = dst->gen(j).gr - src->gen(i).gr - shift;
            if (delta % 2 != 0 || delta < 0)
                continue;
            int var = sys.new_var();
            out.index[{static_cast<int>(i), static_cast<int>(j)}] = var;
            out.slots.push_back({static_cast<int>(i), static_cast<int>(j), delta / 2});
        }
    }
    return out;
}

UMap realize_umap(const UMapSlots& slots, const std::vector<std::uint8_t>& solution) {
    UMap f(slots.src, slots.dst, slots.shift);
    for (const auto& s : slots.slots) {
        int var = slots.index.at({s[0], s[1]});
        if (solution[var])
            f.add_entry(s[0], s[1], upow(s[2]));
    }
    return f;
}

bool URelation::row_live(int i, int t) const {
    int delta = dst->gen(t).gr - src->gen(i).gr - shift;
    if (delta % 2 != 0 || delta < 0)
        return false;
    return !mod_u || delta == 0;
}

std::uint64_t URelation::key(int i, int t) const { return pack_key(id, i, t); }

void accum_known(F2System& sys, const URelation& rel, const UMap& k) {
    require(k.shift() == rel.shift, "accum_known: shift mismatch");
    for (std::size_t i = 0; i < k.source()->rank(); ++i)
        for (const auto& [t, coef] : k.row(static_cast<int>(i)))
            for ([[maybe_unused]] const auto& mono : coef.terms())
                if (rel.row_live(static_cast<int>(i), t))
                    sys.toggle_rhs(rel.key(static_cast<int>(i), t));
}

void accum_slots(F2System& sys, const URelation& rel, const UMapSlots& x) {
    require(x.shift == rel.shift, "accum_slots: shift mismatch");
    for (const auto& s : x.slots)
        if (rel.row_live(s[0], s[1]))
            sys.toggle(rel.key(s[0], s[1]), x.index.at({s[0], s[1]}));
}

void accum_left(F2System& sys, const URelation& rel, const UMap& l, const UMapSlots& x) {
    require(l.shift() + x.shift == rel.shift, "accum_left: shift mismatch");
    for (const auto& s : x.slots) {
        int var = x.index.at({s[0], s[1]});
        for (const auto& [t, coef] : l.row(s[1]))
            for ([[maybe_unused]] const auto& mono : coef.terms())
                if (rel.row_live(s[0], t))
                    sys.toggle(rel.key(s[0], t), var);
    }
}

void accum_right(F2System& sys, const URelation& rel, const UMapSlots& x, const UMap& r) {
    require(x.shift + r.shift() == rel.shift, "accum_right: shift mismatch");
    // adjacency of the unknown map by source generator
    std::vector<std::vector<std::pair<int, int>>> by_src(x.src->rank()); // (target, var)
    for (const auto& s : x.slots)
        by_src[s[0]].push_back({s[1], x.index.at({s[0], s[1]})});
    for (std::size_t i = 0; i < r.source()->rank(); ++i)
        for (const auto& [j, coef] : r.row(static_cast<int>(i)))
            for ([[maybe_unused]] const auto& mono : coef.terms())
                for (const auto& [t, var] : by_src[j])
                    if (rel.row_live(static_cast<int>(i), t))
                        sys.toggle(rel.key(static_cast<int>(i), t), var);
}

BiMapSlots enumerate_bimap_slots(F2System& sys, const ComplexPtr& src, const ComplexPtr& dst,
                                 Variance var, int sw, int sz) {
    BiMapSlots out;
    out.src = src;
    out.dst = dst;
    out.var = var;
    out.sw = sw;
    out.sz = sz;
    for (std::size_t i = 0; i < src->rank(); ++i) {
        const auto& g = src->gen(i);
        for (std::size_t j = 0; j < dst->rank(); ++j) {
            const auto& h = dst->gen(j);
            int aw = var == Variance::Equivariant ? h.gr_w - g.gr_w - sw : h.gr_w - g.gr_z - sw;
            int az = var == Variance::Equivariant ? h.gr_z - g.gr_z - sz : h.gr_z - g.gr_w - sz;
            if (aw % 2 != 0 || az % 2 != 0 || aw < 0 || az < 0)
                continue;
            int v = sys.new_var();
            out.index[{static_cast<int>(i), static_cast<int>(j)}] = v;
            out.slots.push_back({static_cast<int>(i), static_cast<int>(j), aw / 2, az / 2});
        }
    }
    return out;
}

ChainMap realize_bimap(const BiMapSlots& slots, const std::vector<std::uint8_t>& solution) {
    ChainMap f(slots.src, slots.dst, slots.var, slots.sw, slots.sz);
    for (const auto& s : slots.slots) {
        int var = slots.index.at({s[0], s[1]});
        if (solution[var])
            f.add_entry(s[0], s[1], wz(s[2], s[3]));
    }
    return f;
}

bool BiRelation::row_live(int i, int t) const {
    const auto& g = src->gen(i);
    const auto& h = dst->gen(t);
    int aw = var == Variance::Equivariant ? h.gr_w - g.gr_w - sw : h.gr_w - g.gr_z - sw;
    int az = var == Variance::Equivariant ? h.gr_z - g.gr_z - sz : h.gr_z - g.gr_w - sz;
    if (aw % 2 != 0 || az % 2 != 0 || aw < 0 || az < 0)
        return false;
    return !mod_u || aw == 0 || az == 0;
}

std::uint64_t BiRelation::key(int i, int t) const { return pack_key(id, i, t); }

void accum_known(F2System& sys, const BiRelation& rel, const ChainMap& k) {
    for (std::size_t i = 0; i < k.source()->rank(); ++i)
        for (const auto& [t, coef] : k.row(static_cast<int>(i)))
            for ([[maybe_unused]] const auto& mono : coef.terms())
                if (rel.row_live(static_cast<int>(i), t))
                    sys.toggle_rhs(rel.key(static_cast<int>(i), t));
}

void accum_slots(F2System& sys, const BiRelation& rel, const BiMapSlots& x) {
    for (const auto& s : x.slots)
        if (rel.row_live(s[0], s[1]))
            sys.toggle(rel.key(s[0], s[1]), x.index.at({s[0], s[1]}));
}

void accum_left(F2System& sys, const BiRelation& rel, const ChainMap& l, const BiMapSlots& x) {
    for (const auto& s : x.slots) {
        int var = x.index.at({s[0], s[1]});
        for (const auto& [t, coef] : l.row(s[1]))
            for ([[maybe_unused]] const auto& mono : coef.terms())
                if (rel.row_live(s[0], t))
                    sys.toggle(rel.key(s[0], t), var);
    }
}

void accum_right(F2System& sys, const BiRelation& rel, const BiMapSlots& x, const ChainMap& r) {
    std::vector<std::vector<std::pair<int, int>>> by_src(x.src->rank());
    for (const auto& s : x.slots)
        by_src[s[0]].push_back({s[1], x.index.at({s[0], s[1]})});
    for (std::size_t i = 0; i < r.source()->rank(); ++i)
        for (const auto& [j, coef] : r.row(static_cast<int>(i)))
            for ([[maybe_unused]] const auto& mono : coef.terms())
                for (const auto& [t, var] : by_src[j])
                    if (rel.row_live(static_cast<int>(i), t))
                        sys.toggle(rel.key(static_cast<int>(i), t), var);
}

// ---------------------------------------------------------------------------
// High-level solvers
// ---------------------------------------------------------------------------

namespace {

ChainMap diff_as_map(const ComplexPtr& c) {
    ChainMap d(c, c, Variance::Equivariant, -1, -1);
    for (std::size_t i = 0; i < c->rank(); ++i)
        for (const auto& [j, coef] : c->diff_row(static_cast<int>(i)))
            d.add_entry(static_cast<int>(i), j, coef);
    return d;
}

bool entries_in_u_image(const UMap& f) {
    for (std::size_t i = 0; i < f.source()->rank(); ++i)
        for (const auto& [j, coef] : f.row(static_cast<int>(i)))
            for (const auto& m : coef.terms())
                if (m.u == 0)
                    return false;
    return true;
}

bool entries_in_u_image(const ChainMap& f) {
    for (std::size_t i = 0; i < f.source()->rank(); ++i)
        for (const auto& [j, coef] : f.row(static_cast<int>(i)))
            for (const auto& m : coef.terms())
                if (m.w == 0 || m.z == 0)
                    return false;
    return true;
}

} // namespace

ChainMap chain_commutator(const ChainMap& f) {
    return add(compose(diff_as_map(f.target()), f), compose(f, diff_as_map(f.source())));
}

NullhomotopyResult solve_nullhomotopy(const UMap& f, bool mod_u) {
    NullhomotopyResult out;
    if (!mod_u) {
        VerifyReport rep = f.check_chain_map();
        require(rep.ok(), "solve_nullhomotopy: input is not a chain map: " + rep.str());
    } else {
        require(entries_in_u_image(d_commutator(f)), "solve_nullhomotopy: input is not a chain map mod U");
    }
    F2System sys;
    UMapSlots h = enumerate_umap_slots(sys, f.source(), f.target(), f.shift() + 1);
    URelation rel{0, f.source(), f.target(), f.shift(), mod_u};
    accum_left(sys, rel, UMap::differential(f.target()), h);
    accum_right(sys, rel, h, UMap::differential(f.source()));
    accum_known(sys, rel, f);
    F2Solution sol = sys.solve();
    if (sol.consistent) {
        UMap hm = realize_umap(h, sol.particular);
        UMap check = add(d_commutator(hm), f);
        if (mod_u)
            require(entries_in_u_image(check), "solve_nullhomotopy: witness fails mod U");
        else
            require(check.is_zero(), "solve_nullhomotopy: witness fails");
        out.homotopy = std::move(hm);
        return out;
    }
    if (f.source()->rank() == 0)
        return out;
    TowerDecomposition towers = homology_towers(f.target());
    int pad = 2 * (towers.max_torsion_order() + 2);
    int lo = 1 << 30, hi = -(1 << 30);
    for (const auto& g : f.source()->gens()) {
        lo = std::min(lo, g.gr);
        hi = std::max(hi, g.gr);
    }
    GradedView src(f.source(), lo - pad);
    GradedView dst(f.target(), lo - pad + f.shift() - 2);
    for (int g = hi; g >= lo - pad + 2; --g) {
        BitMatrix d = src.diff_matrix(g);
        F2Solution cycles = solve_f2(d, std::vector<std::uint8_t>(d.rows(), 0));
        if (cycles.nullspace.empty())
            continue;
        BitMatrix fm = GradedView::matrix_of(f, src, dst, g);
        BitMatrix din = dst.diff_matrix(g + f.shift() + 1);
        for (const auto& cyc : cycles.nullspace) {
            std::vector<std::uint8_t> img(fm.rows(), 0);
            for (std::size_t r = 0; r < fm.rows(); ++r) {
                int parity = 0;
                for (std::size_t c2 = 0; c2 < fm.cols(); ++c2)
                    parity ^= (fm.get(r, c2) && cyc[c2]) ? 1 : 0;
                img[r] = static_cast<std::uint8_t>(parity);
            }
            bool nonzero = false;
            for (auto v : img)
                nonzero |= (v != 0);
            if (!nonzero)
                continue;
            F2Solution hit = solve_f2(din, img);
            if (!hit.consistent) {
                std::ostringstream msg;
                msg << "nontrivial action on a homology class in grading " << g;
                out.obstruction = msg.str();
                return out;
            }
        }
    }
    return out;
}

std::optional<ChainMap> solve_nullhomotopy(const ChainMap& f, bool mod_u) {
    if (!mod_u) {
        VerifyReport rep = f.check_chain_map();
        require(rep.ok(), "solve_nullhomotopy: input is not a chain map: " + rep.str());
    } else {
        require(entries_in_u_image(chain_commutator(f)),
                "solve_nullhomotopy: input is not a chain map mod U");
    }
    F2System sys;
    BiMapSlots h = enumerate_bimap_slots(sys, f.source(), f.target(), f.variance(), f.shift_w() + 1,
                                         f.shift_z() + 1);
    BiRelation rel{0, f.source(), f.target(), f.variance(), f.shift_w(), f.shift_z(), mod_u};
    accum_left(sys, rel, diff_as_map(f.target()), h);
    accum_right(sys, rel, h, diff_as_map(f.source()));
    accum_known(sys, rel, f);
    F2Solution sol = sys.solve();
    if (!sol.consistent)
        return std::nullopt;
    ChainMap hm = realize_bimap(h, sol.particular);
    ChainMap check = add(chain_commutator(hm), f);
    if (mod_u)
        require(entries_in_u_image(check), "solve_nullhomotopy: witness fails mod U");
    else
        require(check.is_zero(), "solve_nullhomotopy: witness fails");
    return hm;
}

std::optional<UMap> homotopy_between(const UMap& f, const UMap& g, bool mod_u) {
    require(f.shift() == g.shift(), "homotopy_between: shift mismatch");
    return solve_nullhomotopy(add(f, g), mod_u).homotopy;
}

std::optional<ChainMap> homotopy_between(const ChainMap& f, const ChainMap& g, bool mod_u) {
    require(f.variance() == g.variance() && f.shift_w() == g.shift_w() && f.shift_z() == g.shift_z(),
            "homotopy_between: variance or shift mismatch");
    return solve_nullhomotopy(add(f, g), mod_u);
}

std::vector<UMap> chain_map_space(const UComplexPtr& c1, const UComplexPtr& c2, int shift) {
    F2System sys;
    UMapSlots f = enumerate_umap_slots(sys, c1, c2, shift);
    URelation rel{0, c1, c2, shift - 1, false};
    accum_left(sys, rel, UMap::differential(c2), f);
    accum_right(sys, rel, f, UMap::differential(c1));
    F2Solution sol = sys.solve();
    require(sol.consistent, "chain_map_space: homogeneous system inconsistent");
    std::vector<UMap> out;
    for (const auto& v : sol.nullspace)
        out.push_back(realize_umap(f, v));
    return out;
}

std::vector<ChainMap> chain_map_space(const ComplexPtr& c1, const ComplexPtr& c2, Variance var, int sw,
                                      int sz) {
    F2System sys;
    BiMapSlots f = enumerate_bimap_slots(sys, c1, c2, var, sw, sz);
    BiRelation rel{0, c1, c2, var, sw - 1, sz - 1, false};
    accum_left(sys, rel, diff_as_map(c2), f);
    accum_right(sys, rel, f, diff_as_map(c1));
    F2Solution sol = sys.solve();
    require(sol.consistent, "chain_map_space: homogeneous system inconsistent");
    std::vector<ChainMap> out;
    for (const auto& v : sol.nullspace)
        out.push_back(realize_bimap(f, v));
    return out;
}

TowerClass tower_class(const UComplexPtr& c) {
    TowerDecomposition towers = homology_towers(c);
    require(!towers.free_gradings.empty(), "tower_class: no free tower");
    int big_n = towers.max_torsion_order() + 1;
    int lo = 1 << 30, hi = -(1 << 30);
    for (const auto& g : c->gens()) {
        lo = std::min(lo, g.gr);
        hi = std::max(hi, g.gr);
    }
    GradedView view(c, lo - 2 * big_n - 4);
    for (int g = hi; g >= lo; --g) {
        BitMatrix d = view.diff_matrix(g);
        F2Solution cycles = solve_f2(d, std::vector<std::uint8_t>(d.rows(), 0));
        if (cycles.nullspace.empty())
            continue;
        BitMatrix up = view.u_power_matrix(g, big_n);
        BitMatrix din = view.diff_matrix(g - 2 * big_n + 1);
        for (const auto& cyc : cycles.nullspace) {
            std::vector<std::uint8_t> img(up.rows(), 0);
            for (std::size_t r = 0; r < up.rows(); ++r) {
                int parity = 0;
                for (std::size_t c2 = 0; c2 < up.cols(); ++c2)
                    parity ^= (up.get(r, c2) && cyc[c2]) ? 1 : 0;
                img[r] = static_cast<std::uint8_t>(parity);
            }
            F2Solution hit = solve_f2(din, img);
            if (!hit.consistent)
                return {g, view.element(g, cyc)};
        }
    }
    throw Error("tower_class: no nontorsion cycle found");
}

} // namespace hfk
