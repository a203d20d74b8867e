#include "hfk/splitting.hpp"

#include "hfk/linalg.hpp"

#include <algorithm>
#include <map>

namespace hfk {

std::pair<int, int> element_bigrading(const BigradedComplex& c, const Element& e) {
    require(!e.is_zero(), "element_bigrading: zero element");
    bool first = true;
    std::pair<int, int> out{0, 0};
    for (const auto& [i, coef] : e.terms) {
        const auto& g = c.gen(i);
        for (const auto& m : coef.terms()) {
            std::pair<int, int> bg{g.gr_w - 2 * m.w, g.gr_z - 2 * m.z};
            if (first) {
                out = bg;
                first = false;
            } else {
                require(bg == out, "element_bigrading: element is not homogeneous");
            }
        }
    }
    return out;
}

namespace {

std::string xg(int k) { return "x" + std::to_string(k); }
std::string yg(int k) { return "y" + std::to_string(k); }

struct Builder {
    int n;
    KnotModel square;
    const BigradedComplex* c;

    int pair_index(const std::string& a, const std::string& b) const {
        return c->index_of(a + "*" + b);
    }
    Element gen2(const std::string& a, const std::string& b) const {
        return Element::gen(pair_index(a, b));
    }
    /// coefficient monomial making `term` match the bigrading of `lead`
    WZMonomial balance(const Element& lead, const Element& term) const {
        auto [lw, lz] = element_bigrading(*c, lead);
        auto [tw, tz] = element_bigrading(*c, term);
        int a = tw - lw, b = tz - lz;
        require(a % 2 == 0 && b % 2 == 0 && a >= 0 && b >= 0,
                "splitting: no balancing monomial exists");
        return {a / 2, b / 2};
    }
    Element balanced(const Element& lead, const Element& term) const {
        WZMonomial m = balance(lead, term);
        return lead + WZPoly(m) * term;
    }
    Element balanced_u(const Element& lead, const Element& term) const {
        WZMonomial m = balance(lead, term);
        require(m.w == m.z, "splitting: balancing monomial is not a U power");
        return lead + WZPoly(m) * term;
    }
};

/// Expands a homogeneous element over a free homogeneous basis; exact,
/// via one finite F2 solve with grading-forced monomials.
struct BasisExpander {
    const BigradedComplex* c;
    std::vector<Element> basis;
    std::vector<std::pair<int, int>> bigradings;

    explicit BasisExpander(const BigradedComplex& cx, std::vector<Element> b)
        : c(&cx), basis(std::move(b)) {
        for (const auto& e : basis)
            bigradings.push_back(element_bigrading(cx, e));
    }

    std::optional<std::vector<std::pair<int, WZMonomial>>> expand(const Element& e) const {
        if (e.is_zero())
            return std::vector<std::pair<int, WZMonomial>>{};
        auto [w0, z0] = element_bigrading(*c, e);
        std::vector<std::pair<int, WZMonomial>> cands; // (basis index, forced monomial)
        for (std::size_t i = 0; i < basis.size(); ++i) {
            int a = bigradings[i].first - w0, b = bigradings[i].second - z0;
            if (a % 2 != 0 || b % 2 != 0 || a < 0 || b < 0)
                continue;
            cands.push_back({static_cast<int>(i), {a / 2, b / 2}});
        }
        // rows keyed by (generator, monomial) of the ambient expansion
        std::map<std::pair<int, WZMonomial>, std::size_t> rows;
        auto row_of = [&](int g, const WZMonomial& m) {
            auto [it, ins] = rows.try_emplace({g, m}, rows.size());
            return it->second;
        };
        std::vector<std::pair<std::size_t, std::size_t>> entries;
        for (std::size_t v = 0; v < cands.size(); ++v) {
            const Element& b = basis[cands[v].first];
            for (const auto& [g, coef] : b.terms)
                for (const auto& m : coef.terms())
                    entries.push_back({row_of(g, cands[v].second * m), v});
        }
        for (const auto& [g, coef] : e.terms)
            for (const auto& m : coef.terms())
                row_of(g, m);
        std::vector<std::uint8_t> rhs(rows.size(), 0);
        for (const auto& [g, coef] : e.terms)
            for (const auto& m : coef.terms())
                rhs[row_of(g, m)] ^= 1;
        BitMatrix a(rows.size(), cands.size());
        for (const auto& [r, v] : entries)
            a.toggle(r, v);
        F2Solution sol = solve_f2(a, rhs);
        if (!sol.consistent)
            return std::nullopt;
        std::vector<std::pair<int, WZMonomial>> out;
        for (std::size_t v = 0; v < cands.size(); ++v)
            if (sol.particular[v])
                out.push_back({cands[v].first, cands[v].second});
        return out;
    }
};

} // namespace

SwapSplitting swap_splitting(int n) {
    require(n >= 1 && n % 2 == 1, "swap_splitting: n must be odd");
    SwapSplitting out;
    out.square = swap_involution(staircase_torus(n));
    Builder bld{n, out.square, out.square.complex.get()};
    const BigradedComplex& c = *out.square.complex;

    // the distinguished subcomplex: a staircase of y-pairs and mixed pairs,
    // plus the box v = x0 x0, r_{+-1}, t
    std::vector<Element> sub_elems;
    std::vector<std::string> sub_names;
    auto add_sub = [&](const std::string& name, const Element& e) {
        sub_names.push_back(name);
        sub_elems.push_back(e);
    };
    for (int k = 1 - 2 * n; k <= 2 * n - 1; k += 2)
        add_sub("s[" + yg(k) + "." + yg(k) + "]", bld.gen2(yg(k), yg(k)));
    for (int k = 1 - 2 * n; k <= 2 * n - 3; k += 2)
        add_sub("s[" + yg(k) + "." + yg(k + 2) + "]", bld.gen2(yg(k), yg(k + 2)));
    for (int i = 2 - 2 * n; i <= 2 * n - 2; i += 2) {
        add_sub("s[" + yg(i - 1) + "." + xg(i) + "]", bld.gen2(yg(i - 1), xg(i)));
        add_sub("s[" + xg(i) + "." + yg(i + 1) + "]", bld.gen2(xg(i), yg(i + 1)));
    }
    add_sub("box.v", bld.gen2(xg(0), xg(0)));
    add_sub("box.r-1", bld.gen2(yg(-1), xg(0)) + bld.gen2(xg(0), yg(-1)));
    add_sub("box.r1", bld.gen2(yg(1), xg(0)) + bld.gen2(xg(0), yg(1)));
    add_sub("box.t", bld.gen2(yg(1), yg(-1)) + bld.gen2(yg(-1), yg(1)));
    require(sub_elems.size() == static_cast<std::size_t>(8 * n + 1),
            "swap_splitting: unexpected subcomplex rank");

    // the complementary family
    std::vector<Element>& g = out.complement;
    auto x_in = [&](int i) { return i % 2 == 0 && i >= 2 - 2 * n && i <= 2 * n - 2; };
    // pairs of distinct odd indices, unordered, i != -j
    for (int i = 1 - 2 * n; i <= 2 * n - 1; i += 2)
        for (int j = i + 2; j <= 2 * n - 1; j += 2)
            if (i != -j)
                g.push_back(bld.gen2(yg(i), yg(j)) + bld.gen2(yg(j), yg(i)));
    // mixed symmetric pairs, j != -i +- 1
    for (int i = 1 - 2 * n; i <= 2 * n - 1; i += 2)
        for (int j = 2 - 2 * n; j <= 2 * n - 2; j += 2)
            if (j != -i + 1 && j != -i - 1)
                g.push_back(bld.gen2(yg(i), xg(j)) + bld.gen2(xg(j), yg(i)));
    // diagonal x-pairs
    for (int i = 2; i <= 2 * n - 2; i += 2) {
        int k = n - i / 2;
        Element e = bld.gen2(xg(i), xg(i));
        if ((k * (2 * n - k)) % 2 == 1)
            e += WZPoly(WZMonomial{k - 1, 2 * n - k - 1}) * bld.gen2(yg(i + 1), yg(i - 1));
        g.push_back(e);
    }
    for (int i = -2 * n + 2; i <= -2; i += 2)
        g.push_back(bld.gen2(xg(i), xg(i)));
    // antidiagonal x-pairs
    for (int i = 2; i <= 2 * n - 2; i += 2) {
        if ((i / 2) % 2 == 1) {
            g.push_back(bld.gen2(xg(-i), xg(i)));
            g.push_back(bld.gen2(xg(i), xg(-i)));
        } else {
            g.push_back(bld.balanced_u(bld.gen2(xg(-i), xg(i)), bld.gen2(xg(0), xg(0))));
            g.push_back(bld.balanced_u(bld.gen2(xg(i), xg(-i)), bld.gen2(xg(0), xg(0))));
        }
    }
    // off-diagonal x-pairs
    for (int i = 2 - 2 * n; i <= 2 * n - 2; i += 2) {
        for (int j = 2 - 2 * n; j <= 2 * n - 2; j += 2) {
            if (std::abs(i) < std::abs(j)) {
                int ki = n - i / 2, kj = n - j / 2;
                Element e = bld.gen2(xg(i), xg(j));
                if ((ki * (2 * n - kj)) % 2 == 1)
                    e += WZPoly(WZMonomial{ki - 1, 2 * n - kj - 1}) *
                         bld.gen2(yg(i + 1), yg(j - 1));
                g.push_back(e);
            } else if (std::abs(i) > std::abs(j)) {
                g.push_back(bld.gen2(xg(i), xg(j)));
            }
        }
    }
    // distant odd pairs with a U correction
    for (int i = 1 - 2 * n; i <= 2 * n - 1; i += 2)
        for (int j = i + 4; j <= 2 * n - 1; j += 2)
            if (i != -j)
                g.push_back(
                    bld.balanced_u(bld.gen2(yg(i), yg(j)), bld.gen2(yg(i + 2), yg(j - 2))));
    // antidiagonal odd pairs
    Element box_t = bld.gen2(yg(1), yg(-1)) + bld.gen2(yg(-1), yg(1));
    for (int i = 3; i <= 2 * n - 1; i += 2) {
        Element a = bld.balanced_u(bld.gen2(yg(i), yg(-i)), bld.gen2(yg(i - 2), yg(-i + 2)));
        Element b = bld.balanced_u(bld.gen2(yg(-i), yg(i)), bld.gen2(yg(-i + 2), yg(i - 2)));
        if (((i - 1) / 2) % 2 == 0) {
            a = bld.balanced_u(a, box_t);
            b = bld.balanced_u(b, box_t);
        }
        g.push_back(a);
        g.push_back(b);
    }
    // mixed pairs with a W or Z correction
    Element box_rm = bld.gen2(yg(-1), xg(0)) + bld.gen2(xg(0), yg(-1));
    Element box_rp = bld.gen2(yg(1), xg(0)) + bld.gen2(xg(0), yg(1));
    for (int i = 2 - 2 * n; i <= 2 * n - 2; i += 2) {
        for (int j = i + 2; j <= 2 * n - 2; j += 2) {
            bool excluded = (i == -j) && (((-j) / 2) % 2 == 0); // i = 2m, m != 0 even
            if (!excluded) {
                g.push_back(bld.balanced(bld.gen2(xg(i), yg(j + 1)), bld.gen2(yg(i + 1), xg(j))));
                g.push_back(
                    bld.balanced(bld.gen2(yg(-j - 1), xg(-i)), bld.gen2(xg(-j), yg(-i - 1))));
            } else {
                int jj = j;
                g.push_back(bld.balanced(
                    bld.balanced(bld.gen2(xg(-jj), yg(jj + 1)), bld.gen2(yg(-jj + 1), xg(jj))),
                    box_rm));
                g.push_back(bld.balanced(
                    bld.balanced(bld.gen2(yg(-jj - 1), xg(jj)), bld.gen2(xg(-jj), yg(jj - 1))),
                    box_rp));
            }
        }
    }
    // reversed mixed antidiagonal pairs
    for (int j = 2; j <= 2 * n - 2; j += 2) {
        if ((j / 2) % 2 == 1) {
            g.push_back(bld.balanced(bld.gen2(yg(j + 1), xg(-j)), bld.gen2(xg(j), yg(-j + 1))));
            g.push_back(bld.balanced(bld.gen2(xg(j), yg(-j - 1)), bld.gen2(yg(j - 1), xg(-j))));
        } else {
            g.push_back(bld.balanced(
                bld.balanced(bld.gen2(yg(j + 1), xg(-j)), bld.gen2(xg(j), yg(-j + 1))), box_rm));
            g.push_back(bld.balanced(
                bld.balanced(bld.gen2(xg(j), yg(-j - 1)), bld.gen2(yg(j - 1), xg(-j))), box_rp));
        }
    }
    // boundary mixed pairs
    for (int j = 2; j <= 2 * n - 2; j += 2) {
        g.push_back(bld.balanced(bld.gen2(yg(j - 1), xg(-j)), bld.gen2(xg(j - 2), yg(-j + 1))));
        g.push_back(bld.balanced(bld.gen2(xg(j), yg(-j + 1)), bld.gen2(yg(j - 1), xg(-j + 2))));
    }
    require(g.size() == static_cast<std::size_t>(16 * n * n - 16 * n),
            "swap_splitting: unexpected complement size");
    (void)x_in;

    // full-basis expander over sub + complement
    std::vector<Element> full = sub_elems;
    full.insert(full.end(), g.begin(), g.end());
    BasisExpander expander(c, full);

    // span: every ambient generator expands
    std::vector<std::vector<std::pair<int, WZMonomial>>> gen_expansion(c.rank());
    for (std::size_t i = 0; i < c.rank(); ++i) {
        auto e = expander.expand(Element::gen(static_cast<int>(i)));
        require(e.has_value(), "swap_splitting: basis does not span the square");
        gen_expansion[i] = *e;
    }
    // freeness: the degree-zero coefficient matrix is invertible per bigrading
    {
        std::map<std::pair<int, int>, std::vector<int>> by_deg_basis, by_deg_gen;
        for (std::size_t i = 0; i < full.size(); ++i)
            by_deg_basis[element_bigrading(c, full[i])].push_back(static_cast<int>(i));
        for (std::size_t i = 0; i < c.rank(); ++i)
            by_deg_gen[{c.gen(i).gr_w, c.gen(i).gr_z}].push_back(static_cast<int>(i));
        require(by_deg_basis.size() == by_deg_gen.size(), "swap_splitting: bigrading classes differ");
        for (const auto& [deg, cols] : by_deg_basis) {
            const auto& rows_g = by_deg_gen.at(deg);
            require(cols.size() == rows_g.size(), "swap_splitting: bigrading class sizes differ");
            BitMatrix lead(rows_g.size(), cols.size());
            std::map<int, int> row_of;
            for (std::size_t r = 0; r < rows_g.size(); ++r)
                row_of[rows_g[r]] = static_cast<int>(r);
            for (std::size_t cc = 0; cc < cols.size(); ++cc)
                for (const auto& [gi, coef] : full[cols[cc]].terms)
                    for (const auto& m : coef.terms())
                        if (m.w == 0 && m.z == 0)
                            lead.toggle(row_of.at(gi), cc);
            require(f2_rank(lead) == cols.size(), "swap_splitting: leading matrix is singular");
        }
    }

    // sub is a subcomplex carrying the induced differential; complement is
    // a subcomplex too
    BasisExpander sub_expander(c, sub_elems);
    BigradedComplex sub;
    for (std::size_t i = 0; i < sub_elems.size(); ++i) {
        auto [w, z] = element_bigrading(c, sub_elems[i]);
        sub.add_generator(sub_names[i], w, z);
    }
    for (std::size_t i = 0; i < sub_elems.size(); ++i) {
        Element de = c.diff(sub_elems[i]);
        auto exp = sub_expander.expand(de);
        require(exp.has_value(), "swap_splitting: sub is not a subcomplex");
        for (const auto& [j, m] : *exp)
            sub.add_diff(static_cast<int>(i), j, WZPoly(m));
    }
    out.sub = make_complex(std::move(sub));
    require(out.sub->verify().ok(), "swap_splitting: sub fails verification");
    BasisExpander comp_expander(c, g);
    for (const auto& e : g)
        require(comp_expander.expand(c.diff(e)).has_value(),
                "swap_splitting: complement is not a subcomplex");

    // inclusion, restriction of the involution, and projection
    out.include = ChainMap(out.sub, out.square.complex, Variance::Equivariant, 0, 0);
    for (std::size_t i = 0; i < sub_elems.size(); ++i)
        for (const auto& [gi, coef] : sub_elems[i].terms)
            out.include.add_entry(static_cast<int>(i), gi, coef);
    require(out.include.is_chain_map(), "swap_splitting: inclusion is not a chain map");

    const ChainMap& phi = out.square.map("phi");
    out.sub_phi = ChainMap(out.sub, out.sub, Variance::Skew, 0, 0);
    for (std::size_t i = 0; i < sub_elems.size(); ++i) {
        auto exp = sub_expander.expand(phi.apply(sub_elems[i]));
        require(exp.has_value(), "swap_splitting: sub is not preserved by the involution");
        for (const auto& [j, m] : *exp) {
            // skew entries are stored in target coordinates
            out.sub_phi.add_entry(static_cast<int>(i), j, WZPoly(m));
        }
    }
    require(out.sub_phi.is_chain_map(), "swap_splitting: restricted involution is not a chain map");
    // strict equivariance of the inclusion
    require(compose(phi, out.include) == compose(out.include, out.sub_phi),
            "swap_splitting: inclusion is not strictly equivariant");

    out.project = ChainMap(out.square.complex, out.sub, Variance::Equivariant, 0, 0);
    for (std::size_t i = 0; i < c.rank(); ++i)
        for (const auto& [j, m] : gen_expansion[i])
            if (j < static_cast<int>(sub_elems.size()))
                out.project.add_entry(static_cast<int>(i), j, WZPoly(m));
    require(out.project.is_chain_map(), "swap_splitting: projection is not a chain map");
    require(compose(out.project, out.include) == ChainMap::identity(out.sub),
            "swap_splitting: projection does not retract the inclusion");

    // the projection commutes with the involution up to homotopy
    ChainMap defect = add(compose(out.project, phi), compose(out.sub_phi, out.project));
    auto h = solve_nullhomotopy(defect);
    require(h.has_value(), "swap_splitting: projection defect is not null-homotopic");
    out.homotopy = *h;
    return out;
}

} // namespace hfk
