#pragma once

#include "hfk/ring.hpp"

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hfk {

/// Free-module generator with Maslov bigrading.  For knots in S^3 the
/// Alexander grading A = (gr_w - gr_z)/2 is an integer.
struct Generator {
    std::string id;
    int gr_w = 0;
    int gr_z = 0;

    int alexander() const {
        require((gr_w - gr_z) % 2 == 0, "Generator " + id + ": gr_w and gr_z have different parity");
        return (gr_w - gr_z) / 2;
    }
};

struct Violation {
    std::string kind; // "d_squared", "homogeneity", "grading_parity", ...
    std::string detail;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

class BigradedComplex;
using ComplexPtr = std::shared_ptr<const BigradedComplex>;

/// Element of a bigraded complex: an F2[W,Z]-combination of generators.
struct Element {
    std::vector<std::pair<int, WZPoly>> terms; // sorted by generator index, nonzero coefs

    static Element zero() { return {}; }
    static Element gen(int index) { return Element{{{index, wz_one()}}}; }
    bool is_zero() const { return terms.empty(); }
    Element& operator+=(const Element& o);
    friend Element operator+(Element a, const Element& b) {
        a += b;
        return a;
    }
    friend Element operator*(const WZPoly& c, const Element& e);
    bool operator==(const Element&) const = default;
};

/// Finitely generated free bigraded chain complex over F2[W,Z].
/// Homogeneity convention: a differential entry W^a Z^b from g to g'
/// satisfies gr_w(g') = gr_w(g) + 2a - 1 and gr_z(g') = gr_z(g) + 2b - 1,
/// so that the differential drops both gradings of elements by one while
/// W and Z carry bidegrees (-2,0) and (0,-2).
class BigradedComplex {
  public:
    BigradedComplex() = default;

    int add_generator(const std::string& id, int gr_w, int gr_z);
    void add_diff(const std::string& from, const std::string& to, const WZPoly& coef);
    void add_diff(int from, int to, const WZPoly& coef);

    std::size_t rank() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_[i]; }
    const std::vector<Generator>& gens() const { return gens_; }
    int index_of(const std::string& id) const;
    std::optional<int> find(const std::string& id) const;

    const std::vector<std::pair<int, WZPoly>>& diff_row(int from) const { return diff_[from]; }
    Element diff(const Element& e) const;

    /// Checks d^2 = 0, grading parity, and entry homogeneity.
    VerifyReport verify() const;

    /// Maximal Alexander grading over generators (0 for empty complexes).
    int top_alexander() const;

    bool same_generators(const BigradedComplex& o) const;

    static ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b);
    static ComplexPtr dual(const ComplexPtr& c);
    /// W <-> Z exchange (orientation reversal of the underlying knot).
    static ComplexPtr reverse(const ComplexPtr& c);
    /// Index of the tensor generator (i,j); valid on tensor outputs.
    static int tensor_index(const BigradedComplex& product, int rank_b, int i, int j);

  private:
    std::vector<Generator> gens_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, WZPoly>>> diff_;
};

ComplexPtr make_complex(BigradedComplex c);

enum class Variance { Equivariant, Skew };

/// Entry-level matrix of an F2[W,Z]-linear or skew-linear map.
/// Entries are stored in target coordinates; the W<->Z transport rule for
/// skew maps lives only in evaluation, composition and the chain-map check.
class ChainMap {
  public:
    ChainMap() = default;
    ChainMap(ComplexPtr src, ComplexPtr dst, Variance var, int shift_w, int shift_z);

    static ChainMap identity(const ComplexPtr& c);
    static ChainMap zero(const ComplexPtr& src, const ComplexPtr& dst, Variance var, int sw, int sz);

    void add_entry(const std::string& from, const std::string& to, const WZPoly& coef);
    void add_entry(int from, int to, const WZPoly& coef);

    const ComplexPtr& source() const { return src_; }
    const ComplexPtr& target() const { return dst_; }
    Variance variance() const { return var_; }
    int shift_w() const { return sw_; }
    int shift_z() const { return sz_; }
    const std::vector<std::pair<int, WZPoly>>& row(int from) const { return entries_[from]; }

    bool is_zero() const;

    /// Applies the map to an element, transporting coefficients through the
    /// W<->Z exchange when the map is skew.
    Element apply(const Element& e) const;
    Element apply_gen(int i) const;

    /// f + g (same source/target/variance/shift).
    friend ChainMap add(const ChainMap& f, const ChainMap& g);
    /// f after g; variances compose (skew of skew is equivariant).
    friend ChainMap compose(const ChainMap& f, const ChainMap& g);

    /// Entry homogeneity for the declared variance and shift.
    VerifyReport check_graded() const;
    /// f d = d f (with skew transport); report names offending generators.
    VerifyReport check_chain_map() const;
    bool is_chain_map() const { return check_chain_map().ok(); }

    bool operator==(const ChainMap& o) const;

    /// Tensor product of two maps of equal variance acting on the tensor
    /// product of their sources/targets.
    static ChainMap tensor(const ChainMap& f, const ChainMap& g, const ComplexPtr& src,
                           const ComplexPtr& dst);
    static ChainMap transpose(const ChainMap& f, const ComplexPtr& dual_src, const ComplexPtr& dual_dst);
    /// Transport through the W<->Z relabeling of source and target.
    static ChainMap reverse(const ChainMap& f, const ComplexPtr& rev_src, const ComplexPtr& rev_dst);

  private:
    ComplexPtr src_, dst_;
    Variance var_ = Variance::Equivariant;
    int sw_ = 0, sz_ = 0;
    std::vector<std::vector<std::pair<int, WZPoly>>> entries_;
};

/// Polynomial over F2[U]: a set of U-exponents.
using UPoly = F2Poly<UTMonomial>; // with t always 0

inline UPoly upow(int k) { return UPoly(UTMonomial{k, 0}); }

struct UGenerator {
    std::string id;
    int gr = 0;
};

class UComplex;
using UComplexPtr = std::shared_ptr<const UComplex>;

struct UElement {
    std::vector<std::pair<int, UPoly>> terms;

    static UElement zero() { return {}; }
    static UElement gen(int index) { return UElement{{{index, upow(0)}}}; }
    bool is_zero() const { return terms.empty(); }
    UElement& operator+=(const UElement& o);
    friend UElement operator+(UElement a, const UElement& b) {
        a += b;
        return a;
    }
    friend UElement operator*(const UPoly& c, const UElement& e);
    bool operator==(const UElement&) const = default;
};

/// Finitely generated free graded complex over F2[U]; differential drops
/// the grading by one and U has degree -2.
class UComplex {
  public:
    UComplex() = default;

    int add_generator(const std::string& id, int gr);
    void add_diff(const std::string& from, const std::string& to, const UPoly& coef);
    void add_diff(int from, int to, const UPoly& coef);

    std::size_t rank() const { return gens_.size(); }
    const UGenerator& gen(std::size_t i) const { return gens_[i]; }
    const std::vector<UGenerator>& gens() const { return gens_; }
    int index_of(const std::string& id) const;
    const std::vector<std::pair<int, UPoly>>& diff_row(int from) const { return diff_[from]; }
    UElement diff(const UElement& e) const;

    VerifyReport verify() const;
    bool same_generators(const UComplex& o) const;

    static UComplexPtr tensor(const UComplexPtr& a, const UComplexPtr& b);
    static UComplexPtr dual(const UComplexPtr& c);

  private:
    std::vector<UGenerator> gens_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, UPoly>>> diff_;
};

UComplexPtr make_ucomplex(UComplex c);

/// Graded F2[U]-module map (all U-complex maps are U-equivariant).
class UMap {
  public:
    UMap() = default;
    UMap(UComplexPtr src, UComplexPtr dst, int shift);

    static UMap identity(const UComplexPtr& c);
    static UMap zero(const UComplexPtr& src, const UComplexPtr& dst, int shift);
    static UMap u_times(const UComplexPtr& c, int power);
    static UMap differential(const UComplexPtr& c);

    void add_entry(const std::string& from, const std::string& to, const UPoly& coef);
    void add_entry(int from, int to, const UPoly& coef);

    const UComplexPtr& source() const { return src_; }
    const UComplexPtr& target() const { return dst_; }
    int shift() const { return shift_; }
    const std::vector<std::pair<int, UPoly>>& row(int from) const { return entries_[from]; }
    bool is_zero() const;

    UElement apply(const UElement& e) const;
    UElement apply_gen(int i) const;

    friend UMap add(const UMap& f, const UMap& g);
    friend UMap compose(const UMap& f, const UMap& g);
    /// d f + f d (the commutator with the differentials, char 2).
    friend UMap d_commutator(const UMap& f);

    VerifyReport check_graded() const;
    VerifyReport check_chain_map() const;
    bool is_chain_map() const { return check_chain_map().ok(); }

    static UMap tensor(const UMap& f, const UMap& g, const UComplexPtr& src, const UComplexPtr& dst);

    bool operator==(const UMap& o) const;

  private:
    UComplexPtr src_, dst_;
    int shift_ = 0;
    std::vector<std::vector<std::pair<int, UPoly>>> entries_;
};

/// The F2[U]-subcomplex of C in Alexander grading s, presented with one
/// U-module generator per lattice ray: the minimal monomial W^a Z^b g with
/// A(g) - a + b = s and min(a,b) = 0.  Maslov grading is gr_w.
UComplexPtr alexander_slice(const ComplexPtr& c, int s);

/// Generator labels used by alexander_slice ("W^2 y1", "x0", ...).
std::string slice_label(const WZMonomial& m, const std::string& gen_id);

/// Restriction of an equivariant or skew chain map to Alexander slices;
/// an equivariant map with shift (d,d) sends slice s to slice s, a skew
/// map sends slice s to slice -s + (shift_w - shift_z)/2.
UMap slice_map(const ChainMap& f, const UComplexPtr& from_slice, int s, const UComplexPtr& to_slice);

} // namespace hfk
