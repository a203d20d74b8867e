#pragma once

#include "hfk/complex.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace hfk {

/// Dense bit-packed matrix over F2.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (data_[r * words_ + c / 64] >> (c % 64)) & 1; }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = data_[r * words_ + c / 64];
        std::uint64_t bit = std::uint64_t(1) << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }
    void toggle(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t(1) << (c % 64); }
    void xor_row(std::size_t dst, std::size_t src) {
        for (std::size_t k = 0; k < words_; ++k)
            data_[dst * words_ + k] ^= data_[src * words_ + k];
    }
    bool row_empty(std::size_t r) const {
        for (std::size_t k = 0; k < words_; ++k)
            if (data_[r * words_ + k])
                return false;
        return true;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

std::size_t f2_rank(BitMatrix a);

struct F2Solution {
    bool consistent = false;
    std::vector<std::uint8_t> particular;
    std::vector<std::vector<std::uint8_t>> nullspace;
};

/// Solves A x = b over F2 (A given row-wise); returns a particular solution
/// and a basis of the kernel.
F2Solution solve_f2(const BitMatrix& a, const std::vector<std::uint8_t>& b);

/// Sparse F2 linear system with rows keyed by opaque 64-bit keys.
/// Repeated toggles of the same (row, var) incidence cancel mod 2.
class F2System {
  public:
    int new_var() { return nvars_++; }
    int var_count() const { return nvars_; }
    void toggle(std::uint64_t row, int var) { rows_[row].vars.push_back(var); }
    void toggle_rhs(std::uint64_t row) { rows_[row].rhs ^= 1; }
    std::size_t row_count() const { return rows_.size(); }

    F2Solution solve() const;

  private:
    struct Row {
        std::vector<int> vars;
        std::uint8_t rhs = 0;
    };
    int nvars_ = 0;
    std::unordered_map<std::uint64_t, Row> rows_;
};

/// Decomposition of H_*(C) as  (+) F2[U]<gr>  (+)  (+) F2[U]/U^k<gr>.
struct TowerDecomposition {
    std::vector<int> free_gradings;              // sorted descending
    std::vector<std::pair<int, int>> torsion;    // (grading, order), sorted

    bool operator==(const TowerDecomposition&) const = default;
    int max_torsion_order() const;
    std::string str() const;
};

/// Homology via Smith-style reduction over the graded PID F2[U]:
/// repeatedly cancels a minimal-exponent pivot by a graded basis change.
TowerDecomposition homology_towers(const UComplexPtr& c);

/// Cancellation of all exponent-zero differential entries, with tracked
/// homotopy equivalence data.  Satisfies project . include = id and
/// id + include . project = d H + H d; all four maps are verified.
struct Reduction {
    UComplexPtr reduced;
    UMap project;  // original -> reduced
    UMap include;  // reduced -> original
    UMap homotopy; // original -> original, grading +1
};
Reduction reduce_units(const UComplexPtr& c);

// ---------------------------------------------------------------------------
// Graded F2 presentations (the per-grading slice systems behind the solvers).
// ---------------------------------------------------------------------------

/// F2-basis view of a U-complex: basis vectors U^k g per Maslov grading,
/// down to a floor grading.  The U-truncation bound for torsion questions
/// is supplied by the caller from a torsion pre-pass.
class GradedView {
  public:
    GradedView(UComplexPtr c, int floor_grading);

    const UComplexPtr& complex() const { return c_; }
    int floor() const { return floor_; }
    const std::vector<std::pair<int, int>>& basis(int gr) const; // (gen, uexp)
    std::size_t dim(int gr) const;
    int position(int gr, int gen, int uexp) const; // -1 if absent

    /// Matrix of a graded map f restricted to grading gr of the source
    /// view (rows index source basis, cols target basis).
    static BitMatrix matrix_of(const UMap& f, const GradedView& src, const GradedView& dst, int gr);
    /// Matrix of multiplication by U^m from grading gr to gr - 2m.
    BitMatrix u_power_matrix(int gr, int m) const;
    /// Matrix of the differential C_gr -> C_{gr-1}.
    BitMatrix diff_matrix(int gr) const;

    UElement element(int gr, const std::vector<std::uint8_t>& coords) const;

  private:
    UComplexPtr c_;
    int floor_;
    std::map<int, std::vector<std::pair<int, int>>> basis_;
    std::map<int, std::map<std::pair<int, int>, int>> pos_;
    static const std::vector<std::pair<int, int>> empty_;
};

// ---------------------------------------------------------------------------
// Linear map-solving framework.  Unknown maps are encoded as one F2
// variable per generator pair with grading-forced monomial coefficient;
// relations contribute one equation per (source, target) generator pair.
// ---------------------------------------------------------------------------

struct UMapSlots {
    UComplexPtr src, dst;
    int shift = 0;
    std::vector<std::array<int, 3>> slots; // (i, j, forced exponent)
    std::map<std::pair<int, int>, int> index; // (i,j) -> var id

    int var_of(int i, int j) const {
        auto it = index.find({i, j});
        return it == index.end() ? -1 : it->second;
    }
};

UMapSlots enumerate_umap_slots(F2System& sys, const UComplexPtr& src, const UComplexPtr& dst, int shift);
UMap realize_umap(const UMapSlots& slots, const std::vector<std::uint8_t>& solution);

/// One relation: a sum of terms that must vanish as a map src -> dst of
/// the given shift (mod U: only the exponent-zero entries must vanish).
struct URelation {
    std::uint64_t id;
    UComplexPtr src, dst;
    int shift;
    bool mod_u = false;

    bool row_live(int i, int t) const;
    std::uint64_t key(int i, int t) const;
};

void accum_known(F2System& sys, const URelation& rel, const UMap& k);
void accum_slots(F2System& sys, const URelation& rel, const UMapSlots& x);
/// L . X (left-composition by a known map).
void accum_left(F2System& sys, const URelation& rel, const UMap& l, const UMapSlots& x);
/// X . R (right-composition by a known map).
void accum_right(F2System& sys, const URelation& rel, const UMapSlots& x, const UMap& r);

// Bigraded counterparts.
struct BiMapSlots {
    ComplexPtr src, dst;
    Variance var = Variance::Equivariant;
    int sw = 0, sz = 0;
    std::vector<std::array<int, 4>> slots; // (i, j, a, b)
    std::map<std::pair<int, int>, int> index;

    int var_of(int i, int j) const {
        auto it = index.find({i, j});
        return it == index.end() ? -1 : it->second;
    }
};

BiMapSlots enumerate_bimap_slots(F2System& sys, const ComplexPtr& src, const ComplexPtr& dst,
                                 Variance var, int sw, int sz);
ChainMap realize_bimap(const BiMapSlots& slots, const std::vector<std::uint8_t>& solution);

struct BiRelation {
    std::uint64_t id;
    ComplexPtr src, dst;
    Variance var;
    int sw, sz;
    bool mod_u = false;

    bool row_live(int i, int t) const;
    std::uint64_t key(int i, int t) const;
};

void accum_known(F2System& sys, const BiRelation& rel, const ChainMap& k);
void accum_slots(F2System& sys, const BiRelation& rel, const BiMapSlots& x);
void accum_left(F2System& sys, const BiRelation& rel, const ChainMap& l, const BiMapSlots& x);
void accum_right(F2System& sys, const BiRelation& rel, const BiMapSlots& x, const ChainMap& r);

// ---------------------------------------------------------------------------
// High-level solvers.
// ---------------------------------------------------------------------------

/// d f + f d for a bigraded map (char 2).
ChainMap chain_commutator(const ChainMap& f);

struct NullhomotopyResult {
    std::optional<UMap> homotopy;
    /// On failure: a homology cycle on which the map acts nontrivially,
    /// when one exists (auditable obstruction).
    std::optional<std::string> obstruction;
};

/// Solves d H + H d = F for H of shift F.shift + 1.  F must be a chain map.
NullhomotopyResult solve_nullhomotopy(const UMap& f, bool mod_u = false);
std::optional<ChainMap> solve_nullhomotopy(const ChainMap& f, bool mod_u = false);

/// Decides f ~ g (strict) or f ~ g mod U; returns the homotopy witness.
std::optional<UMap> homotopy_between(const UMap& f, const UMap& g, bool mod_u = false);
std::optional<ChainMap> homotopy_between(const ChainMap& f, const ChainMap& g, bool mod_u = false);

/// Basis of the F2-vector space of chain maps with the given shift.
std::vector<UMap> chain_map_space(const UComplexPtr& c1, const UComplexPtr& c2, int shift);
std::vector<ChainMap> chain_map_space(const ComplexPtr& c1, const ComplexPtr& c2, Variance var, int sw,
                                      int sz);

/// Plain d-invariant data: the top grading carrying a U-nontorsion cycle,
/// with a witness cycle.  Requires a complex with at least one free tower.
struct TowerClass {
    int grading;
    UElement cycle;
};
TowerClass tower_class(const UComplexPtr& c);

} // namespace hfk
