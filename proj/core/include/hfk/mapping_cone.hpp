#pragma once

#include "hfk/knotlib.hpp"
#include "hfk/linalg.hpp"
#include "hfk/rational.hpp"

#include <optional>

namespace hfk {

enum class FlipKind { Conjugation, StrongInversion }; // F_s = Z^(2s+n) iota  vs  Z^(2s+n) phi

enum class SymmetryCase { StrongInversion, Periodic };

/// One Alexander level of the surgery cone: the subcomplex slice A_s with
/// its localization maps into the shared B model.
struct ConeSlice {
    int s = 0;
    UComplexPtr a;
    UMap v; // A_s -> B, level s
    UMap h; // A_s -> B, level s + n
};

/// Induced symmetry on the cone.  In the strongly invertible case phi_a
/// maps A_s to A_{-s} and phi_b maps level s to level n-s; in the periodic
/// case both preserve levels.  The correction component maps A_s to the
/// level -s (strongly invertible) or s+n (periodic) copy of B.
struct InducedInvolution {
    SymmetryCase kind = SymmetryCase::StrongInversion;
    std::map<int, UMap> phi_a;      // per source level
    std::map<int, UMap> phi_b;      // per source level, on the B model
    std::map<int, UMap> correction; // per source level, A_s -> B
};

/// The surgery mapping cone in its maximally asymmetric model: A-slices
/// are genuine Alexander slices of the knot complex; every level of B is
/// one copy of the shared localized-slice model (not pre-collapsed).
class MappingCone {
  public:
    /// Knot complex, framing, flip choice, and window half-width.  The
    /// window must be wide enough that v is an isomorphism at the top and
    /// h at the bottom; this is checked, not assumed.
    MappingCone(const KnotModel& k, int framing, FlipKind flip, std::optional<int> window = {});

    int framing() const { return n_; }
    int window() const { return big_n_; }
    FlipKind flip() const { return flip_; }
    const KnotModel& knot() const { return knot_; }
    const UComplexPtr& b_model() const { return b_; }
    const ConeSlice& slice(int s) const;
    std::vector<int> levels() const;

    /// Generator count of the full cone (A and B parts over the window).
    std::size_t rank() const;

    /// The summand on Alexander levels congruent to s mod n.
    std::vector<int> spinc_levels(int s) const;

    /// Assembled complex of the [s]-summand restricted to levels in
    /// [lo, hi] (quotient complex: A_t for lo <= t <= hi, B_t for
    /// lo < t <= hi, levels stepping by the framing).  B carries the
    /// per-level grading offsets that make the cone differential drop the
    /// assembled grading by one; the offsets are anchored so the middle
    /// slice A_{s*} keeps its own grading.
    UComplexPtr assemble(int s, int lo, int hi) const;
    UComplexPtr assemble(int s) const; // full window

    /// Induced symmetry of the declared kind; requires the matching flip.
    InducedInvolution build_involution(SymmetryCase kind) const;

    /// The assembled symmetry on an assembled summand (window symmetric
    /// around the fixed level).
    UMap assemble_involution(const InducedInvolution& inv, int s, int lo, int hi,
                             const UComplexPtr& assembled) const;

    /// Canonical representative level of the [s] class in (-n/2, n/2].
    int canonical_level(int s) const;

  private:
    void check_window() const;
    UMap make_v(int s, const UComplexPtr& a) const;
    UMap make_h(int s, const UComplexPtr& a) const;

    KnotModel knot_;
    int n_;
    FlipKind flip_;
    int big_n_;
    UComplexPtr b_;
    std::map<int, ConeSlice> slices_;
};

/// Part of the B model bookkeeping: the label of the U-module generator
/// of level-s B corresponding to a knot generator.
std::string b_label(const std::string& gen_id);

/// One Alexander level of the Z-localized complex: one U-module generator
/// per knot generator, with differentials U^(W-power).  Level-independent.
UComplexPtr localized_level_model(const ComplexPtr& c);

/// Homology towers of the [s]-summand of the cone, computed on the
/// assembled quotient over the full window.
TowerDecomposition spinc_towers(const MappingCone& x, int s);

/// Collapsed form of the cone: every B level reduced to a single free
/// generator, with v and h transported through the tracked reduction.
struct CollapsedCone {
    int framing = 0;
    int window = 0;
    /// per level s: for each A_s generator, the U-exponents of the
    /// collapsed v and h (absent = zero).
    struct Slice {
        UComplexPtr a;
        std::vector<UPoly> v; // indexed by A_s generator, value in F2[U]
        std::vector<UPoly> h;
    };
    std::map<int, Slice> slices;
    int b_grading = 0; // grading of the surviving B generator
};
CollapsedCone collapse(const MappingCone& x);

/// Assembled complex of the [s]-summand of a collapsed cone over its full
/// window, with the same grading offsets as MappingCone::assemble.
UComplexPtr assemble_collapsed(const CollapsedCone& c, int s);

} // namespace hfk
