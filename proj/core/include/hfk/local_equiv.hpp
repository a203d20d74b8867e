#pragma once

#include "hfk/mapping_cone.hpp"
#include "hfk/rational.hpp"

#include <optional>
#include <vector>

namespace hfk {

/// F2[U]-complex with a grading-preserving endomorphism and an overall
/// rational grading shift.  The localized homology must be one free tower.
struct PhiComplex {
    UComplexPtr c;
    UMap phi;
    Rational shift{0};

    /// chain map + single tower; throws on violation
    void validate() const;
    /// whether phi^2 is chain homotopic to the identity (true phi-complex)
    bool is_true_phi() const;
};

/// Mod-U variant: phi_bar is only a U-module map with [d, phi_bar] in im U
/// and phi_bar^2 ~ id mod U.
struct AlmostPhiComplex {
    UComplexPtr c;
    UMap phi_bar;
    Rational shift{0};

    void validate() const;
};

AlmostPhiComplex weaken(const PhiComplex& p);

// ---------------------------------------------------------------------------
// Standard complexes
// ---------------------------------------------------------------------------

/// Parameters (a_1, b_2, ..., a_{2m-1}, b_{2m}): sign of the omega arrow
/// and the signed U-power of the differential arrow, pairwise.
struct StandardParams {
    struct Step {
        int a = +1; // +1 or -1
        int b = 1;  // nonzero
        bool operator==(const Step&) const = default;
    };
    std::vector<Step> steps;

    bool operator==(const StandardParams&) const = default;
    StandardParams negated() const;
    std::string str() const;
};

/// Realization: generators t_0..t_{2m}; a_i = + puts omega t_i = t_{i-1},
/// a_i = - puts omega t_{i-1} = t_i; b_i > 0 puts d t_i = U^b t_{i-1},
/// b_i < 0 puts d t_{i-1} = U^|b| t_i; phi_bar = id + omega; gr(t_0) = 0.
AlmostPhiComplex build_standard(const StandardParams& params);

/// Signed count of differential parameters equal to +-n.
int phi_n(const StandardParams& params, int n);

// ---------------------------------------------------------------------------
// Correction terms
// ---------------------------------------------------------------------------

/// Maximum grading of a homogeneous U-nontorsion cycle a with (1+phi) a
/// exact, plus the shift.
Rational d_lower(const PhiComplex& p);
/// The triple (x,y,z) variant; both branches (x nonzero valued gr(x)+1,
/// x = 0 valued gr(y)) are swept and the maximum taken.
Rational d_upper(const PhiComplex& p);

/// Plain d-invariant (no endomorphism): top tower grading plus shift.
Rational d_plain(const UComplexPtr& c, Rational shift = Rational(0));

// ---------------------------------------------------------------------------
// Local maps
// ---------------------------------------------------------------------------

struct LocalMapCertificate {
    UMap f;       // grading-preserving chain map
    UMap witness; // H with f phi_1 + phi_2 f = dH + Hd (mod U when almost)
    bool almost = false;
    int tower_grading = 0; // grading of the tower cycle whose image survives
};

enum class LocalMode { Strict, Almost };

/// Searches the joint linear system for (f, H) and filters for maps that
/// survive on the localized tower.  The returned NONE is definitive: the
/// constraints are linear and the generator-pair slots are exhaustive.
std::optional<LocalMapCertificate> find_local_map(const PhiComplex& p1, const PhiComplex& p2,
                                                  LocalMode mode);
std::optional<LocalMapCertificate> find_local_map(const AlmostPhiComplex& p1,
                                                  const AlmostPhiComplex& p2);

/// Both-ways search.
bool locally_equivalent(const PhiComplex& p1, const PhiComplex& p2, LocalMode mode);
bool almost_locally_equivalent(const AlmostPhiComplex& p1, const AlmostPhiComplex& p2);

/// Bounded search for the standard representative: enumerates parameter
/// lists with |b_i| <= bound and 2m+1 <= max_rank, returning the first
/// candidate admitting almost local maps both ways.  A seed only permutes
/// the candidate order; by uniqueness of the representative it cannot
/// change the result.
std::optional<StandardParams> match_standard(const AlmostPhiComplex& a, int bound,
                                             std::optional<unsigned> seed = {});

/// For phi of odd order p (phi^p ~ id): F = sum phi^i is a local map in
/// both directions between (C, phi) and (C, id).
std::pair<LocalMapCertificate, LocalMapCertificate> odd_order_trivialize(const PhiComplex& p,
                                                                         int order);

// ---------------------------------------------------------------------------
// Lens space correction terms (exact rationals via the standard recursion)
// ---------------------------------------------------------------------------

Rational lens_d(int p, int q, int i);

// ---------------------------------------------------------------------------
// Local representatives of equivariant surgeries
// ---------------------------------------------------------------------------

/// Strongly invertible surgery p/q > 0 on K.  For q odd the class of the
/// symmetry-fixed spin-c structure is (A_0, phi) shifted by the lens term;
/// for p or q even it is the wedge A_0 -> B_0 <- A_0 with the swap.
/// Integer surgery n (q = 1) follows the same rule for odd n; for n = 2m
/// the [m] class is the wedge A_m -> B_m <- A_m with the swap involution.
PhiComplex local_rep_si(const KnotModel& k, int p, int q);

/// Periodic surgery n/m on K in the class [s], 0 <= s <= n-1:
/// (A_(floor(s/m)), phi) shifted by d(L(n,m),[s]).
PhiComplex local_rep_periodic(const KnotModel& k, int n, int m, int s);

/// The v-v wedge on A_s with the swap involution (two copies of the slice
/// over one B level), as a phi-complex with the given shift.
PhiComplex vv_wedge(const KnotModel& k, int s, Rational shift);

/// Cross-validation variant of the even strongly-invertible class: the
/// h-v wedge A_{-m} -> B_m <- A_m carrying the truncated cone involution.
PhiComplex hv_wedge(const KnotModel& k, int m, Rational shift);

/// Slice representative (A_s(K), map restricted to the slice).
PhiComplex phi_complex_from_slice(const KnotModel& k, const std::string& map_key, int s,
                                  Rational shift);

/// Trivial class (F2[U], id) at the given grading shift.
PhiComplex trivial_phi_complex(Rational shift = Rational(0));

/// Equivariant correction terms of the slice class: -d/2.
Rational v_lower_s(const KnotModel& k, const std::string& map_key, int s);
Rational v_upper_s(const KnotModel& k, const std::string& map_key, int s);

} // namespace hfk
