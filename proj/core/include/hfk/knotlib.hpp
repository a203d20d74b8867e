#pragma once

#include "hfk/complex.hpp"

#include <map>
#include <optional>
#include <string>

namespace hfk {

/// A knot complex together with its named structure and symmetry maps.
/// "iota" is the conjugation symmetry; other keys name symmetries of the
/// underlying knot ("phi", "sigma", "sigma_prime", ...).
struct KnotModel {
    std::string name;
    ComplexPtr complex;
    std::map<std::string, ChainMap> maps;
    std::string note;

    bool has_map(const std::string& key) const { return maps.count(key) != 0; }
    const ChainMap& map(const std::string& key) const;
    /// Seifert genus as the top Alexander grading of the complex.
    int genus() const { return complex->top_alexander(); }
};

/// The unknot: one generator, zero differential, identity symmetries.
KnotModel unknot();

/// Staircase complex of the (2n, 2n+1) torus knot: generators x_k (k even)
/// and y_l (l odd), differentials driven by the symmetric exponent sequence
/// (1, 2n-1, 2, 2n-2, ...), anchored so the extremal y-generators sit at
/// gr_w = 0 and gr_z = 0.  Ships phi (the standard strong inversion
/// x_i -> x_{-i}, y_i -> y_{-i}) and iota = phi.
KnotModel staircase_torus(int n);

/// The figure-eight complex on x0, a, b, c, e with iota, the two strong
/// inversions sigma and sigma_prime, and the 2-periodic phi.
KnotModel figure_eight();

/// The five-generator box complex: a free summand v plus a U^n-square,
/// with the involution v -> v + t, r_{+-1} swapped.
KnotModel box(int n);

/// Formal derivative of the differential matrix with respect to W.
ChainMap basepoint_phi(const ComplexPtr& c);
/// Formal derivative of the differential matrix with respect to Z.
ChainMap basepoint_psi(const ComplexPtr& c);
/// Sarkar map Id + Psi . Phi.
ChainMap sarkar_xi(const ComplexPtr& c);

/// Tensor-product model of a connected sum; symmetry maps present on both
/// factors (with equal variance) are tensored.  No conjugation map is
/// synthesized for sums.
KnotModel connected_sum(const KnotModel& k1, const KnotModel& k2);

/// Dual complex with transposed maps.
KnotModel mirror(const KnotModel& k);
/// W <-> Z exchange (string reversal).
KnotModel reverse(const KnotModel& k);

/// The swap inversion on C (x) C for a palindromic staircase model: the
/// composite (id (x) id + Phi (x) Psi) . exchange-and-swap, where the swap
/// uses the canonical index-negating identification.  Returns the tensor
/// model with map key "phi".
KnotModel swap_involution(const KnotModel& k);

/// Parses "torus:3", "fig8", "box:2", "unknot", connected sums joined by
/// '#', and the wrappers mirror(...), reverse(...), swap(...).
KnotModel parse_knot_spec(const std::string& spec);

} // namespace hfk
