#pragma once

#include "hfk/knotlib.hpp"

namespace hfk {

/// Direct-sum decomposition of the tensor square of an even torus-knot
/// staircase under the swap inversion: a small distinguished subcomplex
/// (a staircase with one box attached) plus a free complement.  The
/// inclusion commutes with the involution strictly; the projection
/// commutes up to the constructed homotopy.
struct SwapSplitting {
    KnotModel square; // tensor square carrying the swap inversion "phi"
    ComplexPtr sub;   // the distinguished subcomplex, with its own basis
    ChainMap include;     // sub -> square, strictly equivariant
    ChainMap project;     // square -> sub
    ChainMap sub_phi;     // restriction of the involution to sub
    ChainMap homotopy;    // H with [d, H] = project phi + sub_phi project
    std::vector<Element> complement; // the complementary family, in square coordinates
};

/// Builds the splitting for the (2n, 2n+1) staircase square, n odd.
/// Checks performed: the complement has exactly 16n^2 - 16n members and is
/// a subcomplex; together with sub it spans the square freely; the stated
/// equivariance properties hold.
SwapSplitting swap_splitting(int n);

/// Bigrading of a nonzero homogeneous element (throws when mixed).
std::pair<int, int> element_bigrading(const BigradedComplex& c, const Element& e);

} // namespace hfk
