#pragma once

#include "hfk/local_equiv.hpp"
#include "hfk/splitting.hpp"
#include "hfk/surgery_algebra.hpp"

#include <string>

namespace hfk {

/// JSON serialization of the core objects.  All numeric output is exact:
/// integers directly, other rationals as {"num": p, "den": q}.  Emitted
/// documents are canonically ordered so byte comparison is meaningful.
namespace json_io {

std::string complex_to_json(const BigradedComplex& c, bool pretty = false);
ComplexPtr complex_from_json(const std::string& text);

std::string knot_to_json(const KnotModel& k, bool with_maps, bool pretty = false,
                         const std::string& verify_status = "");
KnotModel knot_from_json(const std::string& text);

std::string ucomplex_to_json(const UComplex& c, bool pretty = false);

std::string cone_to_json(const MappingCone& x, const std::string& knot_spec,
                         const std::string& sym_tag, bool pretty = false);
std::string type_d_to_json(const TypeDModule& x, bool pretty = false);
std::string morphism_to_json(const TypeDMorphism& m, bool pretty = false);
std::string collapsed_to_json(const CollapsedCone& c, bool pretty = false);

std::string rational_to_json(const Rational& r);
std::string towers_to_json(const TowerDecomposition& t);
std::string params_to_json(const StandardParams& p);
std::string certificate_to_json(const LocalMapCertificate& c, bool pretty = false);

/// Reads either a bare complex document or a knot document with maps.
KnotModel knot_or_complex_from_json(const std::string& text);

} // namespace json_io

} // namespace hfk
