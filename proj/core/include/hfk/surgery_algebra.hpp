#pragma once

#include "hfk/mapping_cone.hpp"

#include <optional>

namespace hfk {

/// Generator of a type-D module over the surgery algebra.  Idempotent-0
/// generators carry the (gr_w, gr_z) bigrading of the knot complex;
/// idempotent-1 generators carry (Maslov, Alexander).
struct DGenerator {
    std::string id;
    Idem idem = Idem::Zero;
    int gr1 = 0;
    int gr2 = 0;
};

class TypeDModule {
  public:
    int add_generator(const std::string& id, Idem idem, int gr1, int gr2);
    void add_delta(const std::string& from, const std::string& to, const AlgebraElement& a);
    void add_delta(int from, int to, const AlgebraElement& a);

    std::size_t rank() const { return gens_.size(); }
    const DGenerator& gen(std::size_t i) const { return gens_[i]; }
    int index_of(const std::string& id) const;
    const std::vector<std::pair<int, AlgebraElement>>& delta_row(int i) const { return delta_[i]; }

    int framing() const { return framing_; }
    void set_framing(int n) { framing_ = n; }
    /// Alexander shift of the sigma-weighted arrows (0 for constructed
    /// modules; other offsets are accepted and differenced in morphisms).
    int sigma_shift() const { return a_sigma_; }
    void set_sigma_shift(int a) { a_sigma_ = a; }

    /// (I (x) mu_2)(delta (x) I) delta = 0; returns the report.
    VerifyReport check_structure() const;

    /// The idempotent-0 part as a bigraded complex over F2[W,Z].
    ComplexPtr cfk_part() const;
    /// Index of the unique idempotent-1 generator.
    int p_index() const;

    bool operator==(const TypeDModule& o) const;

  private:
    std::vector<DGenerator> gens_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, AlgebraElement>>> delta_;
    int framing_ = 0;
    int a_sigma_ = 0;
};

/// The bordered reformulation of the surgery complex for a knot in S^3:
/// idempotent 0 carries the knot complex, idempotent 1 a single generator;
/// sigma-weighted arrows encode the localization map v and tau-weighted
/// arrows encode h (shifting the Alexander grading by the framing).
TypeDModule type_d_from_cfk(const KnotModel& k, int framing, FlipKind flip);

/// Coefficient rewriting through the elliptic automorphism: W <-> Z,
/// sigma <-> tau, T -> T^-1; idempotent-0 bigradings swap and the
/// idempotent-1 Alexander grading negates.  An involution.
TypeDModule tensor_e(const TypeDModule& x);

/// Pairing with the solid-torus module, with every level of the result
/// collapsed to the free tower: this recovers the surgery complex in the
/// same shape as collapse(MappingCone).
CollapsedCone box_tensor_collapsed(const TypeDModule& x, int window);

/// Morphism of type-D modules; when twisted, the target is understood as
/// the elliptic twist of `dst` and evaluation on box tensors composes with
/// the collapsing map (W^i Z^j -> W^j Z^i, U^i T^j -> U^i T^-j).
struct TypeDMorphism {
    TypeDModule src;
    TypeDModule dst; // the elliptic twist of the module when twisted
    bool twisted = false;
    std::vector<std::vector<std::pair<int, AlgebraElement>>> entries;

    const AlgebraElement* entry(int from, int to) const;
    /// morphism differential d(f) = (I mu2)(f (x) I) delta + (I mu2)(delta (x) I) f
    bool is_cycle() const;
};

/// The unique grading-preserving type-D morphism lifting a chain map on
/// the knot complex: the idempotent-0 part is f, the idempotent-1 part is
/// the induced tower action times the forced T-power, and the sigma/tau
/// corrections are the lexicographically first solution of the cycle
/// condition.  Throws if the linear system is unsolvable.
TypeDMorphism induced_morphism(const ChainMap& f, const TypeDModule& x);

/// Is a degree-0 type-D morphism null-homotopic (d h = f solvable)?
bool type_d_nullhomotopic(const TypeDMorphism& f);

/// One value of the induced map on the box tensor product: the image of
/// the idempotent-0 box generator g | W^a Z^b, as (target, coefficient)
/// pairs; idempotent-1 targets come out as p | U^i T^j.
struct BoxValue {
    int gen = 0;
    bool idem1 = false;
    WZMonomial m0;
    UTMonomial m1;
    bool operator==(const BoxValue&) const = default;
};
std::vector<BoxValue> apply_box_idem0(const TypeDMorphism& f, int g, const WZMonomial& m);
std::vector<BoxValue> apply_box_idem1(const TypeDMorphism& f, const UTMonomial& m);

} // namespace hfk
