#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond)
        throw Error(msg);
}

/// Monomial W^w Z^z over F2[W,Z].  U is the product WZ and is never a
/// separate generator; u_degree is derived.
struct WZMonomial {
    int w = 0;
    int z = 0;

    auto operator<=>(const WZMonomial&) const = default;

    int u_degree() const { return w < z ? w : z; }
    /// Alexander contribution: W lowers A by one, Z raises it.
    int alexander() const { return z - w; }

    WZMonomial operator*(const WZMonomial& o) const { return {w + o.w, z + o.z}; }
};

/// Monomial U^u T^t over F2[U,T,T^-1]; t may be negative.
struct UTMonomial {
    int u = 0;
    int t = 0;

    auto operator<=>(const UTMonomial&) const = default;

    UTMonomial operator*(const UTMonomial& o) const { return {u + o.u, t + o.t}; }
};

/// Polynomial over F2: a set of monomials, presence = coefficient 1.
/// Addition is symmetric difference, so parity cancellation is automatic.
template <typename Mono>
class F2Poly {
  public:
    F2Poly() = default;
    explicit F2Poly(Mono m) : terms_{m} {}
    explicit F2Poly(std::vector<Mono> ts) : terms_(std::move(ts)) { canonicalize(); }

    static F2Poly zero() { return F2Poly(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    const std::vector<Mono>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    const Mono& only_term() const {
        require(is_monomial(), "F2Poly: not a monomial");
        return terms_.front();
    }

    F2Poly& operator+=(const F2Poly& o) {
        std::vector<Mono> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i] < o.terms_[j])
                merged.push_back(terms_[i++]);
            else if (o.terms_[j] < terms_[i])
                merged.push_back(o.terms_[j++]);
            else {
                ++i; // equal terms cancel in characteristic 2
                ++j;
            }
        }
        for (; i < terms_.size(); ++i)
            merged.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j)
            merged.push_back(o.terms_[j]);
        terms_ = std::move(merged);
        return *this;
    }
    friend F2Poly operator+(F2Poly a, const F2Poly& b) {
        a += b;
        return a;
    }

    friend F2Poly operator*(const F2Poly& a, const F2Poly& b) {
        F2Poly out;
        std::vector<Mono> prods;
        prods.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_)
                prods.push_back(x * y);
        out.terms_ = std::move(prods);
        out.canonicalize();
        return out;
    }
    friend F2Poly operator*(const Mono& m, const F2Poly& p) { return F2Poly(m) * p; }

    bool operator==(const F2Poly&) const = default;

  private:
    void canonicalize() {
        std::sort(terms_.begin(), terms_.end());
        // cancel pairs of equal terms
        std::vector<Mono> out;
        for (std::size_t i = 0; i < terms_.size();) {
            std::size_t j = i;
            while (j < terms_.size() && terms_[j] == terms_[i])
                ++j;
            if ((j - i) % 2 == 1)
                out.push_back(terms_[i]);
            i = j;
        }
        terms_ = std::move(out);
    }

    std::vector<Mono> terms_; // sorted, no duplicates
};

using WZPoly = F2Poly<WZMonomial>;
using UTPoly = F2Poly<UTMonomial>;

inline WZPoly wz(int w, int z) { return WZPoly(WZMonomial{w, z}); }
inline UTPoly ut(int u, int t) { return UTPoly(UTMonomial{u, t}); }
inline WZPoly wz_one() { return wz(0, 0); }
inline UTPoly ut_one() { return ut(0, 0); }

/// phi^sigma(W^i Z^j) = U^i T^(j-i), extended additively.
UTMonomial phi_sigma(const WZMonomial& m);
UTPoly phi_sigma(const WZPoly& p);
/// phi^tau(W^i Z^j) = U^j T^(j-i), extended additively.
UTMonomial phi_tau(const WZMonomial& m);
UTPoly phi_tau(const WZPoly& p);

/// The W<->Z exchange on F2[W,Z] (restriction of the elliptic twist).
WZPoly exchange_wz(const WZPoly& p);
/// U^i T^j -> U^i T^-j.
UTPoly invert_t(const UTPoly& p);

enum class Idem : std::uint8_t { Zero = 0, One = 1 };

/// Element of the surgery algebra in a definite idempotent sector.
/// Sectors: 0->0 is F2[W,Z]; 1->1 is F2[U,T,T^-1]; 1->0 is spanned by
/// sigma- and tau-weighted F2[U,T,T^-1]; 0->1 is structurally zero.
class AlgebraElement {
  public:
    AlgebraElement() = default; // zero in the 0->0 sector

    static AlgebraElement from_wz(WZPoly p);
    static AlgebraElement from_ut(UTPoly p);
    static AlgebraElement connecting(UTPoly sigma_part, UTPoly tau_part);
    static AlgebraElement zero(Idem left, Idem right);
    static AlgebraElement one(Idem idem);

    Idem left() const { return left_; }
    Idem right() const { return right_; }
    bool is_zero() const { return wz_.is_zero() && ut_.is_zero() && sig_.is_zero() && tau_.is_zero(); }

    const WZPoly& wz_part() const { return wz_; }
    const UTPoly& ut_part() const { return ut_; }
    const UTPoly& sigma_part() const { return sig_; }
    const UTPoly& tau_part() const { return tau_; }

    AlgebraElement& operator+=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
        a += b;
        return a;
    }
    // zeros in different idempotent sectors are the same element
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        if (a.is_zero() || b.is_zero())
            return a.is_zero() && b.is_zero();
        return a.left_ == b.left_ && a.right_ == b.right_ && a.wz_ == b.wz_ && a.ut_ == b.ut_ &&
               a.sig_ == b.sig_ && a.tau_ == b.tau_;
    }

  private:
    Idem left_ = Idem::Zero;
    Idem right_ = Idem::Zero;
    WZPoly wz_;
    UTPoly ut_;
    UTPoly sig_;
    UTPoly tau_;
};

/// Product in the surgery algebra.  Idempotent-mismatched products are zero
/// (additive-category convention), never an error.  Implements
/// sigma a = phi^sigma(a) sigma and tau a = phi^tau(a) tau.
AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b);

/// The elliptic automorphism E: W^iZ^j -> W^jZ^i, T -> T^-1,
/// sigma <-> tau.  An involution.
AlgebraElement elliptic_E(const AlgebraElement& a);

// Text grammar: monomials "W^a Z^b", "U^a T^b", with sigma -> "s" and
// tau -> "t" suffixes on connecting terms; polynomials are "+"-joined;
// literals "0" and "1".  Exponent 1 is printed bare ("W", not "W^1").
std::string to_string(const WZMonomial& m);
std::string to_string(const UTMonomial& m);
std::string to_string(const WZPoly& p);
std::string to_string(const UTPoly& p);
std::string to_string(const AlgebraElement& a);

WZPoly parse_wz_poly(const std::string& s);
UTPoly parse_ut_poly(const std::string& s);
/// Parses any sector; idempotents inferred from the term shapes.
AlgebraElement parse_algebra_element(const std::string& s);

} // namespace hfk
