#include "hfk/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hfk {

UTMonomial phi_sigma(const WZMonomial& m) { return {m.w, m.z - m.w}; }
UTMonomial phi_tau(const WZMonomial& m) { return {m.z, m.z - m.w}; }

UTPoly phi_sigma(const WZPoly& p) {
    UTPoly out;
    for (const auto& m : p.terms())
        out += UTPoly(phi_sigma(m));
    return out;
}

UTPoly phi_tau(const WZPoly& p) {
    UTPoly out;
    for (const auto& m : p.terms())
        out += UTPoly(phi_tau(m));
    return out;
}

WZPoly exchange_wz(const WZPoly& p) {
    WZPoly out;
    for (const auto& m : p.terms())
        out += wz(m.z, m.w);
    return out;
}

UTPoly invert_t(const UTPoly& p) {
    UTPoly out;
    for (const auto& m : p.terms())
        out += ut(m.u, -m.t);
    return out;
}

AlgebraElement AlgebraElement::from_wz(WZPoly p) {
    AlgebraElement a;
    a.left_ = Idem::Zero;
    a.right_ = Idem::Zero;
    a.wz_ = std::move(p);
    return a;
}

AlgebraElement AlgebraElement::from_ut(UTPoly p) {
    AlgebraElement a;
    a.left_ = Idem::One;
    a.right_ = Idem::One;
    a.ut_ = std::move(p);
    return a;
}

AlgebraElement AlgebraElement::connecting(UTPoly sigma_part, UTPoly tau_part) {
    AlgebraElement a;
    a.left_ = Idem::One;
    a.right_ = Idem::Zero;
    a.sig_ = std::move(sigma_part);
    a.tau_ = std::move(tau_part);
    return a;
}

AlgebraElement AlgebraElement::zero(Idem left, Idem right) {
    // the 0->1 sector holds only the zero element; zero itself is
    // representable in every sector
    AlgebraElement a;
    a.left_ = left;
    a.right_ = right;
    return a;
}

AlgebraElement AlgebraElement::one(Idem idem) {
    return idem == Idem::Zero ? from_wz(wz_one()) : from_ut(ut_one());
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (o.is_zero())
        return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    require(left_ == o.left_ && right_ == o.right_, "AlgebraElement: sum across idempotent sectors");
    wz_ += o.wz_;
    ut_ += o.ut_;
    sig_ += o.sig_;
    tau_ += o.tau_;
    return *this;
}

AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.right() != b.left())
        return AlgebraElement::zero(a.left(), b.right());
    if (a.left() == Idem::Zero && a.right() == Idem::Zero) {
        return AlgebraElement::from_wz(a.wz_part() * b.wz_part());
    }
    if (a.left() == Idem::One && a.right() == Idem::One) {
        if (b.right() == Idem::One)
            return AlgebraElement::from_ut(a.ut_part() * b.ut_part());
        // (1->1) * (1->0): left module structure on the connecting sector
        return AlgebraElement::connecting(a.ut_part() * b.sigma_part(), a.ut_part() * b.tau_part());
    }
    // a is 1->0, so b must be 0->0: push b across sigma and tau
    return AlgebraElement::connecting(a.sigma_part() * phi_sigma(b.wz_part()),
                                      a.tau_part() * phi_tau(b.wz_part()));
}

AlgebraElement elliptic_E(const AlgebraElement& a) {
    if (a.left() == Idem::Zero && a.right() == Idem::Zero)
        return AlgebraElement::from_wz(exchange_wz(a.wz_part()));
    if (a.left() == Idem::One && a.right() == Idem::One)
        return AlgebraElement::from_ut(invert_t(a.ut_part()));
    // E(sigma) = tau and E(tau) = sigma, with T -> T^-1 on the weights
    return AlgebraElement::connecting(invert_t(a.tau_part()), invert_t(a.sigma_part()));
}

namespace {

void append_var(std::string& out, const char* var, int exp) {
    if (exp == 0)
        return;
    if (!out.empty())
        out += ' ';
    out += var;
    if (exp != 1)
        out += '^' + std::to_string(exp);
}

template <typename Poly, typename MonoPrinter>
std::string poly_to_string(const Poly& p, MonoPrinter print) {
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& m : p.terms()) {
        if (!first)
            out += " + ";
        out += print(m);
        first = false;
    }
    return out;
}

} // namespace

std::string to_string(const WZMonomial& m) {
    std::string out;
    append_var(out, "W", m.w);
    append_var(out, "Z", m.z);
    return out.empty() ? "1" : out;
}

std::string to_string(const UTMonomial& m) {
    std::string out;
    append_var(out, "U", m.u);
    append_var(out, "T", m.t);
    return out.empty() ? "1" : out;
}

std::string to_string(const WZPoly& p) {
    return poly_to_string(p, [](const WZMonomial& m) { return to_string(m); });
}

std::string to_string(const UTPoly& p) {
    return poly_to_string(p, [](const UTMonomial& m) { return to_string(m); });
}

std::string to_string(const AlgebraElement& a) {
    if (a.is_zero())
        return "0";
    if (a.left() == Idem::Zero)
        return to_string(a.wz_part());
    if (a.right() == Idem::One)
        return to_string(a.ut_part());
    std::string out;
    for (const auto& m : a.sigma_part().terms()) {
        if (!out.empty())
            out += " + ";
        out += to_string(m) + " s";
    }
    for (const auto& m : a.tau_part().terms()) {
        if (!out.empty())
            out += " + ";
        out += to_string(m) + " t";
    }
    return out;
}

namespace {

struct ParsedTerm {
    int w = 0, z = 0, u = 0, t = 0;
    bool has_wz = false, has_ut = false;
    int tag = 0; // 0 none, 1 sigma, 2 tau
};

ParsedTerm parse_term(const std::string& term) {
    ParsedTerm out;
    std::istringstream in(term);
    std::string tok;
    while (in >> tok) {
        if (tok == "1")
            continue;
        if (tok == "0")
            continue; // handled by caller
        if (tok == "s") {
            require(out.tag == 0, "parse: duplicate sigma/tau tag in '" + term + "'");
            out.tag = 1;
            continue;
        }
        if (tok == "t") {
            require(out.tag == 0, "parse: duplicate sigma/tau tag in '" + term + "'");
            out.tag = 2;
            continue;
        }
        char var = tok[0];
        int exp = 1;
        if (tok.size() > 1) {
            require(tok[1] == '^', "parse: bad token '" + tok + "'");
            try {
                exp = std::stoi(tok.substr(2));
            } catch (const std::exception&) {
                throw Error("parse: bad exponent in '" + tok + "'");
            }
        }
        switch (var) {
        case 'W':
            out.w += exp;
            out.has_wz = true;
            break;
        case 'Z':
            out.z += exp;
            out.has_wz = true;
            break;
        case 'U':
            out.u += exp;
            out.has_ut = true;
            break;
        case 'T':
            out.t += exp;
            out.has_ut = true;
            break;
        default:
            throw Error("parse: unknown variable '" + tok + "'");
        }
    }
    require(!(out.has_wz && out.has_ut), "parse: mixed W/Z and U/T in one term: '" + term + "'");
    require(out.w >= 0 && out.z >= 0 && out.u >= 0, "parse: negative W/Z/U exponent in '" + term + "'");
    return out;
}

std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '+') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool is_blank_or_zero(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    return t.empty() || t == "0";
}

} // namespace

WZPoly parse_wz_poly(const std::string& s) {
    if (is_blank_or_zero(s))
        return WZPoly::zero();
    WZPoly out;
    for (const auto& term : split_terms(s)) {
        ParsedTerm p = parse_term(term);
        require(!p.has_ut && p.tag == 0, "parse: expected F2[W,Z] term in '" + s + "'");
        out += wz(p.w, p.z);
    }
    return out;
}

UTPoly parse_ut_poly(const std::string& s) {
    if (is_blank_or_zero(s))
        return UTPoly::zero();
    UTPoly out;
    for (const auto& term : split_terms(s)) {
        ParsedTerm p = parse_term(term);
        require(!p.has_wz && p.tag == 0, "parse: expected F2[U,T,T^-1] term in '" + s + "'");
        out += ut(p.u, p.t);
    }
    return out;
}

AlgebraElement parse_algebra_element(const std::string& s) {
    if (is_blank_or_zero(s))
        return AlgebraElement();
    bool any_tag = false, any_ut = false, any_wz = false;
    UTPoly sig, tau, plain_ut;
    WZPoly plain_wz;
    for (const auto& term : split_terms(s)) {
        ParsedTerm p = parse_term(term);
        if (p.tag == 1) {
            sig += ut(p.u, p.t);
            any_tag = true;
        } else if (p.tag == 2) {
            tau += ut(p.u, p.t);
            any_tag = true;
        } else if (p.has_ut) {
            plain_ut += ut(p.u, p.t);
            any_ut = true;
        } else {
            plain_wz += wz(p.w, p.z);
            any_wz = true;
        }
    }
    require(!(any_tag && (any_ut || any_wz)) && !(any_ut && any_wz),
            "parse: mixed idempotent sectors in '" + s + "'");
    if (any_tag)
        return AlgebraElement::connecting(sig, tau);
    if (any_ut)
        return AlgebraElement::from_ut(plain_ut);
    return AlgebraElement::from_wz(plain_wz);
}

} // namespace hfk
