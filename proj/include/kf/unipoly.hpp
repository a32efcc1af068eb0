#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kf/errors.hpp"
#include "kf/prime_field.hpp"
#include "kf/rational.hpp"

namespace kf {

template <class K>
class UniPoly;

template <class K>
std::vector<K> poly_mul_vec(const std::vector<K>& a, const std::vector<K>& b) {
    return UniPoly<K>::mul_generic(a, b);
}
// prime-field products go through a number-theoretic transform when the
// modulus supports one (see fp_ntt.cpp)
std::vector<Fp> poly_mul_vec(const std::vector<Fp>& a, const std::vector<Fp>& b);

// Dense univariate polynomial, coefficients lowest degree first. The zero
// polynomial is the empty list; otherwise the leading coefficient is nonzero.
template <class K>
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::initializer_list<K> c) : c_(c) { normalize(); }
    explicit UniPoly(std::vector<K> c) : c_(std::move(c)) { normalize(); }

    static UniPoly constant(K v) { return UniPoly(std::vector<K>{std::move(v)}); }
    static UniPoly monomial(int d, K v) {
        std::vector<K> c(d + 1);
        c[d] = std::move(v);
        return UniPoly(std::move(c));
    }
    static UniPoly x() { return monomial(1, K(1)); }

    bool is_zero() const { return c_.empty(); }
    int deg() const { return (int)c_.size() - 1; }
    K coeff(int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : K(); }
    const K& lc() const { return c_.back(); }
    const std::vector<K>& coeffs() const { return c_; }

    K operator()(const K& x) const {
        K r{};
        for (int i = deg(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return UniPoly(poly_mul_vec(a.c_, b.c_));
    }

    // generic product path (schoolbook / Karatsuba)
    static std::vector<K> mul_generic(const std::vector<K>& a, const std::vector<K>& b) {
        std::vector<K> r(a.size() + b.size() - 1);
        mul_into(r.data(), a.data(), a.size(), b.data(), b.size());
        return r;
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend UniPoly operator*(const K& s, UniPoly p) {
        for (auto& v : p.c_) v = s * v;
        p.normalize();
        return p;
    }

    // multiply by x^k
    UniPoly shifted(int k) const {
        if (is_zero()) return {};
        std::vector<K> r(c_.size() + k);
        std::copy(c_.begin(), c_.end(), r.begin() + k);
        return UniPoly(std::move(r));
    }

    // coefficients of degree < k
    UniPoly truncated(int k) const {
        if (k <= 0 || is_zero()) return {};
        std::vector<K> r(c_.begin(), c_.begin() + std::min<size_t>(k, c_.size()));
        return UniPoly(std::move(r));
    }

    // x^{deg} p(1/x); drops low-order zeros of the original tail
    UniPoly reversed() const {
        std::vector<K> r(c_.rbegin(), c_.rend());
        return UniPoly(std::move(r));
    }
    // reverse within a frame of degree d (coefficients of x^i go to x^{d-i})
    UniPoly reversed_to(int d) const {
        std::vector<K> r(d + 1);
        for (int i = 0; i <= deg() && i <= d; ++i) r[d - i] = coeff(i);
        return UniPoly(std::move(r));
    }

    UniPoly pow(int e) const {
        UniPoly r = constant(K(1)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            if (e >>= 1) b *= b;
        }
        return r;
    }

    UniPoly derivative() const {
        if (deg() < 1) return {};
        std::vector<K> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = K((long)i) * c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        return (K(1) / lc()) * *this;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg(); i >= 0; --i) {
            if (coeff(i) == K()) continue;
            if (!out.empty()) out += " + ";
            out += coeff_str(c_[i]);
            if (i > 0) out += "*" + var + "^" + std::to_string(i);
        }
        return out;
    }

private:
    static std::string coeff_str(const Rat& v) { return rat_str(v); }
    static std::string coeff_str(const Int& v) { return v.get_str(); }
    static std::string coeff_str(const Fp& v) { return std::to_string(v.value()); }

    void normalize() {
        while (!c_.empty() && c_.back() == K()) c_.pop_back();
    }

    static constexpr size_t kKaratsubaCutoff = 48;

    // r must be zero-initialized of size na+nb-1
    static void mul_into(K* r, const K* a, size_t na, const K* b, size_t nb) {
        if (na < nb) {
            std::swap(a, b);
            std::swap(na, nb);
        }
        if (nb <= kKaratsubaCutoff) {
            for (size_t i = 0; i < na; ++i) {
                const K& ai = a[i];
                if (ai == K()) continue;
                for (size_t j = 0; j < nb; ++j) r[i + j] += ai * b[j];
            }
            return;
        }
        const size_t h = (na + 1) / 2;
        if (nb <= h) {
            mul_into(r, a, h, b, nb);
            mul_into(r + h, a + h, na - h, b, nb);
            return;
        }
        // Karatsuba: a = a0 + x^h a1, b = b0 + x^h b1
        const size_t na1 = na - h, nb1 = nb - h;
        std::vector<K> z0(2 * h - 1), z2(na1 + nb1 - 1);
        mul_into(z0.data(), a, h, b, h);
        mul_into(z2.data(), a + h, na1, b + h, nb1);
        std::vector<K> sa(h), sb(h);
        for (size_t i = 0; i < h; ++i) sa[i] = a[i];
        for (size_t i = 0; i < na1; ++i) sa[i] += a[h + i];
        for (size_t i = 0; i < h; ++i) sb[i] = b[i];
        for (size_t i = 0; i < nb1; ++i) sb[i] += b[h + i];
        std::vector<K> z1(2 * h - 1);
        mul_into(z1.data(), sa.data(), h, sb.data(), h);
        for (size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
        for (size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
        for (size_t i = 0; i < z0.size(); ++i) r[i] += z0[i];
        for (size_t i = 0; i < z1.size(); ++i) r[h + i] += z1[i];
        for (size_t i = 0; i < z2.size(); ++i) r[2 * h + i] += z2[i];
    }

    std::vector<K> c_;
};

template <class K>
struct DivModResult {
    UniPoly<K> quot, rem;
};

namespace detail {

// first k coefficients of 1/f, f(0) != 0; Newton doubling
template <class K>
UniPoly<K> inverse_series_poly(const UniPoly<K>& f, int k) {
    K f0 = f.coeff(0);
    if (f0 == K()) throw DomainError("series inverse: zero constant term");
    UniPoly<K> g = UniPoly<K>::constant(K(1) / f0);
    for (int prec = 1; prec < k;) {
        prec = std::min(2 * prec, k);
        UniPoly<K> fg = (f.truncated(prec) * g).truncated(prec);
        UniPoly<K> corr = UniPoly<K>::constant(K(2)) - fg;
        g = (g * corr).truncated(prec);
    }
    return g.truncated(k);
}

} // namespace detail

// schoolbook long division; requires field coefficients
template <class K>
DivModResult<K> divmod_schoolbook(const UniPoly<K>& a, const UniPoly<K>& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.deg() < b.deg()) return {{}, a};
    std::vector<K> r(a.coeffs());
    const auto& d = b.coeffs();
    const int db = b.deg();
    const K inv_lc = K(1) / b.lc();
    std::vector<K> q(a.deg() - db + 1);
    for (int i = (int)q.size() - 1; i >= 0; --i) {
        K c = r[db + i] * inv_lc;
        if (c == K()) continue;
        q[i] = c;
        for (int j = 0; j < db; ++j) r[j + i] -= c * d[j];
        r[db + i] = K();
    }
    r.resize(db);
    return {UniPoly<K>(std::move(q)), UniPoly<K>(std::move(r))};
}

template <class K>
DivModResult<K> divmod(const UniPoly<K>& a, const UniPoly<K>& b) {
    const int dq = a.deg() - b.deg();
    if (b.deg() > 400 && dq > 400) {
        UniPoly<K> ra = a.reversed_to(a.deg()), rb = b.reversed_to(b.deg());
        UniPoly<K> q = (ra.truncated(dq + 1) * detail::inverse_series_poly(rb, dq + 1)).truncated(dq + 1);
        q = q.reversed_to(dq);
        UniPoly<K> r = a - q * b;
        return {std::move(q), std::move(r)};
    }
    return divmod_schoolbook(a, b);
}

template <class K>
UniPoly<K> operator/(const UniPoly<K>& a, const UniPoly<K>& b) {
    return divmod(a, b).quot;
}
template <class K>
UniPoly<K> operator%(const UniPoly<K>& a, const UniPoly<K>& b) {
    return divmod(a, b).rem;
}

// exact division, throws if the remainder is nonzero
template <class K>
UniPoly<K> div_exact(const UniPoly<K>& a, const UniPoly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw DomainError("division expected to be exact");
    return q;
}

// ---------------------------------------------------------------------------
// Integer-coefficient utilities

using IntPoly = UniPoly<Int>;
using RatPoly = UniPoly<Rat>;
using FpPoly = UniPoly<Fp>;

inline Int content(const IntPoly& p) {
    Int g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// primitive part with positive leading coefficient
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return {};
    Int g = content(p);
    if (sgn(p.lc()) < 0) g = -g;
    std::vector<Int> c(p.coeffs());
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

// clear denominators and contents: primitive integer polynomial with
// positive leading coefficient, same roots
inline IntPoly to_integer_primitive(const RatPoly& p) {
    if (p.is_zero()) return {};
    Int den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> c(p.deg() + 1);
    for (int i = 0; i <= p.deg(); ++i) {
        Rat v = p.coeff(i) * Rat(den);
        c[i] = v.get_num();
    }
    return primitive_part(IntPoly(std::move(c)));
}

inline RatPoly to_rat_poly(const IntPoly& p) {
    std::vector<Rat> c(p.deg() + 1);
    for (int i = 0; i <= p.deg(); ++i) c[i] = Rat(p.coeff(i));
    return RatPoly(std::move(c));
}

// integer exact division (divisor need not be monic; divisibility required)
inline IntPoly div_exact_int(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.is_zero()) return {};
    std::vector<Int> r(a.coeffs());
    const int db = b.deg();
    const auto& d = b.coeffs();
    if (a.deg() < db) throw DomainError("division expected to be exact");
    std::vector<Int> q(a.deg() - db + 1);
    for (int i = (int)q.size() - 1; i >= 0; --i) {
        if (!mpz_divisible_p(r[db + i].get_mpz_t(), d[db].get_mpz_t()))
            throw DomainError("division expected to be exact");
        Int c;
        mpz_divexact(c.get_mpz_t(), r[db + i].get_mpz_t(), d[db].get_mpz_t());
        q[i] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[j + i] -= c * d[j];
    }
    for (const auto& v : r)
        if (v != 0) throw DomainError("division expected to be exact");
    return IntPoly(std::move(q));
}

inline bool divides(const IntPoly& b, const IntPoly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    try {
        div_exact_int(a, b);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// GCD

namespace detail {

// pseudo-remainder: lc(Q)^{deg P - deg Q + 1} * P mod Q
inline IntPoly pseudo_rem(const IntPoly& P, const IntPoly& Q) {
    IntPoly r = P;
    int e = P.deg() - Q.deg() + 1;
    const Int& lq = Q.lc();
    while (!r.is_zero() && r.deg() >= Q.deg()) {
        IntPoly s = IntPoly::monomial(r.deg() - Q.deg(), r.lc()) * Q;
        r = lq * r - s;
        --e;
    }
    if (e > 0) {
        Int f;
        mpz_pow_ui(f.get_mpz_t(), lq.get_mpz_t(), e);
        r = f * r;
    }
    return r;
}

// subresultant remainder sequence on primitive integer polynomials
inline IntPoly subresultant_gcd(IntPoly P, IntPoly Q) {
    if (P.deg() < Q.deg()) std::swap(P, Q);
    Int g = 1, h = 1;
    for (;;) {
        const int delta = P.deg() - Q.deg();
        IntPoly R = pseudo_rem(P, Q);
        if (R.is_zero()) return primitive_part(Q);
        if (R.deg() == 0) return IntPoly{Int(1)};
        // divide R by g*h^delta
        Int hpow;
        mpz_pow_ui(hpow.get_mpz_t(), h.get_mpz_t(), delta);
        Int div = g * hpow;
        std::vector<Int> rc(R.coeffs());
        for (auto& v : rc) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), div.get_mpz_t());
        P = Q;
        Q = IntPoly(std::move(rc));
        g = P.lc();
        // h = g^delta * h^{1-delta}
        Int gpow;
        mpz_pow_ui(gpow.get_mpz_t(), g.get_mpz_t(), delta);
        if (delta == 0) {
            // h unchanged times g^0: h stays
        } else if (delta == 1) {
            h = gpow;
        } else {
            Int hp;
            mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), delta - 1);
            mpz_divexact(h.get_mpz_t(), gpow.get_mpz_t(), hp.get_mpz_t());
        }
    }
}

} // namespace detail

// Primitive gcd over the integers by the modular method: images modulo
// 61-bit primes are combined by CRT until they stabilize, then verified by
// exact division. Suited to large inputs where a remainder sequence would
// blow up.
IntPoly modular_gcd(const std::vector<IntPoly>& polys);

namespace detail {
// allocation-free Euclid with fast reduction of large degree gaps
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b);
} // namespace detail

// monic gcd over a field; gcd(0,0) = 0
template <class K>
UniPoly<K> gcd(const UniPoly<K>& a, const UniPoly<K>& b) {
    if constexpr (std::is_same_v<K, Rat>) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        IntPoly g = detail::subresultant_gcd(to_integer_primitive(a), to_integer_primitive(b));
        return to_rat_poly(g).monic();
    } else if constexpr (std::is_same_v<K, Fp>) {
        return detail::fp_gcd(a, b);
    } else {
        if (b.is_zero()) return a.monic();
        UniPoly<K> p = a, q = b.monic();
        while (!q.is_zero()) {
            UniPoly<K> r = divmod(p, q).rem;
            p = q;
            q = r.monic();
        }
        return p.monic();
    }
}

} // namespace kf
