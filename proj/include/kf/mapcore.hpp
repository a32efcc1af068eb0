#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kf/errors.hpp"
#include "kf/prime_field.hpp"
#include "kf/rational.hpp"
#include "kf/unipoly.hpp"

namespace kf {

// Parameters of the map family: the degree-n polynomial F with exact
// rational coefficients a_0..a_n, a_n != 0, n >= 2.
struct MapParams {
    int n;
    std::vector<Rat> a;

    MapParams(int n_, std::vector<Rat> coeffs) : n(n_), a(std::move(coeffs)) {
        if (n < 2) throw InvalidInput("map degree n must be >= 2");
        if ((int)a.size() != n + 1) throw InvalidInput("expected n+1 coefficients a_0..a_n");
        if (a[n] == 0) throw InvalidInput("leading coefficient a_n must be nonzero");
    }

    Rat F(const Rat& z) const {
        Rat s = 0;
        for (int j = n; j >= 0; --j) s = s * z + a[j];
        return s;
    }
};

// Projective point with canonical integer coordinates: coprime, first
// nonzero coordinate positive. Equality is structural.
struct ProjPoint {
    std::array<Int, 3> x{};

    ProjPoint(const Rat& c0, const Rat& c1, const Rat& c2) {
        Int den = 1;
        for (const Rat* c : {&c0, &c1, &c2})
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c->get_den().get_mpz_t());
        x = {Int(c0.get_num() * (den / c0.get_den())), Int(c1.get_num() * (den / c1.get_den())),
             Int(c2.get_num() * (den / c2.get_den()))};
        Int g = 0;
        for (const auto& v : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 0) throw DomainError("projective point needs a nonzero coordinate");
        for (auto& v : x) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        for (const auto& v : x) {
            if (v == 0) continue;
            if (sgn(v) < 0)
                for (auto& w : x) w = -w;
            break;
        }
    }

    static ProjPoint e1() { return {0, 1, 0}; }
    static ProjPoint e2() { return {0, 0, 1}; }
    static ProjPoint e01() { return {1, 1, 0}; }

    friend bool operator==(const ProjPoint& p, const ProjPoint& q) { return p.x == q.x; }
    friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }

    std::string str() const {
        return "[" + x[0].get_str() + ":" + x[1].get_str() + ":" + x[2].get_str() + "]";
    }

private:
    ProjPoint(long c0, long c1, long c2) : x{Int(c0), Int(c1), Int(c2)} {}
};

// Image of a point: a point, or indeterminate when all three homogeneous
// components vanish.
struct PointImage {
    std::optional<ProjPoint> pt;

    bool indeterminate() const { return !pt.has_value(); }
    const ProjPoint& point() const {
        if (!pt) throw DomainError("indeterminate image has no point");
        return *pt;
    }
    static PointImage indeterminate_image() { return {}; }
};

// Parametrized rational arc [X0(s):X1(s):X2(s)] with no common polynomial
// factor and primitive integer coefficients (first nonzero component has a
// positive leading coefficient). Equality is structural.
struct ParamArc {
    std::array<RatPoly, 3> x;

    // clears the common factor and canonicalizes
    static ParamArc make(RatPoly c0, RatPoly c1, RatPoly c2);

    // line through (p0,p1,p2) with direction (d0,d1,d2)
    static ParamArc line(const std::array<Rat, 3>& p, const std::array<Rat, 3>& d);

    int degree() const { return std::max({x[0].deg(), x[1].deg(), x[2].deg()}); }
    ProjPoint at_zero() const { return {x[0].coeff(0), x[1].coeff(0), x[2].coeff(0)}; }

    friend bool operator==(const ParamArc& a, const ParamArc& b) { return a.x == b.x; }

private:
    ParamArc() = default;
    friend ParamArc canonical_arc(std::array<RatPoly, 3> img);
};

// joint integer-primitive scaling and sign normalization; components must
// already share no polynomial factor
ParamArc canonical_arc(std::array<RatPoly, 3> img);

enum class ArithmeticMode { exact, prime_field };

// ---------------------------------------------------------------------------
// Map component formulas, shared by scalar evaluation and arc pushforward.
// Derived once from the defining involutions; all three components are
// homogeneous of degree 2n+1 with no generic common factor.
namespace detail {

// T: ring elements (field scalars or polynomials over them); `a` embedded in T.
//  forward: D = x0x1 - x0^2, B = x0^2 - x0x1 - x1x2
//    k0 = D^n x2
//    k1 = x0^{n-1}(x1-x0)^{n+1}(x0+x2) + x2 * sum_j a_j D^{n-j} B^j
//    k2 = D^{n-1} B x2
template <class T>
std::array<T, 3> forward_components(const std::vector<T>& a, int n, const T& x0, const T& x1,
                                    const T& x2) {
    T d = x0 * x1 - x0 * x0;
    T b = T() - d - x1 * x2;
    std::vector<T> dp(n + 1); // dp[i] = D^i for i >= 1; dp[0] unused
    dp[1] = d;
    for (int i = 2; i <= n; ++i) dp[i] = dp[i - 1] * d;
    T s = a[n];
    for (int j = n - 1; j >= 0; --j) s = s * b + a[j] * dp[n - j];
    T x0p = x0; // x0^{n-1}
    for (int i = 2; i <= n - 1; ++i) x0p = x0p * x0;
    T diff = x1 - x0;
    T diffp = diff; // (x1-x0)^{n+1}
    for (int i = 2; i <= n + 1; ++i) diffp = diffp * diff;
    T k1 = x0p * diffp * (x0 + x2) + x2 * s;
    return {dp[n] * x2, k1, dp[n - 1] * b * x2};
}

//  inverse: G = sum_j a_j x2^j x0^{n-j}, A = x0^n + x1 x0^{n-1} - G
//    k0 = x0^n x2 A
//    k1 = A^2 (x0+x2)
//    k2 = x0^{n-1} x2 (x0^n x2 - (x0+x2) A)
template <class T>
std::array<T, 3> inverse_components(const std::vector<T>& a, int n, const T& x0, const T& x1,
                                    const T& x2) {
    std::vector<T> x0p(n + 1); // x0p[i] = x0^i for i >= 1; x0p[0] unused
    x0p[1] = x0;
    for (int i = 2; i <= n; ++i) x0p[i] = x0p[i - 1] * x0;
    T g = a[n];
    for (int j = n - 1; j >= 0; --j) g = g * x2 + a[j] * x0p[n - j];
    T aa = x0p[n] + x1 * x0p[n - 1] - g;
    return {x0p[n] * x2 * aa, aa * aa * (x0 + x2), x0p[n - 1] * x2 * (x0p[n] * x2 - (x0 + x2) * aa)};
}

template <class K>
std::vector<UniPoly<K>> embed_coeffs(const std::vector<K>& a) {
    std::vector<UniPoly<K>> r;
    r.reserve(a.size());
    for (const auto& v : a) r.push_back(UniPoly<K>::constant(v));
    return r;
}

// gcd(f0*f1, w) via gcd(xy, w) = gcd(x, w) * gcd(y, w / gcd(x, w))
template <class K>
UniPoly<K> gcd_of_product(const UniPoly<K>& f0, const UniPoly<K>& f1, const UniPoly<K>& w) {
    UniPoly<K> d0 = gcd(f0, w);
    UniPoly<K> d1 = gcd(f1, div_exact(w, d0));
    return d0 * d1;
}

// clears the common factor of a rational component triple by the modular
// integer gcd; relative scales between components are preserved
std::array<RatPoly, 3> clear_common_factor(std::array<RatPoly, 3> img);

// Pushes an arc through the forward map and divides out the common factor.
// Over a prime field the common factor of (k0, k2) is known by construction
// to be u^{n-1} * x2 * gcd(u, w) with u = x0(x1-x0), w = -u - x1x2; the
// triple gcd is extracted from k1 factor by factor, which keeps every
// Euclidean step on polynomials no larger than the arc components. Over the
// rationals the clearing goes through the modular integer gcd instead.
template <class K>
std::array<UniPoly<K>, 3> push_forward_cleared(const std::vector<K>& a, int n,
                                               const std::array<UniPoly<K>, 3>& arc) {
    using P = UniPoly<K>;
    auto av = embed_coeffs(a);
    auto img = forward_components<P>(av, n, arc[0], arc[1], arc[2]);
    if (img[0].is_zero() && img[1].is_zero() && img[2].is_zero()) throw ArcCollapse();
    if constexpr (std::is_same_v<K, Rat>) {
        return clear_common_factor(std::move(img));
    } else {
        if (img[0].is_zero() || img[1].is_zero() || img[2].is_zero()) {
            // degenerate arcs (inside exceptional curves) stay small: plain gcd
            P g;
            for (const auto& c : img) g = gcd(g, c);
            for (auto& c : img)
                if (!c.is_zero()) c = div_exact(c, g);
            return img;
        }
        P beta = arc[1] - arc[0];
        P u = arc[0] * beta;
        P w = P() - u - arc[1] * arc[2];
        P gamma = gcd_of_product(arc[0], beta, w);
        // factor pool for gcd(k0, k2) = u^{n-1} * x2 * gamma
        std::vector<std::pair<P, int>> pool;
        pool.push_back({arc[0], n - 1});
        pool.push_back({beta, n - 1});
        pool.push_back({arc[2], 1});
        if (gamma.deg() > 0) pool.push_back({gamma, 1});
        P r = img[1], g = P::constant(K(1));
        for (const auto& [f, mult] : pool) {
            if (f.deg() <= 0) continue;
            P d = f; // repeated extractions can reuse the shrinking divisor
            for (int i = 0; i < mult; ++i) {
                d = gcd(d, r);
                if (d.deg() <= 0) break;
                g = g * d;
                r = div_exact(r, d);
            }
        }
        return {div_exact(img[0], g), r, div_exact(img[2], g)};
    }
}

template <class K>
std::array<UniPoly<K>, 3> push_inverse_cleared(const std::vector<K>& a, int n,
                                               const std::array<UniPoly<K>, 3>& arc) {
    using P = UniPoly<K>;
    auto av = embed_coeffs(a);
    auto img = inverse_components<P>(av, n, arc[0], arc[1], arc[2]);
    if (img[0].is_zero() && img[1].is_zero() && img[2].is_zero()) throw ArcCollapse();
    if constexpr (std::is_same_v<K, Rat>) {
        return clear_common_factor(std::move(img));
    } else {
        P g;
        for (const auto& c : img) g = gcd(g, c);
        for (auto& c : img)
            if (!c.is_zero()) c = div_exact(c, g);
        return img;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Operations

// Exact evaluation of the map (and its inverse) at a point.
PointImage eval_k(const MapParams& params, const ProjPoint& p);
PointImage eval_k_inv(const MapParams& params, const ProjPoint& p);

// The two defining involutions in affine coordinates (x, y) = [1:x:y].
std::pair<Rat, Rat> involution_i(const Rat& x, const Rat& y);
std::pair<Rat, Rat> involution_j(const MapParams& params, const Rat& x, const Rat& y);

// Pushforward of an arc with common-factor clearing.
ParamArc push_arc(const MapParams& params, const ParamArc& c);
ParamArc push_arc_inverse(const MapParams& params, const ParamArc& c);

// Degree d_j of the j-th pushforward of a generic line, j = 0..N. Runs twice
// with independent random lines (and, in prime-field mode, distinct moduli);
// persistent disagreement raises GenericityFailure.
std::vector<long> degree_sequence(const MapParams& params, int N, ArithmeticMode mode,
                                  std::uint64_t seed);

// Forward orbit of a point; stops at (and includes) the first indeterminate
// image.
std::vector<PointImage> orbit_point(const MapParams& params, const ProjPoint& p, int N);

// Forward orbit of an arc; each entry is the pushed arc with its base point
// at s = 0.
std::vector<std::pair<ParamArc, ProjPoint>> orbit_arc(const MapParams& params, const ParamArc& c,
                                                      int N);

// residuals sum_i c_i d_{j+i} for all admissible shifts; all zero iff the
// polynomial annihilates the sequence
std::vector<Int> recurrence_residuals(const IntPoly& poly, const std::vector<long>& seq);

} // namespace kf
