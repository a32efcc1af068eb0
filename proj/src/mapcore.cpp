#include "kf/mapcore.hpp"

#include <random>

namespace kf {

namespace {

PointImage image_from_components(const std::array<Rat, 3>& c) {
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) return PointImage::indeterminate_image();
    return PointImage{ProjPoint(c[0], c[1], c[2])};
}

} // namespace

namespace detail {

std::array<RatPoly, 3> clear_common_factor(std::array<RatPoly, 3> img) {
    Int den = 1;
    for (const auto& c : img)
        for (const auto& v : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<IntPoly> scaled(3);
    for (int i = 0; i < 3; ++i) {
        std::vector<Int> c(img[i].deg() + 1);
        for (int k = 0; k <= img[i].deg(); ++k) {
            Rat v = img[i].coeff(k) * Rat(den);
            c[k] = v.get_num();
        }
        scaled[i] = IntPoly(std::move(c));
    }
    IntPoly g = modular_gcd(scaled);
    std::array<RatPoly, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = scaled[i].is_zero() || g.deg() == 0 ? to_rat_poly(scaled[i])
                                                     : to_rat_poly(div_exact_int(scaled[i], g));
    return out;
}

} // namespace detail

PointImage eval_k(const MapParams& params, const ProjPoint& p) {
    std::array<Rat, 3> x{Rat(p.x[0]), Rat(p.x[1]), Rat(p.x[2])};
    auto c = detail::forward_components<Rat>(params.a, params.n, x[0], x[1], x[2]);
    return image_from_components({c[0], c[1], c[2]});
}

PointImage eval_k_inv(const MapParams& params, const ProjPoint& p) {
    std::array<Rat, 3> x{Rat(p.x[0]), Rat(p.x[1]), Rat(p.x[2])};
    auto c = detail::inverse_components<Rat>(params.a, params.n, x[0], x[1], x[2]);
    return image_from_components({c[0], c[1], c[2]});
}

std::pair<Rat, Rat> involution_i(const Rat& x, const Rat& y) {
    if (y == 0 || x == 1) throw DomainError("involution i undefined: vanishing denominator");
    return {1 - x - (x - 1) / y, -y - 1 - y / (x - 1)};
}

std::pair<Rat, Rat> involution_j(const MapParams& params, const Rat& x, const Rat& y) {
    return {-x + params.F(y), y};
}

ParamArc canonical_arc(std::array<RatPoly, 3> img) {
    Int den = 1;
    for (const auto& c : img)
        for (const auto& v : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    Int cont = 0;
    for (const auto& c : img)
        for (const auto& v : c.coeffs()) {
            Rat scaled = v * Rat(den);
            mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), scaled.get_num().get_mpz_t());
        }
    if (cont == 0) throw DomainError("arc needs a nonzero component");
    Rat scale = Rat(den) / Rat(cont);
    for (const auto& c : img) {
        if (c.is_zero()) continue;
        if (sign(c.lc() * scale) < 0) scale = -scale;
        break;
    }
    ParamArc arc;
    for (int i = 0; i < 3; ++i) arc.x[i] = scale * img[i];
    return arc;
}

ParamArc ParamArc::make(RatPoly c0, RatPoly c1, RatPoly c2) {
    std::array<RatPoly, 3> comp{std::move(c0), std::move(c1), std::move(c2)};
    if (comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero())
        throw DomainError("arc needs a nonzero component");
    RatPoly g;
    for (const auto& c : comp) g = gcd(g, c);
    if (g.deg() > 0)
        for (auto& c : comp)
            if (!c.is_zero()) c = div_exact(c, g);
    return canonical_arc(std::move(comp));
}

ParamArc ParamArc::line(const std::array<Rat, 3>& p, const std::array<Rat, 3>& d) {
    return make(RatPoly{p[0], d[0]}, RatPoly{p[1], d[1]}, RatPoly{p[2], d[2]});
}

ParamArc push_arc(const MapParams& params, const ParamArc& c) {
    return canonical_arc(detail::push_forward_cleared<Rat>(params.a, params.n, c.x));
}

ParamArc push_arc_inverse(const MapParams& params, const ParamArc& c) {
    return canonical_arc(detail::push_inverse_cleared<Rat>(params.a, params.n, c.x));
}

namespace {

template <class K>
std::vector<long> degree_run(const std::vector<K>& a, int n, int N, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-999, 999);
    std::array<UniPoly<K>, 3> arc;
    for (;;) {
        for (auto& c : arc) {
            K p0{dist(rng)}, p1{dist(rng)};
            c = UniPoly<K>{p0, p1};
        }
        if (arc[0].deg() != 1 || arc[1].deg() != 1 || arc[2].deg() != 1) continue;
        UniPoly<K> g = gcd(gcd(arc[0], arc[1]), arc[2]);
        if (g.deg() == 0) break;
    }
    std::vector<long> d(N + 1);
    d[0] = 1;
    for (int j = 1; j <= N; ++j) {
        arc = detail::push_forward_cleared<K>(a, n, arc);
        d[j] = std::max({arc[0].deg(), arc[1].deg(), arc[2].deg()});
    }
    return d;
}

} // namespace

std::vector<long> degree_sequence(const MapParams& params, int N, ArithmeticMode mode,
                                  std::uint64_t seed) {
    if (N < 0) throw InvalidInput("degree sequence length must be >= 0");
    if (N == 0) return {1};
    std::mt19937_64 rng(seed);
    constexpr int kAttempts = 5;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::vector<long> r1, r2;
        if (mode == ArithmeticMode::exact) {
            r1 = degree_run<Rat>(params.a, params.n, N, rng);
            r2 = degree_run<Rat>(params.a, params.n, N, rng);
        } else {
            const auto pa = Fp::kDefaultPrimes[attempt % 3];
            const auto pb = Fp::kDefaultPrimes[(attempt + 1) % 3];
            {
                Fp::ModulusGuard guard(pa);
                std::vector<Fp> am;
                for (const auto& v : params.a) am.emplace_back(v);
                r1 = degree_run<Fp>(am, params.n, N, rng);
            }
            {
                Fp::ModulusGuard guard(pb);
                std::vector<Fp> am;
                for (const auto& v : params.a) am.emplace_back(v);
                r2 = degree_run<Fp>(am, params.n, N, rng);
            }
        }
        if (r1 == r2) return r1;
    }
    throw GenericityFailure("independent degree runs kept disagreeing after 5 attempts");
}

std::vector<PointImage> orbit_point(const MapParams& params, const ProjPoint& p, int N) {
    std::vector<PointImage> orbit;
    ProjPoint cur = p;
    for (int j = 0; j < N; ++j) {
        PointImage img = eval_k(params, cur);
        orbit.push_back(img);
        if (img.indeterminate()) break;
        cur = img.point();
    }
    return orbit;
}

std::vector<std::pair<ParamArc, ProjPoint>> orbit_arc(const MapParams& params, const ParamArc& c,
                                                      int N) {
    std::vector<std::pair<ParamArc, ProjPoint>> orbit;
    ParamArc cur = c;
    for (int j = 0; j < N; ++j) {
        cur = push_arc(params, cur);
        orbit.emplace_back(cur, cur.at_zero());
    }
    return orbit;
}

std::vector<Int> recurrence_residuals(const IntPoly& poly, const std::vector<long>& seq) {
    std::vector<Int> res;
    const int d = poly.deg();
    if (d < 0) throw DomainError("zero polynomial cannot annihilate");
    for (int j = 0; j + d < (int)seq.size(); ++j) {
        Int r = 0;
        for (int i = 0; i <= d; ++i) r += poly.coeff(i) * Int(seq[j + i]);
        res.push_back(r);
    }
    return res;
}

} // namespace kf
