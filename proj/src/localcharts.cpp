#include "kf/localcharts.hpp"

#include "kf/classify.hpp"
#include "kf/errors.hpp"

namespace kf {

namespace {

// s^n F(-1-1/s) = sum_i a_i (-1)^i (s+1)^i s^{n-i}
RatPoly d_polynomial(const MapParams& params) {
    RatPoly acc;
    const RatPoly splus1{Rat(1), Rat(1)};
    for (int i = 0; i <= params.n; ++i) {
        Rat c = (i % 2 == 0) ? params.a[i] : -params.a[i];
        acc += (c * splus1.pow(i)).shifted(params.n - i);
    }
    return acc;
}

// -(1+s) s^n F(1/s) = -(1+s) sum_i a_i s^{n-i}
RatPoly gamma_polynomial(const MapParams& params) {
    std::vector<Rat> rev(params.n + 1);
    for (int i = 0; i <= params.n; ++i) rev[params.n - i] = params.a[i];
    return -(RatPoly{Rat(1), Rat(1)} * RatPoly(std::move(rev)));
}

// rational function of s with exact limit at s = 0
struct RatFun {
    RatPoly num, den;

    RatFun() : num{}, den{Rat(1)} {}
    RatFun(RatPoly n, RatPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
    }
    static RatFun constant(const Rat& v) { return {RatPoly::constant(v), RatPoly::constant(Rat(1))}; }

    RatFun operator+(const RatFun& o) const { return {num * o.den + o.num * den, den * o.den}; }
    RatFun operator-(const RatFun& o) const { return {num * o.den - o.num * den, den * o.den}; }
    RatFun operator*(const RatFun& o) const { return {num * o.num, den * o.den}; }
    RatFun operator/(const RatFun& o) const {
        if (o.num.is_zero()) throw DomainError("division by the zero function");
        return {num * o.den, den * o.num};
    }
    RatFun pow(int e) const {
        RatFun r = constant(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // limit at s=0 after cancelling the common s-power; absent = infinite
    std::optional<Rat> limit0() const {
        if (num.is_zero()) return Rat(0);
        int on = 0, od = 0;
        while (num.coeff(on) == 0) ++on;
        while (den.coeff(od) == 0) ++od;
        const int k = std::min(on, od);
        if (on - k > 0) return Rat(0);
        if (od - k > 0) return std::nullopt;
        return num.coeff(on) / den.coeff(od);
    }
};

} // namespace

Rat coeff_d(const MapParams& params, int j) {
    if (j < 0 || j > params.n) throw IndexError("coefficient index outside [0, n]");
    return d_polynomial(params).coeff(j);
}

Rat coeff_gamma(const MapParams& params, int j) {
    if (j < 0 || j > params.n) throw IndexError("coefficient index outside [0, n]");
    return gamma_polynomial(params).coeff(j);
}

Rat coeff_c(const MapParams& params, int j, const std::vector<Rat>& prefix) {
    if (j < 1 || (int)prefix.size() != j) throw IndexError("prefix must hold levels 0..j-1");
    auto sample = [&](const Rat& u) {
        TruncatedSeries den(j);
        for (int i = 0; i < j; ++i) den.coeff(i) = prefix[i];
        den.coeff(j) = u;
        TruncatedSeries ones(j);
        ones.coeff(0) = 1;
        if (j >= 1) ones.coeff(1) = 1;
        return series_mul(ones, series_inverse(den)).coeff(j);
    };
    const Rat an2 = params.a[params.n] * params.a[params.n];
    Rat w1 = sample(1), w2 = sample(2);
    Rat c = w1 + an2;
    if (w2 + 2 * an2 != c) throw DomainError("coefficient is not affine with slope -a_n^2");
    return c;
}

TowerCoeffs ep_ip_sequence(const MapParams& params, int jmax) {
    if (jmax < 0 || jmax > params.n - 1) throw IndexError("tower levels run up to n-1");
    TowerCoeffs t;
    const Rat ep0 = 1 / params.a[params.n];
    t.ep.push_back(ep0);
    t.ip.push_back(ep0);
    const Rat an2 = params.a[params.n] * params.a[params.n];
    const RatPoly dpoly = d_polynomial(params);
    const RatPoly gpoly = gamma_polynomial(params);
    for (int j = 1; j <= jmax; ++j) {
        Rat c = coeff_c(params, j, t.ip);
        t.ip.push_back((c + dpoly.coeff(j)) / an2);
        t.ep.push_back((gpoly.coeff(j) + c) / an2);
        if (j < jmax && t.ip[j] != t.ep[j]) throw SequenceBlocked(j);
    }
    return t;
}

OddTopStage odd_top_stage(const MapParams& params) {
    const int n = params.n;
    if (n % 2 == 0) throw DomainError("top stage exists for odd n only");
    TowerCoeffs t = ep_ip_sequence(params, n - 1);
    for (int j = 1; j <= n - 2; ++j)
        if (t.ep[j] != t.ip[j]) throw SequenceBlocked(j);
    OddTopStage top;
    top.ep = t.ep; // ep_{n-1} may differ from ip_{n-1}; the ep value is the one used
    top.c_n = coeff_c(params, n, top.ep);
    top.d_n = coeff_d(params, n);
    top.gamma_n = coeff_gamma(params, n);
    const Rat an2 = params.a[n] * params.a[n];
    top.ep_n = (top.c_n + top.gamma_n) / an2;
    return top;
}

// ---------------------------------------------------------------------------
// Chart system

ChartSystem::ChartSystem(MapParams params) : params_(std::move(params)) {
    const int n = params_.n;
    if (n % 2 == 1) {
        const int h = find_h(params_);
        if (h < n - 2) {
            depth2_ = h + 1;
            TowerCoeffs t = ep_ip_sequence(params_, h);
            centers_ = t.ip; // 0..h
        } else {
            depth2_ = n;
            OddTopStage top = odd_top_stage(params_);
            centers_ = top.ep; // 0..n-1
        }
    }
    if (detect_m(params_.a[0])) r0_x1_ = params_.a[0] - 1;
}

ChartSpec ChartSystem::first_tower(int j) const {
    if (j < 1 || j > params_.n - 1) throw IndexError("first-tower charts are P_1..P_{n-1}");
    return {"P" + std::to_string(j), [j](const Rat& u) {
                return std::array<RatPoly, 3>{RatPoly::monomial(j + 1, u), RatPoly::constant(Rat(1)),
                                              RatPoly::monomial(j, u)};
            }};
}

ChartSpec ChartSystem::second_tower(int j) const {
    if (j < 1 || j > depth2_) throw IndexError("second-tower chart level not registered");
    const int n = params_.n;
    std::vector<Rat> prefix(centers_.begin(), centers_.begin() + j);
    return {"P" + std::to_string(n - 1 + j), [n, j, prefix](const Rat& u) {
                std::vector<Rat> w(j + 1);
                for (int i = 0; i < j; ++i) w[i] = prefix[i];
                w[j] = u;
                RatPoly wp{std::vector<Rat>(w)};
                return std::array<RatPoly, 3>{wp.shifted(n), RatPoly::constant(Rat(1)),
                                              wp.shifted(n - 1)};
            }};
}

ChartSpec ChartSystem::e2_chart() const {
    // the s^2 term keeps the transversal out of C_2, which contains the
    // straight arc at u = 1; the pinned fiber point is the same
    return {"E2", [](const Rat& u) {
                return std::array<RatPoly, 3>{RatPoly{Rat(0), Rat(1)}, RatPoly{Rat(0), u, Rat(1)},
                                              RatPoly::constant(Rat(1))};
            }};
}

ChartSpec ChartSystem::c1_chart() const {
    return {"C1", [](const Rat& u) {
                return std::array<RatPoly, 3>{RatPoly{Rat(0), Rat(1)}, RatPoly::constant(Rat(1)),
                                              RatPoly::constant(u)};
            }};
}

ChartSpec ChartSystem::r0_chart() const {
    if (!r0_x1_) throw UnsupportedCase("R_0 chart requires a_0 = 2/(m+1)");
    const Rat base = *r0_x1_;
    return {"R0", [base](const Rat& u) {
                return std::array<RatPoly, 3>{RatPoly::constant(Rat(1)), RatPoly{base, u},
                                              RatPoly{Rat(0), Rat(1)}};
            }};
}

ChartSpec ChartSystem::c2_transversal() const {
    return {"C2t", [](const Rat& u) {
                return std::array<RatPoly, 3>{RatPoly::constant(Rat(1)), RatPoly{Rat(1), Rat(1)},
                                              RatPoly::constant(u)};
            }};
}

ChartSpec ChartSystem::c4_transversal() const {
    return {"C4t", [](const Rat& u) {
                return std::array<RatPoly, 3>{RatPoly::constant(1 + u), RatPoly{Rat(1), Rat(1)},
                                              RatPoly::constant(u * (1 + u))};
            }};
}

ChartPoint ChartSystem::limit(const ChartSpec& chart, const Rat& u, Direction dir) const {
    auto arc = chart.arc(u);
    if (arc[0].is_zero() && arc[1].is_zero() && arc[2].is_zero())
        throw PoleAtU("chart arc degenerates at this u");
    std::array<RatPoly, 3> img;
    try {
        img = dir == Direction::forward
                  ? detail::push_forward_cleared<Rat>(params_.a, params_.n, arc)
                  : detail::push_inverse_cleared<Rat>(params_.a, params_.n, arc);
    } catch (const ArcCollapse&) {
        throw PoleAtU("chart arc is contracted entirely");
    }

    const std::array<Rat, 3> base{img[0].coeff(0), img[1].coeff(0), img[2].coeff(0)};
    const bool at_e1 = base[0] == 0 && base[2] == 0;
    const bool at_e2 = base[0] == 0 && base[1] == 0;

    if (at_e2) {
        auto v = RatFun(img[1], img[0]).limit0();
        if (!v) return {"E2", true, Rat(0), std::nullopt};
        return {"E2", false, *v, std::nullopt};
    }
    if (at_e1) {
        const int n = params_.n;
        RatFun X(img[0], img[1]), Z(img[2], img[1]);
        RatFun W = Z.pow(n) / X.pow(n - 1);
        RatFun s = X / Z;
        auto w0 = W.limit0();
        if (!w0) {
            for (int j = 1; j <= n - 2; ++j) {
                auto v = (Z.pow(j + 1) / X.pow(j)).limit0();
                if (v && *v != 0) return {"P" + std::to_string(j), false, *v, std::nullopt};
            }
            throw AmbiguousTarget("limit over e_1 lies in no registered chart");
        }
        if (depth2_ == 0 || *w0 != centers_[0])
            return {"P" + std::to_string(n - 1), false, *w0, std::nullopt};
        RatFun r = W;
        for (int j = 1; j <= depth2_; ++j) {
            r = (r - RatFun::constant(centers_[j - 1])) / s;
            auto v = r.limit0();
            if (!v) throw AmbiguousTarget("arc stops between tower levels");
            if (j == depth2_ || *v != centers_[j])
                return {"P" + std::to_string(n - 1 + j), false, *v, std::nullopt};
        }
        throw AmbiguousTarget("fell off the registered tower");
    }
    if (r0_x1_ && base[0] != 0 && base[1] / base[0] == *r0_x1_ && base[2] == 0) {
        auto v = RatFun(img[1] - *r0_x1_ * img[0], img[2]).limit0();
        if (!v) return {"R0", true, Rat(0), std::nullopt};
        return {"R0", false, *v, std::nullopt};
    }
    if (base[0] == 0) {
        // on C_1 away from e_1, e_2
        return {"C1", false, base[2] / base[1], std::nullopt};
    }
    return {"plane", false, Rat(0), ProjPoint(base[0], base[1], base[2])};
}

// ---------------------------------------------------------------------------
// Moebius maps

std::optional<Rat> MobiusMap::apply(const Rat& u) const {
    Rat den = m[2] * u + m[3];
    if (den == 0) return std::nullopt;
    return (m[0] * u + m[1]) / den;
}

bool MobiusMap::proportional_to(const MobiusMap& o) const {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (m[i] * o.m[j] != m[j] * o.m[i]) return false;
    return true;
}

MobiusMap mobius_reconstruct(const std::array<std::pair<Rat, std::optional<Rat>>, 3>& samples) {
    // rows of the homogeneous system in (a, b, c, d)
    std::vector<std::array<Rat, 4>> rows;
    for (const auto& [u, val] : samples) {
        if (val)
            rows.push_back({u, Rat(1), -(*val) * u, -(*val)});
        else
            rows.push_back({Rat(0), Rat(0), u, Rat(1)});
    }
    // Gaussian elimination to row echelon form
    int rank = 0;
    std::array<int, 4> pivot_col{-1, -1, -1, -1};
    for (int col = 0; col < 4 && rank < 3; ++col) {
        int piv = -1;
        for (int r = rank; r < 3; ++r)
            if (rows[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rat f = rows[r][col] / rows[rank][col];
            for (int c = 0; c < 4; ++c) rows[r][c] -= f * rows[rank][c];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank != 3) throw DegenerateSamples("samples do not determine a unique map");
    // free column = the one that is not a pivot
    int free_col = 0;
    for (int c = 0; c < 4; ++c)
        if (c != pivot_col[0] && c != pivot_col[1] && c != pivot_col[2]) free_col = c;
    std::array<Rat, 4> sol{};
    sol[free_col] = 1;
    for (int r = 2; r >= 0; --r) {
        Rat acc = 0;
        for (int c = pivot_col[r] + 1; c < 4; ++c) acc += rows[r][c] * sol[c];
        sol[pivot_col[r]] = -acc / rows[r][pivot_col[r]];
    }
    MobiusMap map{sol};
    if (map.m[0] * map.m[3] - map.m[1] * map.m[2] == 0)
        throw DegenerateSamples("reconstructed map is singular");
    return map;
}

std::pair<MobiusMap, std::string> sample_fiber_map(const ChartSystem& sys, const ChartSpec& from,
                                                   Direction dir) {
    std::array<std::pair<Rat, std::optional<Rat>>, 3> samples;
    std::string target;
    int got = 0;
    for (long uu = 1; uu <= 24 && got < 3; ++uu) {
        try {
            ChartPoint p = sys.limit(from, Rat(uu), dir);
            if (p.chart == "plane") continue;
            if (target.empty()) target = p.chart;
            if (p.chart != target) continue;
            samples[got++] = {Rat(uu), p.infinite ? std::nullopt : std::optional<Rat>(p.value)};
        } catch (const Error&) {
            continue;
        }
    }
    if (got < 3) throw DegenerateSamples("could not collect three fiber samples");
    return {mobius_reconstruct(samples), target};
}

std::optional<int> orbit_condition_odd(const MapParams& params) {
    if (params.n % 2 == 0) throw DomainError("landing condition applies to odd n");
    // 2 a_0 (l+1) - (n+1)(l+1) - l = 0  <=>  l (2 a_0 - n - 2) = (n+1) - 2 a_0
    const Rat a0 = params.a[0];
    Rat denom = 2 * a0 - params.n - 2;
    if (denom == 0) return std::nullopt;
    Rat l = (Rat(params.n + 1) - 2 * a0) / denom;
    if (!is_integer(l) || l < 0) return std::nullopt;
    return (int)l.get_num().get_si();
}

} // namespace kf
