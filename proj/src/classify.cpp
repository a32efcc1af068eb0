#include "kf/classify.hpp"

#include <random>

#include "kf/errors.hpp"

namespace kf {

std::string CaseLabel::name() const {
    switch (kind) {
        case CaseKind::Even1: return "Even1";
        case CaseKind::Even2: return "Even2";
        case CaseKind::Odd1: return "Odd1";
        case CaseKind::Odd2: return "Odd2";
        case CaseKind::Odd3: return "Odd3";
        case CaseKind::Odd4: return "Odd4";
        case CaseKind::Odd5: return "Odd5";
        case CaseKind::Odd6: return "Odd6";
    }
    return "?";
}

Rat L(int j, const MapParams& params) {
    return L_linear(params.n, j, params.a);
}

int find_h(const MapParams& params) {
    if (params.n % 2 == 0 || params.n < 3) throw DomainError("h is defined for odd n >= 3");
    int h = 0; // L_0 vanishes identically
    for (int j = 1; j <= params.n - 2; ++j) {
        if (L(j, params) != 0) break;
        h = j;
    }
    return h;
}

std::optional<int> detect_m(const Rat& a0) {
    if (a0 == 0) return std::nullopt;
    Rat m = 2 / a0 - 1;
    if (!is_integer(m) || m < 0) return std::nullopt;
    return (int)m.get_num().get_si();
}

std::optional<int> detect_l(const Rat& a0, int n) {
    // a_0 = (n+1)/2 + l/(2(l+1))  <=>  l/(l+1) = 2a_0 - (n+1) =: r, l = r/(1-r)
    Rat r = 2 * a0 - (n + 1);
    if (r == 1) return std::nullopt;
    Rat l = r / (1 - r);
    if (!is_integer(l) || l < 0) return std::nullopt;
    return (int)l.get_num().get_si();
}

CaseLabel classify(const MapParams& params) {
    const int n = params.n;
    const Rat& a0 = params.a[0];
    if (n % 2 == 0) {
        if (auto m = detect_m(a0)) return {CaseKind::Even2, n, -1, *m, -1};
        return {CaseKind::Even1, n};
    }
    const int h = find_h(params);
    const auto m = detect_m(a0);
    if (h < n - 2) {
        if (m) return {CaseKind::Odd2, n, h, *m, -1};
        return {CaseKind::Odd1, n, h, -1, -1};
    }
    const auto l = detect_l(a0, n);
    if (!m && !l) return {CaseKind::Odd3, n};
    if (m && !l) return {CaseKind::Odd4, n, -1, *m, -1};
    if (!m && l) return {CaseKind::Odd5, n, -1, -1, *l};
    return {CaseKind::Odd6, n};
}

IntPoly predicted_charpoly(const CaseLabel& label) {
    const int n = label.n;
    auto cubic = [&](Int lin) {
        // x^3 - n x^2 - lin*x - 1
        return IntPoly{Int(-1), -lin, Int(-n), Int(1)};
    };
    switch (label.kind) {
        case CaseKind::Even1:
            return IntPoly{Int(-1), Int(-(n + 1)), Int(1)};
        case CaseKind::Even2: {
            IntPoly quad{Int(-1), Int(-(n + 1)), Int(1)};
            return quad.shifted(2 * label.m + 1) + IntPoly{Int(n), Int(0), Int(1)};
        }
        case CaseKind::Odd1:
            return cubic(Int(n + 1 - label.h));
        case CaseKind::Odd2: {
            IntPoly head = cubic(Int(n - label.h + 1)).shifted(2 * label.m + 1);
            return head + IntPoly{Int(n - label.h - 1), Int(n), Int(1), Int(1)};
        }
        case CaseKind::Odd3:
            return cubic(2);
        case CaseKind::Odd4:
            return cubic(2).shifted(2 * label.m) + IntPoly{Int(n), Int(1), Int(1)};
        case CaseKind::Odd5:
            return cubic(2).shifted(2 * label.l + 2) + IntPoly{Int(1), Int(1), Int(n)};
        case CaseKind::Odd6:
            throw NoPolynomialForCase6();
    }
    throw UnsupportedCase("unknown case");
}

RootInterval predicted_delta(const CaseLabel& label, const Rat& width) {
    if (label.kind == CaseKind::Odd6) return {Rat(1), Rat(1)};
    return largest_real_root(predicted_charpoly(label), width);
}

bool has_automorphism(const MapParams& params) {
    return params.n == 3 && params.a[2] == params.a[3] && params.a[0] == 2;
}

ClassifierReport classifier_report(const MapParams& params, const Rat& width) {
    ClassifierReport rep{classify(params), std::nullopt, {Rat(1), Rat(1)}, false};
    if (rep.label.kind != CaseKind::Odd6) rep.poly = predicted_charpoly(rep.label);
    rep.delta = predicted_delta(rep.label, width);
    rep.automorphism = has_automorphism(params);
    return rep;
}

namespace {

Rat a0_for(const CaseLabel& t) {
    switch (t.kind) {
        case CaseKind::Even2:
        case CaseKind::Odd2:
        case CaseKind::Odd4:
            return make_rat(2, 1 + t.m);
        case CaseKind::Odd5:
            return Rat(t.n + 1) / 2 + make_rat(t.l, 2 * (t.l + 1));
        case CaseKind::Odd6:
            return 2;
        default:
            // avoids both arithmetic conditions for every n in range
            return 5;
    }
}

} // namespace

MapParams witness_params(const CaseLabel& target, std::uint64_t seed) {
    const int n = target.n;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(1, 9);
    const Rat a0 = a0_for(target);

    if (target.even()) {
        std::vector<Rat> a(n + 1);
        a[0] = a0;
        for (int j = 1; j <= n; ++j) a[j] = Rat(dist(rng));
        return MapParams(n, std::move(a));
    }

    const int h = (target.kind == CaseKind::Odd1 || target.kind == CaseKind::Odd2) ? target.h
                                                                                   : n - 2;
    if (h < 0 || h > n - 2 || (h < n - 2 && h % 2 != 0))
        throw DomainError("witness: h must be even when below n-2");

    // Solve the forced odd-index equations in the reversed variables, then
    // break the next equation when the tower must stop at h.
    std::vector<Rat> b(n + 1, Rat(0));
    for (int i = 0; i <= n - 1; i += 2) b[i] = Rat(dist(rng));
    const int m_top = h == n - 2 ? n - 2 : h - 1; // largest forced odd index
    for (int j = 1; j <= m_top; j += 2) {
        b[j] = 0;
        b[j] = eq_residual(n, j, b) / 2;
    }
    if (h < n - 2) {
        // L_{h+1} != 0: shift b_{h+1} off its solving value (h+1 is odd)
        b[h + 1] = 0;
        b[h + 1] = eq_residual(n, h + 1, b) / 2 + 1;
    }
    b[n] = a0;
    std::vector<Rat> a(n + 1);
    for (int i = 0; i <= n; ++i) a[n - i] = b[i];
    MapParams params(n, std::move(a));
    if (!(classify(params) == target)) throw DomainError("witness construction missed the case");
    return params;
}

} // namespace kf
