// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Everything here is an exact algebraic check except the two stated loose
// ratio tolerances.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "kf/classify.hpp"
#include "kf/errors.hpp"
#include "kf/linsys.hpp"
#include "kf/localcharts.hpp"
#include "kf/mapcore.hpp"
#include "kf/picard.hpp"
#include "kf/roots.hpp"

using namespace kf;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

const Rat kWidth = make_rat(1, 1000000000000L);

struct Fixture {
    std::string name;
    MapParams params;
};

std::vector<Fixture> degree_fixtures() {
    return {
        {"Even1 n=2", MapParams(2, {Rat(5), Rat(0), Rat(1)})},
        {"Even2 m=0", MapParams(2, {Rat(2), Rat(1), Rat(1)})},
        {"Even2 m=1", MapParams(2, {Rat(1), Rat(1), Rat(1)})},
        {"Odd1 h=0 n=3", MapParams(3, {Rat(5), Rat(1), Rat(2), Rat(1)})},
        {"Odd3 n=3", MapParams(3, {Rat(5), Rat(1), Rat(1), Rat(1)})},
    };
}

// ---------------------------------------------------------------------- 1, 2

void criteria_1_and_2() {
    bool pass1 = true, pass2 = true;
    std::string note1, note2;
    for (const auto& [name, params] : degree_fixtures()) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<long> d = degree_sequence(params, 8, ArithmeticMode::prime_field, 2024);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CaseLabel label = classify(params);
        IntPoly predicted = predicted_charpoly(label);

        // exact integer-zero residuals for the predicted characteristic
        // polynomial; the unit factors printed next to the dominant part
        // (powers of x, x-1, x+1) are searched for and must also divide the
        // cofactor of the full pull-back matrix
        auto cof = minimal_unit_annihilator(predicted, d);
        bool ok = cof.has_value() && secs < 300.0;
        if (ok) {
            IntPoly mat_cof =
                div_exact_int(charpoly_pullback(build_pullback(label)), predicted);
            ok = divides(*cof, mat_cof);
        }
        pass1 = pass1 && ok;
        note1 += name + (ok ? " ok" : " FAIL") +
                 (cof && cof->deg() > 0 ? "(units " + cof->str() + ")" : "") + "; ";

        // delta within 15% of d_8/d_7
        RootInterval delta = predicted_delta(label, kWidth);
        Rat ratio = make_rat(d[8], d[7]);
        bool near = delta.hi >= ratio * make_rat(17, 20) && delta.lo <= ratio * make_rat(23, 20);
        pass2 = pass2 && near;
        note2 += name + (near ? " ok" : " FAIL") + "; ";
    }
    report(1, pass1, "degree recurrence reproduction: " + note1);
    report(2, pass2, "delta vs d8/d7 within 15%: " + note2);
}

// ------------------------------------------------------------------------- 3

void criterion_3() {
    std::vector<CaseLabel> cases;
    for (int n : {2, 4, 6}) {
        cases.push_back({CaseKind::Even1, n});
        for (int m : {0, 1, 2}) cases.push_back({CaseKind::Even2, n, -1, m, -1});
    }
    for (int n : {3, 5, 7}) {
        for (int h = 0; h < n - 2; h += 2) {
            cases.push_back({CaseKind::Odd1, n, h});
            for (int m : {0, 1, 2}) cases.push_back({CaseKind::Odd2, n, h, m, -1});
        }
        cases.push_back({CaseKind::Odd3, n});
        for (int m : {0, 1, 2})
            if (!(n == 3 && m == 0)) cases.push_back({CaseKind::Odd4, n, -1, m, -1});
        for (int l : {0, 1, 2})
            if (!(n == 3 && l == 0)) cases.push_back({CaseKind::Odd5, n, -1, -1, l});
    }
    bool pass = true;
    int checked = 0;
    for (const auto& label : cases) {
        IntPoly full = charpoly_pullback(build_pullback(label));
        IntPoly predicted = predicted_charpoly(label);
        bool ok = divides(predicted, full) && is_unit_cofactor(div_exact_int(full, predicted));
        if (!ok) std::printf("  criterion 3 mismatch at %s n=%d\n", label.name().c_str(), label.n);
        pass = pass && ok;
        ++checked;
    }

    // the two matrices printed verbatim, entry by entry
    {
        IntMatrix m = restricted_action(build_pullback({CaseKind::Odd1, 5, 0}),
                                        {lab_H(), lab_Q(), lab_P(3), lab_P(5)});
        long expect[4][4] = {{11, -6, -18, -25}, {1, -1, -3, -4}, {0, 0, 0, 1}, {2, -1, -3, -5}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) pass = pass && m(i, j) == expect[i][j];
    }
    {
        IntMatrix m = restricted_action(build_pullback({CaseKind::Odd3, 3}),
                                        {lab_H(), lab_Q(), lab_P(4), lab_P(5), lab_E2()});
        long expect[5][5] = {{7, -4, -10, -10, -3},
                             {1, -1, -2, -2, 0},
                             {1, -1, -3, -3, -1},
                             {1, 0, 0, 0, 0},
                             {0, 0, 0, 1, 0}};
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) pass = pass && m(i, j) == expect[i][j];
    }
    report(3, pass,
           "matrix char polys equal printed forms up to unit factors (" + std::to_string(checked) +
               " cases) and both verbatim blocks match");
}

// ------------------------------------------------------------------------- 4

void criterion_4() {
    bool pass = true;
    std::string note;
    for (int m : {0, 1, 2}) {
        MapParams params(2, {make_rat(2, m + 1), Rat(3), Rat(1)});
        const long v = 3; // transversal at the C_4 point [1+v : 1 : v(1+v)]
        ParamArc arc = ParamArc::make(RatPoly::constant(Rat(1 + v)), RatPoly{Rat(1), Rat(1)},
                                      RatPoly::constant(Rat(v) * Rat(1 + v)));
        auto orbit = orbit_arc(params, arc, 2 * m + 1);
        bool ok = (int)orbit.size() == 2 * m + 1;
        for (int j = 0; ok && j + 1 < (int)orbit.size(); ++j)
            ok = !(orbit[j].second == ProjPoint::e01());
        ok = ok && orbit.back().second == ProjPoint::e01();
        for (const auto& [a, base] : orbit) ok = ok && base.x[2] == 0; // all bases on C_3
        for (int j = 1; ok && j < (int)orbit.size(); j += 2)
            ok = orbit[j].second == ProjPoint::e1(); // even steps over e_1
        pass = pass && ok;
        note += "m=" + std::to_string(m) + (ok ? " lands at " + std::to_string(2 * m + 1) : " FAIL") + "; ";
    }
    report(4, pass, "exceptional orbit lands at [1:1:0] at step 2m+1: " + note);
}

// ------------------------------------------------------------------------- 5

void criterion_5() {
    bool pass = true;
    // a_3 = a_2 = 1 as in the printed chart formulas; a_1 = 3, a_0 = 7 generic
    MapParams p(3, {Rat(7), Rat(3), Rat(1), Rat(1)});
    ChartSystem sys(p);
    auto check_map = [&](const ChartSpec& from, const std::string& target, MobiusMap expect) {
        auto [m, t] = sample_fiber_map(sys, from, Direction::forward);
        bool ok = t == target && m.proportional_to(expect);
        if (!ok) std::printf("  criterion 5 mismatch on %s -> %s\n", from.name.c_str(), target.c_str());
        pass = pass && ok;
    };
    check_map(sys.first_tower(1), "P3", MobiusMap{{Rat(-1), Rat(-1), Rat(1), Rat(0)}});
    check_map(sys.second_tower(1), "P1", MobiusMap{{Rat(0), Rat(1), Rat(-1), Rat(-1)}});
    check_map(sys.second_tower(2), "C1", MobiusMap{{Rat(0), Rat(1), Rat(1), p.a[1] - 1}});
    check_map(sys.c1_chart(), "P4", MobiusMap{{1 - p.a[1], Rat(1), Rat(1), Rat(0)}});

    // E_2 double step u -> u + 2 a_0 - 5 and the first landing of C_2
    for (long u : {2, 4}) {
        ChartPoint mid = sys.limit(sys.e2_chart(), Rat(u), Direction::forward);
        ChartPoint back = sys.limit(sys.second_tower(3), mid.value, Direction::forward);
        pass = pass && mid.chart == "P5" && back.chart == "E2" &&
               back.value == Rat(u) + 2 * p.a[0] - 5;
    }
    ChartPoint c2img = sys.limit(sys.c2_transversal(), Rat(5), Direction::forward);
    ChartPoint land = sys.limit(sys.second_tower(3), c2img.value, Direction::forward);
    pass = pass && c2img.chart == "P5" && land.chart == "E2" && land.value == 2 * p.a[0] - 4;

    // the landing condition solves to a_0 = 2 + l/(2(l+1))
    for (int l : {0, 1, 2}) {
        Rat a0 = Rat(2) + make_rat(l, 2 * (l + 1));
        MapParams q(3, {a0, Rat(3), Rat(1), Rat(1)});
        pass = pass && orbit_condition_odd(q) == l && detect_l(a0, 3) == l;
    }
    MapParams q5(3, {Rat(5), Rat(3), Rat(1), Rat(1)});
    pass = pass && !orbit_condition_odd(q5).has_value();

    report(5, pass, "n=3 chart suite: printed fiber maps, translation step, landing condition");
}

// ------------------------------------------------------------------------- 6

void criterion_6() {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> num(-10, 10), den(1, 6);
    bool p1 = true;
    for (int t = 0; t < 100; ++t) {
        int n = 3 + (int)(rng() % 13);
        int m = 1 + 2 * (int)(rng() % ((n - 1) / 2));
        std::vector<Rat> fr((m + 1) / 2);
        for (auto& v : fr) v = make_rat(num(rng), den(rng));
        auto sol = solve_odd_system(n, m, fr);
        p1 = p1 && check_even_implied(sol);
    }
    IdentityReport rep = claim2_identities(21); // series checked to order 44
    bool p2 = true;
    for (int n : {3, 5, 7})
        for (int t = 0; t < 50; ++t) {
            std::vector<Rat> fr((n + 1) / 2);
            for (auto& v : fr) v = make_rat(num(rng), den(rng));
            p2 = p2 && alternating_sum_check(n, solve_L_kernel(n, fr, make_rat(num(rng), den(rng))));
        }
    report(6, p1 && rep.pass() && p2,
           "linear-system identities: odd implies even (100x), series match to order 44, "
           "ratio and sum identities to m=21, alternating sum (150x)");
}

// ------------------------------------------------------------------------- 7

void criterion_7() {
    bool pass = true;
    std::mt19937_64 rng(7);

    // ep_0 = ip_0 = 1/a_n on random parameters
    for (int t = 0; t < 20; ++t) {
        int n = 3 + 2 * (int)(rng() % 3);
        std::vector<Rat> a(n + 1);
        for (auto& v : a) v = make_rat((long)(rng() % 19) - 9, (long)(rng() % 4) + 1);
        if (a[n] == 0) a[n] = 1;
        MapParams p(n, a);
        TowerCoeffs tc = ep_ip_sequence(p, 1);
        pass = pass && tc.ep[0] == 1 / a[n] && tc.ip[0] == 1 / a[n];
        pass = pass && ((tc.ep[1] == tc.ip[1]) == (L(1, p) == 0));
    }

    // equivalence of the tower extension with the vanishing linear functions
    for (int n : {5, 7}) {
        for (int t : {0, 2}) {
            if (t >= n - 2) continue;
            MapParams p = witness_params({CaseKind::Odd1, n, t}, 700 + n + t);
            TowerCoeffs tc = ep_ip_sequence(p, t + 1);
            for (int j = 1; j <= t; ++j) pass = pass && tc.ep[j] == tc.ip[j] && L(j, p) == 0;
            pass = pass && tc.ep[t + 1] != tc.ip[t + 1] && L(t + 1, p) != 0;
        }
        MapParams p = witness_params({CaseKind::Odd3, n}, 730 + n);
        TowerCoeffs tc = ep_ip_sequence(p, n - 2);
        for (int j = 1; j <= n - 2; ++j) pass = pass && tc.ep[j] == tc.ip[j] && L(j, p) == 0;
    }

    // d_n - gamma_n = 2 a_0 under the h = n-2 conditions
    for (int n : {3, 5, 7}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> fr((n + 1) / 2);
            for (auto& v : fr) v = Rat((long)(rng() % 9) + 1);
            Rat a0 = make_rat((long)(rng() % 17) + 1, (long)(rng() % 3) + 1);
            MapParams p(n, solve_L_kernel(n, fr, a0));
            pass = pass && coeff_d(p, n) - coeff_gamma(p, n) == 2 * a0;
        }
    }
    report(7, pass, "tower coefficients: base values, blocking equivalence, d_n - gamma_n = 2a_0");
}

// ------------------------------------------------------------------------- 8

void criterion_8() {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    bool pass = true;
    int positives = 0;
    for (int t = 0; t < 10000; ++t) {
        int n = t % 25 == 0 ? 3 : 2 + (int)(rng() % 4);
        std::vector<Rat> a(n + 1);
        for (auto& v : a) v = make_rat(num(rng), den(rng));
        if (a[n] == 0) a[n] = 1;
        if (n == 3) {
            if (t % 50 == 0) { a[2] = a[3]; a[0] = 2; } // plant true positives
            else if (t % 25 == 0) a[0] = 2;             // and near misses on a_0
            else if (t % 70 == 0) a[2] = a[3];          // and on the h condition
        }
        MapParams p(n, a);
        bool expected = n == 3 && a[2] == a[3] && a[0] == 2;
        bool got = has_automorphism(p);
        bool via_case = classify(p).kind == CaseKind::Odd6;
        if (got != expected || via_case != expected) pass = false;
        if (got) ++positives;
    }
    pass = pass && positives >= 200;

    // subexponential growth of the automorphism family
    MapParams odd6(3, {Rat(2), Rat(1), Rat(1), Rat(1)});
    auto d = degree_sequence(odd6, 10, ArithmeticMode::prime_field, 88);
    bool slow = 2 * d[10] <= 3 * d[9]; // d_10/d_9 <= 1.5
    pass = pass && slow;
    report(8, pass,
           "automorphism exactly on (n=3, a_2=a_3, a_0=2) over 10^4 samples (" +
               std::to_string(positives) + " positives); d10/d9 = " + std::to_string(d[10]) + "/" +
               std::to_string(d[9]));
}

} // namespace

int main() {
    criteria_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
