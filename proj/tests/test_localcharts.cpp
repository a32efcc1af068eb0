#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kf/classify.hpp"
#include "kf/errors.hpp"
#include "kf/localcharts.hpp"

using namespace kf;

namespace {

MapParams params_from_longs(int n, std::initializer_list<long> coeffs) {
    std::vector<Rat> a;
    for (long c : coeffs) a.push_back(Rat(c));
    return MapParams(n, std::move(a));
}

// n = 3 with a_3 = a_2 = 1, a_1 = 3, a_0 = 7: the tower reaches e_2 and no
// landing condition holds
MapParams n3_suite() { return params_from_longs(3, {7, 3, 1, 1}); }

MobiusMap from_rows(long a, long b, long c, long d) {
    return MobiusMap{{Rat(a), Rat(b), Rat(c), Rat(d)}};
}

} // namespace

TEST_CASE("series coefficients d_j and gamma_j") {
    MapParams p = params_from_longs(3, {3, 7, 2, 5});
    CHECK(coeff_d(p, 0) == -5);   // (-1)^n a_n
    CHECK(coeff_gamma(p, 0) == -5);
    CHECK(coeff_d(p, 1) == -3 * 5 + 2);       // -n a_n + a_{n-1}
    CHECK(coeff_gamma(p, 1) == -(2 + 5));     // -(a_{n-1} + a_n)
    CHECK(coeff_d(p, 3) == p.F(-1));
    CHECK(coeff_gamma(p, 3) == -(p.a[0] + p.a[1]));
    CHECK_THROWS_AS(coeff_d(p, 4), IndexError);
    CHECK_THROWS_AS(coeff_gamma(p, -1), IndexError);
}

TEST_CASE("d_n - gamma_n = 2 a_0 on the h = n-2 families") {
    std::mt19937_64 rng(3);
    for (int n : {3, 5, 7}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> fr((n + 1) / 2);
            for (auto& v : fr) v = Rat((long)(rng() % 9) + 1);
            Rat a0 = make_rat((long)(rng() % 17) + 1, (long)(rng() % 3) + 1);
            MapParams p(n, solve_L_kernel(n, fr, a0));
            CHECK(coeff_d(p, n) - coeff_gamma(p, n) == 2 * a0);
        }
    }
}

TEST_CASE("tower base values and the first level") {
    MapParams p = params_from_longs(5, {2, 3, 1, 4, 7, 2}); // generic n=5
    TowerCoeffs t = ep_ip_sequence(p, 1);
    const Rat an = p.a[5], an2 = an * an;
    CHECK(t.ep[0] == 1 / an);
    CHECK(t.ip[0] == 1 / an);
    CHECK(t.ep[1] == -p.a[4] / an2);
    CHECK(t.ip[1] == (-(5 - 1) * an + p.a[4]) / an2);
    // ep_1 = ip_1 exactly when L_1 = 0
    CHECK((t.ep[1] == t.ip[1]) == (L(1, p) == 0));
}

TEST_CASE("the tower blocks exactly where the linear conditions fail") {
    // L_1 = L_2 = 0 but L_3 != 0 for n = 5
    MapParams p = witness_params({CaseKind::Odd1, 5, 2}, 11);
    REQUIRE(find_h(p) == 2);
    CHECK_THROWS_AS(ep_ip_sequence(p, 4), SequenceBlocked);
    try {
        ep_ip_sequence(p, 4);
    } catch (const SequenceBlocked& e) {
        CHECK(e.level == 3);
    }
    TowerCoeffs t = ep_ip_sequence(p, 3); // mismatch allowed at the last level
    CHECK(t.ep[1] == t.ip[1]);
    CHECK(t.ep[2] == t.ip[2]);
    CHECK(t.ep[3] != t.ip[3]);
}

TEST_CASE("tower equivalence with the vanishing of the linear functions") {
    std::mt19937_64 rng(7);
    for (int n : {5, 7}) {
        for (int t : {0, 2}) {
            if (t >= n - 2) continue;
            MapParams p = witness_params({CaseKind::Odd1, n, t}, 13 + n + t);
            TowerCoeffs tc = ep_ip_sequence(p, t + 1);
            for (int j = 1; j <= t; ++j) CHECK(tc.ep[j] == tc.ip[j]);
            CHECK(tc.ep[t + 1] != tc.ip[t + 1]);
            for (int j = 1; j <= t; ++j) CHECK(L(j, p) == 0);
            CHECK(L(t + 1, p) != 0);
        }
        // h = n-2: every level through n-2 agrees
        MapParams p = witness_params({CaseKind::Odd3, n}, 29 + n);
        TowerCoeffs tc = ep_ip_sequence(p, n - 2);
        for (int j = 1; j <= n - 2; ++j) CHECK(tc.ep[j] == tc.ip[j]);
    }
}

TEST_CASE("chart landing from the first tower (worked n=3 example)") {
    ChartSystem sys(n3_suite());
    ChartPoint pt = sys.limit(sys.first_tower(1), Rat(1), Direction::forward);
    CHECK(pt.chart == "P3");
    CHECK_FALSE(pt.infinite);
    CHECK(pt.value == -2); // -(1 + a_2 u)/(a_3^2 u) at u = 1
}

TEST_CASE("printed fiber maps of the n=3 chart suite") {
    MapParams p = n3_suite(); // a_3 = a_2 = 1, a_1 = 3, a_0 = 7
    ChartSystem sys(p);

    auto [m13, t13] = sample_fiber_map(sys, sys.first_tower(1), Direction::forward);
    CHECK(t13 == "P3");
    CHECK(m13.proportional_to(from_rows(-1, -1, 1, 0))); // u -> -(1+a_2 u)/(a_3^2 u)

    auto [m31, t31] = sample_fiber_map(sys, sys.second_tower(1), Direction::forward);
    CHECK(t31 == "P1");
    CHECK(m31.proportional_to(from_rows(0, 1, -1, -1))); // u -> 1/(-2a_3+a_2-a_3^2 u)

    auto [m4c, t4c] = sample_fiber_map(sys, sys.second_tower(2), Direction::forward);
    CHECK(t4c == "C1");
    CHECK(m4c.proportional_to(from_rows(0, 1, 1, 2))); // u -> 1/(-a_3+a_1+a_3^2 u)

    auto [mc4, tc4] = sample_fiber_map(sys, sys.c1_chart(), Direction::forward);
    CHECK(tc4 == "P4");
    CHECK(mc4.proportional_to(from_rows(-2, 1, 1, 0))); // u -> (1+a_3 u-a_1 u)/(a_3 u)

    // inverse direction inverts the fiber swap
    auto [minv, tinv] = sample_fiber_map(sys, sys.second_tower(1), Direction::inverse);
    CHECK(tinv == "P1");
    MobiusMap inv13{{m13.m[3], -m13.m[1], -m13.m[2], m13.m[0]}};
    CHECK(minv.proportional_to(inv13));
}

TEST_CASE("second landing of the contracted C_2 and the top translation") {
    MapParams p = n3_suite();
    ChartSystem sys(p);
    const Rat a0 = p.a[0], a1 = p.a[1];

    // C_2 contracts to ep_3 in the P_5 chart: -(a_3 - 2a_1 + a_0)/a_3^2
    ChartPoint c2img = sys.limit(sys.c2_transversal(), Rat(4), Direction::forward);
    CHECK(c2img.chart == "P5");
    CHECK(c2img.value == -(1 - 2 * a1 + a0));
    CHECK(c2img.value == odd_top_stage(p).ep_n);

    // the fiber map evaluated at the C_2 point of E_2 gives the same value
    auto [me2, te2] = sample_fiber_map(sys, sys.e2_chart(), Direction::forward);
    CHECK(te2 == "P5");
    CHECK(me2.apply(Rat(1)) == odd_top_stage(p).ep_n);

    // one more step lands on E_2 at 2 a_0 - 4
    ChartPoint step2 = sys.limit(sys.second_tower(3), c2img.value, Direction::forward);
    CHECK(step2.chart == "E2");
    CHECK(step2.value == 2 * a0 - 4);

    // the double step on E_2 is the translation u -> u + 2 a_0 - 5
    for (long u : {2, 3, 5}) {
        ChartPoint mid = sys.limit(sys.e2_chart(), Rat(u), Direction::forward);
        REQUIRE(mid.chart == "P5");
        ChartPoint back = sys.limit(sys.second_tower(3), mid.value, Direction::forward);
        REQUIRE(back.chart == "E2");
        CHECK(back.value == Rat(u) + 2 * a0 - 5);
    }
}

TEST_CASE("general fiber swap between the towers") {
    for (int n : {5, 7}) {
        MapParams p = witness_params({CaseKind::Odd1, n, 2}, 17 + n);
        ChartSystem sys(p);
        REQUIRE(sys.second_tower_depth() == 3);
        TowerCoeffs tc = ep_ip_sequence(p, 3);
        const Rat an2 = p.a[n] * p.a[n];
        const Rat c3 = an2 * tc.ip[3] - coeff_d(p, 3); // c_j from ip_j = (c_j+d_j)/a_n^2
        const Rat sgn = (n - 3) % 2 == 0 ? 1 : -1;     // (-1)^{n-(m+1)}

        auto [fwd, tf] = sample_fiber_map(sys, sys.second_tower(3), Direction::forward);
        CHECK(tf == "P" + std::to_string(n - 4));
        // u -> sgn / (-a_n^2 u + d_3 + c_3)
        MobiusMap expect_fwd{{Rat(0), sgn, -an2, coeff_d(p, 3) + c3}};
        CHECK(fwd.proportional_to(expect_fwd));

        auto [rev, tr] = sample_fiber_map(sys, sys.first_tower(n - 4), Direction::forward);
        CHECK(tr == "P" + std::to_string(n + 2));
        // u -> sgn/(-a_n^2 u) + (c_3 + gamma_3)/a_n^2 = (-ep_3 a_n^2 u + sgn)/(-a_n^2 u)
        MobiusMap expect_rev{{-tc.ep[3] * an2, sgn, -an2, Rat(0)}};
        CHECK(rev.proportional_to(expect_rev));

        // double step on the top chart translates by ep_3 - ip_3
        for (long u : {2, 3}) {
            ChartPoint mid = sys.limit(sys.second_tower(3), Rat(u), Direction::forward);
            REQUIRE(mid.chart == tf);
            ChartPoint back = sys.limit(sys.first_tower(n - 4), mid.value, Direction::forward);
            REQUIRE(back.chart == "P" + std::to_string(n + 2));
            CHECK(back.value == Rat(u) + tc.ep[3] - tc.ip[3]);
        }
    }
}

TEST_CASE("base level swap for generic odd parameters") {
    MapParams p = params_from_longs(5, {2, 3, 1, 4, 7, 2}); // h = 0
    ChartSystem sys(p);
    REQUIRE(sys.second_tower_depth() == 1);
    const Rat an = p.a[5], an2 = an * an;
    auto [fwd, tf] = sample_fiber_map(sys, sys.second_tower(1), Direction::forward);
    CHECK(tf == "P3"); // P_{n-2}
    // u -> 1/(-a_n^2 u - (n-1) a_n + a_{n-1}), the level-1 swap
    CHECK(fwd.proportional_to(MobiusMap{{Rat(0), Rat(1), -an2, -4 * an + p.a[4]}}));
    auto [rev, tr] = sample_fiber_map(sys, sys.first_tower(3), Direction::forward);
    CHECK(tr == "P5");
    // u -> 1/(-a_n^2 u) + ep_1 with ep_1 = -a_{n-1}/a_n^2
    CHECK(rev.proportional_to(MobiusMap{{p.a[4], Rat(1), -an2, Rat(0)}}));
}

TEST_CASE("transversals through C_4 land in the R_0 chart when it exists") {
    // The induced map on C_4 in the R_0 chart coordinate works out to
    // u = a_1 - (x_1 - x_0)/x_2, i.e. a_1 + 1/(1+v) at the curve point
    // [1+v : 1 : v(1+v)] (expand F(B/D) - a_0 to first order in B along a
    // transversal). Nonconstant, so C_4 stops being exceptional here.
    for (int m : {0, 1}) {
        MapParams p(2, {make_rat(2, m + 1), Rat(3), Rat(1)});
        ChartSystem sys(p);
        std::vector<Rat> seen;
        for (long v : {2, 3}) {
            ChartPoint pt = sys.limit(sys.c4_transversal(), Rat(v), Direction::forward);
            CHECK(pt.chart == "R0");
            CHECK(pt.value == p.a[1] + make_rat(1, 1 + v));
            seen.push_back(pt.value);
        }
        CHECK(seen[0] != seen[1]);
    }
}

TEST_CASE("moebius reconstruction basics") {
    // translation u -> u + 3 from three samples
    MobiusMap t3 = mobius_reconstruct({{{Rat(0), Rat(3)}, {Rat(1), Rat(4)}, {Rat(2), Rat(5)}}});
    CHECK(t3.proportional_to(from_rows(1, 3, 0, 1)));
    // identity
    MobiusMap id = mobius_reconstruct({{{Rat(1), Rat(1)}, {Rat(2), Rat(2)}, {Rat(5), Rat(5)}}});
    CHECK(id.proportional_to(from_rows(1, 0, 0, 1)));
    // samples of u -> 1/(-1-u) at u = 1, 2, 3
    MobiusMap w = mobius_reconstruct({{{Rat(1), make_rat(-1, 2)},
                                       {Rat(2), make_rat(-1, 3)},
                                       {Rat(3), make_rat(-1, 4)}}});
    CHECK(w.proportional_to(from_rows(0, 1, -1, -1)));
    // a pole sample pins the denominator
    MobiusMap pol = mobius_reconstruct({{{Rat(0), Rat(0)}, {Rat(1), std::nullopt}, {Rat(2), Rat(2)}}});
    CHECK(pol.apply(Rat(1)) == std::nullopt);
    // degenerate data
    CHECK_THROWS_AS(mobius_reconstruct({{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}}}),
                    DegenerateSamples);
    CHECK_THROWS_AS(mobius_reconstruct({{{Rat(1), Rat(7)}, {Rat(2), Rat(7)}, {Rat(3), Rat(7)}}}),
                    DegenerateSamples);
}

TEST_CASE("orbit landing condition") {
    CHECK(orbit_condition_odd(params_from_longs(3, {2, 1, 1, 1})) == 0);
    MapParams p94(3, {make_rat(9, 4), Rat(1), Rat(1), Rat(1)});
    CHECK(orbit_condition_odd(p94) == 1);
    CHECK(!orbit_condition_odd(params_from_longs(3, {5, 1, 1, 1})).has_value());
    // agrees with the classifier's l detection
    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
        int n = 3 + 2 * (int)(rng() % 3);
        std::vector<Rat> a(n + 1, Rat(1));
        a[0] = make_rat((long)(rng() % 40) - 5, (long)(rng() % 8) + 1);
        MapParams p(n, a);
        CHECK(orbit_condition_odd(p) == detect_l(p.a[0], n));
    }
}
