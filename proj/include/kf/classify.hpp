#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kf/linsys.hpp"
#include "kf/mapcore.hpp"
#include "kf/roots.hpp"
#include "kf/unipoly.hpp"

namespace kf {

enum class CaseKind { Even1, Even2, Odd1, Odd2, Odd3, Odd4, Odd5, Odd6 };

// Classification outcome; h/m/l are set when the case carries them
// (Even2: m; Odd1: h; Odd2: h, m; Odd4: m; Odd5: l; Odd6: n = 3, a_0 = 2).
struct CaseLabel {
    CaseKind kind;
    int n;
    int h = -1;
    int m = -1;
    int l = -1;

    std::string name() const;
    bool even() const { return kind == CaseKind::Even1 || kind == CaseKind::Even2; }
    friend bool operator==(const CaseLabel& a, const CaseLabel& b) {
        return a.kind == b.kind && a.n == b.n && a.h == b.h && a.m == b.m && a.l == b.l;
    }
};

// Linear functions L_j of the coefficients; L_0 vanishes identically and
// L_2 = (n/2) L_1. Index convention a_{n+1} = 0.
Rat L(int j, const MapParams& params);

// Largest h in [0, n-2] with L_j = 0 for all j <= h; n odd. When h < n-2 it
// is even.
int find_h(const MapParams& params);

// m >= 0 with a_0 = 2/(1+m), if any.
std::optional<int> detect_m(const Rat& a0);

// l >= 0 with a_0 = (n+1)/2 + l/(2(l+1)), if any; solved exactly as a linear
// equation in l.
std::optional<int> detect_l(const Rat& a0, int n);

// Exhaustive, mutually exclusive dispatch. Even n ignores the L_j entirely:
// no h enters the even cases, only the arithmetic condition on a_0.
CaseLabel classify(const MapParams& params);

// The case's predicted characteristic polynomial (integer coefficients,
// ascending). Throws NoPolynomialForCase6.
IntPoly predicted_charpoly(const CaseLabel& label);

// Largest real root of the predicted polynomial at the given width; [1,1]
// for Odd6.
RootInterval predicted_delta(const CaseLabel& label, const Rat& width);

// True exactly when the blowup construction yields an automorphism:
// n = 3, a_2 = a_3, a_0 = 2.
bool has_automorphism(const MapParams& params);

struct ClassifierReport {
    CaseLabel label;
    std::optional<IntPoly> poly;
    RootInterval delta;
    bool automorphism = false;
};

ClassifierReport classifier_report(const MapParams& params, const Rat& width);

// Constructs parameters realizing a given case label (representative member
// of the family, deterministic in the seed). Used by verification harnesses.
MapParams witness_params(const CaseLabel& target, std::uint64_t seed);

} // namespace kf
