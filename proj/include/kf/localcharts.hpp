#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kf/mapcore.hpp"
#include "kf/rational.hpp"
#include "kf/series.hpp"
#include "kf/unipoly.hpp"

namespace kf {

// d_j: coefficient of s^j in s^n F(-1 - 1/s); gamma_j: coefficient of s^j in
// -(1+s) s^n F(1/s). Both polynomials have degree n; j must lie in [0, n].
Rat coeff_d(const MapParams& params, int j);
Rat coeff_gamma(const MapParams& params, int j);

// The u-independent part c_j of the s^j coefficient of
// (1+s) / (prefix_0 + prefix_1 s + ... + prefix_{j-1} s^{j-1} + s^j u),
// which is affine in u with slope -a_n^2. Computed from two samples of u;
// the slope is verified.
Rat coeff_c(const MapParams& params, int j, const std::vector<Rat>& prefix);

// Forward and backward center sequences of the point blowup tower:
// ep_0 = ip_0 = 1/a_n, ep_j = (gamma_j + c_j)/a_n^2, ip_j = (c_j + d_j)/a_n^2.
// The tower extends past level j only when ep_j = ip_j (exactly when L_j = 0);
// a mismatch below jmax raises SequenceBlocked.
struct TowerCoeffs {
    std::vector<Rat> ep, ip; // indices 0..jmax
};
TowerCoeffs ep_ip_sequence(const MapParams& params, int jmax);

// Data of the stage where the tower reaches e_2 (odd n with all of
// L_0..L_{n-2} vanishing): the ep-prefix through level n-1 and the level-n
// constants.
struct OddTopStage {
    std::vector<Rat> ep; // ep_0..ep_{n-1}
    Rat c_n, d_n, gamma_n;
    Rat ep_n; // (c_n + gamma_n)/a_n^2
};
OddTopStage odd_top_stage(const MapParams& params);

// A one-parameter family of arcs s -> [X0(s,u) : X1(s,u) : X2(s,u)]; at
// s = 0 the arc pins a point of the named chart.
struct ChartSpec {
    std::string name;
    std::function<std::array<RatPoly, 3>(const Rat& u)> arc;
};

// Where a pushed chart arc lands: a registered chart coordinate (possibly
// the chart's point at infinity) or a plane point.
struct ChartPoint {
    std::string chart;
    bool infinite = false;
    Rat value;
    std::optional<ProjPoint> plane;
};

enum class Direction { forward, inverse };

// Registered local charts of the blowup tower for one parameter set: the
// chain fibers P_1..P_{n-1} over e_1, the second-tower fibers P_{n-1+j} as
// far as the case allows, E2 over e_2, the curve C_1 as a coordinate curve,
// and (when a_0 = 2/(m+1)) the R_0 fiber over [1:-1+a_0:0].
class ChartSystem {
public:
    explicit ChartSystem(MapParams params);

    const MapParams& params() const { return params_; }
    int second_tower_depth() const { return depth2_; }
    const std::vector<Rat>& centers() const { return centers_; }

    ChartSpec first_tower(int j) const;  // 1 <= j <= n-1
    ChartSpec second_tower(int j) const; // 1 <= j <= depth
    ChartSpec e2_chart() const;
    ChartSpec c1_chart() const;
    ChartSpec r0_chart() const;
    // transversal probes into the exceptional curves, parametrized by the
    // point on the curve
    ChartSpec c2_transversal() const;
    ChartSpec c4_transversal() const;

    // Substitutes the arc at fixed u, pushes it through the map (or its
    // inverse), clears common factors, and expresses the s -> 0 limit in a
    // registered chart.
    ChartPoint limit(const ChartSpec& chart, const Rat& u, Direction dir) const;

private:
    MapParams params_;
    int depth2_ = 0;            // registered second-tower levels
    std::vector<Rat> centers_;  // blowup centers kappa_0..kappa_{depth-1}
    std::optional<Rat> r0_x1_;  // -1 + a_0 when the R_0 chart exists
};

// Projective 2x2 matrix acting as u -> (a u + b)/(c u + d).
struct MobiusMap {
    std::array<Rat, 4> m; // a, b, c, d

    std::optional<Rat> apply(const Rat& u) const; // nullopt at the pole
    bool proportional_to(const MobiusMap& other) const;
};

// The unique Moebius map through three samples (u, value), value absent
// meaning infinity. Throws DegenerateSamples when the samples do not
// determine an invertible map.
MobiusMap mobius_reconstruct(const std::array<std::pair<Rat, std::optional<Rat>>, 3>& samples);

// Samples the fiber map induced between charts by three chart_limit calls
// (u drawn from small integers, skipping poles) and reconstructs it. The
// target chart name must be consistent across samples and is returned too.
std::pair<MobiusMap, std::string> sample_fiber_map(const ChartSystem& sys, const ChartSpec& from,
                                                   Direction dir);

// Smallest l >= 0 with 2 a_0 (l+1) - (n+1)(l+1) - l = 0, if any; agrees with
// the classifier's l detection.
std::optional<int> orbit_condition_odd(const MapParams& params);

} // namespace kf
