#pragma once

#include <vector>

#include "kf/rational.hpp"
#include "kf/series.hpp"

namespace kf {

Int binomial(int n, int k);

// Residual of the universal linear system at index j, written in the
// b-variables (b_i = a_{n-i}); zero means the equation holds. b entries past
// the end are treated as zero, as is b_{-1}.
Rat eq_residual(int n, int j, const std::vector<Rat>& b);

// The same equations in the original a-variables. Throws IndexError outside
// 0 <= j <= n.
Rat L_linear(int n, int j, const std::vector<Rat>& a);

struct OddSystemSolution {
    int n = 0;
    int m = 0; // odd, < n
    std::vector<Rat> b; // b_0..b_n
};

// Solves the odd-indexed equations j = 1, 3, ..., m for b_1, b_3, ..., b_m by
// forward substitution, with the even-indexed b given (b_0, b_2, ..., listed
// in order). Unspecified entries above index m are zero.
OddSystemSolution solve_odd_system(int n, int m, const std::vector<Rat>& b_even);

// Checks the even-indexed equations j = 0, 2, ..., m+1 on a solution of the
// odd ones; these hold identically.
bool check_even_implied(const OddSystemSolution& sol);

struct ThetaAlpha {
    std::vector<Rat> theta, alpha; // entries for odd indices 1, 3, 5, ...
    const Rat& theta_at(int j) const { return theta[(j - 1) / 2]; }
    const Rat& alpha_at(int j) const { return alpha[(j - 1) / 2]; }
    int kmax() const { return 2 * (int)theta.size() - 1; }
};

// Solves the two triangular recurrences 2*theta_1 = 1,
// theta_1/(t-1)! + ... + theta_{t-2}/2! + 2*theta_t = 0 and the alpha variant
// with right-hand side 1/t!, for odd indices up to kmax.
ThetaAlpha theta_alpha(int kmax);

struct IdentityReport {
    int kmax = 0;
    bool sum_identity = false;        // theta_1/m! + ... + theta_m/1! - theta_m/m = 0
    bool ratio_identity = false;      // alpha_m = theta_m / m
    bool derivative_identity = false; // d(alpha)/dt = theta, termwise
    bool series_match = false;        // recurrences match 1/(1+cos t), sin t/(1+cos t)
    bool pass() const { return sum_identity && ratio_identity && derivative_identity && series_match; }
};

IdentityReport claim2_identities(int kmax);

// Whether sum_{j=2}^n (-1)^j a_j vanishes; requires L_j(a) = 0 for
// j = 0..n-1 and throws InputNotInKernel otherwise.
bool alternating_sum_check(int n, const std::vector<Rat>& a);

// Solution of L_0 = ... = L_{n-1} = 0 for odd n: the even-indexed b are free
// (given in order b_0, b_2, ..., b_{n-1}) along with b_n = a_0; the odd ones
// are forced. Returns the a-coefficients a_0..a_n.
std::vector<Rat> solve_L_kernel(int n, const std::vector<Rat>& b_even_free, const Rat& a0);

} // namespace kf
