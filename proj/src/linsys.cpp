#include "kf/linsys.hpp"

#include "kf/errors.hpp"

namespace kf {

Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rat eq_residual(int n, int j, const std::vector<Rat>& b) {
    auto bi = [&](int i) { return i >= 0 && i < (int)b.size() ? b[i] : Rat(0); };
    // -(b_j + b_{j-1}) - sum_{i=0}^{j} (-1)^{i+1} b_i C(n-i, j-i)
    Rat r = -(bi(j) + bi(j - 1));
    for (int i = 0; i <= j; ++i) {
        Rat term = bi(i) * Rat(binomial(n - i, j - i));
        r -= (i % 2 == 0) ? -term : term;
    }
    return r;
}

Rat L_linear(int n, int j, const std::vector<Rat>& a) {
    if (j < 0 || j > n) throw IndexError("L_j defined for 0 <= j <= n");
    std::vector<Rat> b(n + 1);
    for (int i = 0; i <= n; ++i) b[i] = a[n - i];
    return eq_residual(n, j, b);
}

OddSystemSolution solve_odd_system(int n, int m, const std::vector<Rat>& b_even) {
    if (m < 0 || m >= n || m % 2 == 0) throw DomainError("m must be odd and 0 <= m < n");
    OddSystemSolution sol;
    sol.n = n;
    sol.m = m;
    sol.b.assign(n + 1, Rat(0));
    for (size_t i = 0; i < b_even.size() && 2 * i <= (size_t)n; ++i) sol.b[2 * i] = b_even[i];
    // Equation j has b_j with total coefficient -2 once the lower-index terms
    // are moved across; forward substitution is exact.
    for (int j = 1; j <= m; j += 2) {
        sol.b[j] = 0;
        Rat res = eq_residual(n, j, sol.b);
        sol.b[j] = res / 2;
    }
    return sol;
}

bool check_even_implied(const OddSystemSolution& sol) {
    for (int j = 0; j <= sol.m + 1; j += 2)
        if (eq_residual(sol.n, j, sol.b) != 0) return false;
    return true;
}

ThetaAlpha theta_alpha(int kmax) {
    if (kmax < 1 || kmax % 2 == 0) throw DomainError("kmax must be odd and >= 1");
    ThetaAlpha ta;
    const int cnt = (kmax + 1) / 2;
    ta.theta.resize(cnt);
    ta.alpha.resize(cnt);
    // factorials up to kmax
    std::vector<Rat> fact(kmax + 1);
    fact[0] = 1;
    for (int i = 1; i <= kmax; ++i) fact[i] = fact[i - 1] * i;
    for (int idx = 0; idx < cnt; ++idx) {
        const int t = 2 * idx + 1;
        Rat acc_t = 0, acc_a = 0;
        for (int i = 1; i < t; i += 2) {
            acc_t += ta.theta[(i - 1) / 2] / fact[t - i];
            acc_a += ta.alpha[(i - 1) / 2] / fact[t - i];
        }
        Rat rhs_t = (t == 1) ? Rat(1) : Rat(0);
        Rat rhs_a = 1 / fact[t];
        ta.theta[idx] = (rhs_t - acc_t) / 2;
        ta.alpha[idx] = (rhs_a - acc_a) / 2;
    }
    return ta;
}

IdentityReport claim2_identities(int kmax) {
    if (kmax < 1 || kmax % 2 == 0) throw DomainError("kmax must be odd and >= 1");
    IdentityReport rep;
    rep.kmax = kmax;
    ThetaAlpha ta = theta_alpha(kmax);

    std::vector<Rat> fact(kmax + 1);
    fact[0] = 1;
    for (int i = 1; i <= kmax; ++i) fact[i] = fact[i - 1] * i;

    rep.sum_identity = true;
    rep.ratio_identity = true;
    for (int m = 1; m <= kmax; m += 2) {
        // theta_1/m! + theta_3/(m-2)! + ... + theta_m/1! - theta_m/m
        Rat s = 0;
        for (int i = 1; i <= m; i += 2) s += ta.theta_at(i) / fact[m - i + 1];
        if (s - ta.theta_at(m) / m != 0) rep.sum_identity = false;
        if (ta.alpha_at(m) - ta.theta_at(m) / m != 0) rep.ratio_identity = false;
    }

    // series cross-check to order 2*kmax + 2, with the alternating-sign
    // packing theta(t) = theta_1 - t^2 theta_3 + t^4 theta_5 - ...
    const int ord = 2 * kmax + 2;
    TruncatedSeries theta_t = series_inverse(TruncatedSeries::constant(1, ord) + cos_series(ord));
    TruncatedSeries alpha_t = series_mul(sin_series(ord), theta_t);
    rep.series_match = true;
    for (int m = 1; m <= kmax; m += 2) {
        Rat sgn = ((m - 1) / 2) % 2 == 0 ? 1 : -1;
        if (theta_t.coeff(m - 1) != sgn * ta.theta_at(m)) rep.series_match = false;
        if (alpha_t.coeff(m) != sgn * ta.alpha_at(m)) rep.series_match = false;
    }

    rep.derivative_identity = true;
    TruncatedSeries dalpha = alpha_t.derivative();
    for (int k = 0; k < 2 * kmax; ++k)
        if (dalpha.coeff(k) != theta_t.coeff(k)) rep.derivative_identity = false;

    return rep;
}

bool alternating_sum_check(int n, const std::vector<Rat>& a) {
    if (n < 3 || n % 2 == 0) throw DomainError("n must be odd and >= 3");
    if ((int)a.size() != n + 1) throw DomainError("expected n+1 coefficients");
    for (int j = 0; j <= n - 1; ++j)
        if (L_linear(n, j, a) != 0) throw InputNotInKernel("L_" + std::to_string(j) + " nonzero");
    Rat s = 0;
    for (int j = 2; j <= n; ++j) s += (j % 2 == 0) ? a[j] : -a[j];
    return s == 0;
}

std::vector<Rat> solve_L_kernel(int n, const std::vector<Rat>& b_even_free, const Rat& a0) {
    if (n < 3 || n % 2 == 0) throw DomainError("n must be odd and >= 3");
    if ((int)b_even_free.size() != (n + 1) / 2)
        throw DomainError("expected (n+1)/2 free even entries");
    OddSystemSolution sol = solve_odd_system(n, n - 2, b_even_free);
    sol.b[n] = a0;
    std::vector<Rat> a(n + 1);
    for (int i = 0; i <= n; ++i) a[n - i] = sol.b[i];
    return a;
}

} // namespace kf
