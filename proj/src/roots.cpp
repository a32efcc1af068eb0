#include "kf/roots.hpp"

#include <algorithm>

#include "kf/errors.hpp"

namespace kf {

namespace {

RatPoly squarefree_part(const RatPoly& p) {
    RatPoly g = gcd(p, p.derivative());
    if (g.deg() <= 0) return p.monic();
    return div_exact(p, g).monic();
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int var = 0, last = 0;
    for (const auto& q : chain) {
        int s = sign(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

} // namespace

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    RatPoly f = squarefree_part(p);
    if (f.deg() <= 0) return chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero() && chain.back().deg() > 0) {
        RatPoly r = divmod(chain[chain.size() - 2], chain.back()).rem;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int count_roots(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
    if (chain.empty()) return 0;
    return sign_variations(chain, a) - sign_variations(chain, b);
}

int count_real_roots(const RatPoly& p) {
    if (p.deg() <= 0) return 0;
    auto chain = sturm_chain(p);
    Rat b = cauchy_bound(p);
    return count_roots(chain, -b, b);
}

Rat cauchy_bound(const RatPoly& p) {
    Rat m = 0;
    for (int i = 0; i < p.deg(); ++i) m = std::max(m, Rat(abs(p.coeff(i) / p.lc())));
    return m + 1;
}

std::vector<Rat> rational_roots(const RatPoly& p, long cap) {
    std::vector<Rat> roots;
    if (p.deg() <= 0) return roots;
    IntPoly q = to_integer_primitive(p);
    // strip x^k
    int low = 0;
    while (q.coeff(low) == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        std::vector<Int> c(q.coeffs().begin() + low, q.coeffs().end());
        q = IntPoly(std::move(c));
    }
    if (q.deg() == 0) return roots;

    auto divisors = [cap](Int v) {
        std::vector<Int> ds;
        v = abs(v);
        for (Int d = 1; d * d <= v; ++d) {
            if ((long)ds.size() > cap) return std::vector<Int>{};
            if (v % d == 0) {
                ds.push_back(d);
                if (d * d != v) ds.push_back(v / d);
            }
        }
        return ds;
    };
    auto num = divisors(q.coeff(0));
    auto den = divisors(q.lc());
    if (num.empty() || den.empty() || (long)(num.size() * den.size()) > cap) return roots;
    for (const auto& n : num)
        for (const auto& d : den)
            for (int s : {1, -1}) {
                Rat cand = make_rat(s * n, d);
                RatPoly rp = to_rat_poly(q);
                if (rp(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

RootInterval largest_real_root(const RatPoly& p, const Rat& width) {
    if (p.is_zero() || p.deg() == 0) throw NoRealRoot();
    auto chain = sturm_chain(p);
    const RatPoly& f = chain.front();
    Rat bound = cauchy_bound(f);
    if (count_roots(chain, -bound, bound) == 0) throw NoRealRoot();

    auto roots_above = [&](const Rat& x) { return count_roots(chain, x, bound); };

    // exact shortcut for a rational largest root
    auto rr = rational_roots(p);
    if (!rr.empty() && roots_above(rr.back()) == 0) return {rr.back(), rr.back()};

    Rat lo = -bound, hi = bound;
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        if (f(mid) == 0 && roots_above(mid) == 0) return {mid, mid};
        if (roots_above(mid) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

RootInterval largest_real_root(const IntPoly& p, const Rat& width) {
    return largest_real_root(to_rat_poly(p), width);
}

} // namespace kf
