#pragma once

#include <vector>

#include "kf/rational.hpp"
#include "kf/unipoly.hpp"

namespace kf {

// Closed rational interval [lo, hi].
struct RootInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool overlaps(const RootInterval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Sturm chain of the squarefree part of p.
std::vector<RatPoly> sturm_chain(const RatPoly& p);

// number of distinct real roots of p in (a, b]
int count_roots(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b);

// total number of distinct real roots
int count_real_roots(const RatPoly& p);

// 1 + max |a_i / a_d|; every root has absolute value below this
Rat cauchy_bound(const RatPoly& p);

// All rational roots of p, found by divisor enumeration on the primitive
// integer form. Gives up (returns nothing) past `cap` candidate pairs.
std::vector<Rat> rational_roots(const RatPoly& p, long cap = 100000);

// Rational interval of width <= `width` containing the largest real root
// (Sturm isolation, then bisection). Collapses to a point when that root is
// rational. Throws NoRealRoot when p has no real root.
RootInterval largest_real_root(const RatPoly& p, const Rat& width);
RootInterval largest_real_root(const IntPoly& p, const Rat& width);

} // namespace kf
