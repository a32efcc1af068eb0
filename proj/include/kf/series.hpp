#pragma once

#include <algorithm>
#include <vector>

#include "kf/errors.hpp"
#include "kf/rational.hpp"

namespace kf {

// Truncated power series over the rationals: exact coefficients for orders
// 0..K. Binary operations truncate to the smaller order of the operands.
class TruncatedSeries {
public:
    TruncatedSeries() : c_(1) {}
    explicit TruncatedSeries(int order) : c_(order + 1) {}
    TruncatedSeries(int order, std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        c_.resize(order + 1);
    }

    static TruncatedSeries constant(const Rat& v, int order) {
        TruncatedSeries s(order);
        s.c_[0] = v;
        return s;
    }

    int order() const { return (int)c_.size() - 1; }
    const Rat& coeff(int k) const { return c_[k]; }
    Rat& coeff(int k) { return c_[k]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
    }

    TruncatedSeries truncated(int k) const {
        TruncatedSeries s(std::min(k, order()));
        std::copy(c_.begin(), c_.begin() + s.order() + 1, s.c_.begin());
        return s;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::min(a.order(), b.order()));
        for (int k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::min(a.order(), b.order()));
        for (int k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] - b.c_[k];
        return s;
    }
    friend TruncatedSeries operator*(const Rat& v, TruncatedSeries s) {
        for (auto& c : s.c_) c *= v;
        return s;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.c_ == b.c_;
    }

    // t -> r*t substitution
    TruncatedSeries scaled_arg(const Rat& r) const {
        TruncatedSeries s = *this;
        Rat p = 1;
        for (int k = 1; k <= s.order(); ++k) {
            p *= r;
            s.c_[k] *= p;
        }
        return s;
    }

    TruncatedSeries derivative() const {
        if (order() == 0) return TruncatedSeries(0);
        TruncatedSeries s(order() - 1);
        for (int k = 1; k <= order(); ++k) s.c_[k - 1] = Rat(k) * c_[k];
        return s;
    }

private:
    std::vector<Rat> c_;
};

// Cauchy product truncated to the smaller operand order.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k) {
        Rat acc = 0;
        for (int i = 0; i <= k; ++i) acc += a.coeff(i) * b.coeff(k - i);
        s.coeff(k) = acc;
    }
    return s;
}

// Multiplicative inverse: series_mul(s, series_inverse(s)) == 1 + O(t^{K+1}).
inline TruncatedSeries series_inverse(const TruncatedSeries& s) {
    if (s.coeff(0) == 0) throw DivisionByZeroSeries();
    TruncatedSeries r(s.order());
    r.coeff(0) = 1 / s.coeff(0);
    for (int k = 1; k <= s.order(); ++k) {
        Rat acc = 0;
        for (int i = 1; i <= k; ++i) acc += s.coeff(i) * r.coeff(k - i);
        r.coeff(k) = -acc / s.coeff(0);
    }
    return r;
}

inline TruncatedSeries cos_series(int order) {
    TruncatedSeries s(order);
    Rat fact = 1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        if (k % 2 == 0) s.coeff(k) = Rat((k / 2) % 2 == 0 ? 1 : -1) / fact;
    }
    return s;
}

inline TruncatedSeries sin_series(int order) {
    TruncatedSeries s(order);
    Rat fact = 1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        if (k % 2 == 1) s.coeff(k) = Rat((k / 2) % 2 == 0 ? 1 : -1) / fact;
    }
    return s;
}

} // namespace kf
