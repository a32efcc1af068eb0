#pragma once

#include <vector>

#include "kf/errors.hpp"
#include "kf/rational.hpp"
#include "kf/unipoly.hpp"

namespace kf {

// Dense square matrix of exact integers.
class IntMatrix {
public:
    explicit IntMatrix(int dim) : d_(dim), a_(dim * dim) {
        if (dim < 1) throw DomainError("matrix dimension must be >= 1");
    }

    static IntMatrix identity(int dim) {
        IntMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }

    int dim() const { return d_; }
    Int& operator()(int i, int j) { return a_[i * d_ + j]; }
    const Int& operator()(int i, int j) const { return a_[i * d_ + j]; }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.d_ == y.d_ && x.a_ == y.a_;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.d_ != y.d_) throw DomainError("matrix dimension mismatch");
        IntMatrix r(x.d_);
        for (int i = 0; i < x.d_; ++i)
            for (int k = 0; k < x.d_; ++k) {
                const Int& v = x(i, k);
                if (v == 0) continue;
                for (int j = 0; j < x.d_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    friend IntMatrix operator+(IntMatrix x, const IntMatrix& y) {
        if (x.d_ != y.d_) throw DomainError("matrix dimension mismatch");
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }

    IntMatrix transposed() const {
        IntMatrix r(d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    IntMatrix submatrix(const std::vector<int>& idx) const {
        IntMatrix r((int)idx.size());
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) r((int)i, (int)j) = (*this)(idx[i], idx[j]);
        return r;
    }

    Int trace() const {
        Int t = 0;
        for (int i = 0; i < d_; ++i) t += (*this)(i, i);
        return t;
    }

private:
    int d_;
    std::vector<Int> a_;
};

// det(M - xI), exact, by the Faddeev-LeVerrier iteration. Every division in
// the recursion is an exact integer division for integer input.
inline IntPoly char_poly(const IntMatrix& M) {
    const int d = M.dim();
    std::vector<Int> c(d + 1);
    c[d] = 1;
    IntMatrix Mk = M;
    for (int k = 1; k <= d; ++k) {
        Int t = Mk.trace();
        if (!mpz_divisible_ui_p(t.get_mpz_t(), k))
            throw DomainError("characteristic polynomial iteration lost exactness");
        Int ck;
        mpz_divexact_ui(ck.get_mpz_t(), t.get_mpz_t(), k);
        c[d - k] = -ck;
        if (k < d) {
            for (int i = 0; i < d; ++i) Mk(i, i) += c[d - k];
            Mk = M * Mk;
        }
    }
    // monic det(xI - M) computed; flip sign for odd dimension
    if (d % 2 == 1)
        for (auto& v : c) v = -v;
    return IntPoly(std::move(c));
}

} // namespace kf
