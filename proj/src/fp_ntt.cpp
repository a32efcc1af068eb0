#include "kf/prime_field.hpp"
#include "kf/unipoly.hpp"

namespace kf {

namespace {

struct NttCtx {
    std::uint64_t p = 0;
    int log_size = 0; // largest supported transform is 2^log_size
    Fp base_root;     // element of order 2^log_size
};

thread_local NttCtx ntt_ctx;

// largest power-of-two transform the current modulus supports; 0 when the
// modulus is unsuitable
int ntt_support() {
    const std::uint64_t p = Fp::modulus();
    if (ntt_ctx.p == p) return ntt_ctx.log_size;
    ntt_ctx.p = p;
    ntt_ctx.log_size = 0;
    std::uint64_t odd = p - 1;
    int s = 0;
    while ((odd & 1) == 0) {
        odd >>= 1;
        ++s;
    }
    if (s < 12) return 0;
    for (std::uint64_t x = 2; x < 10000; ++x) {
        Fp w = Fp((std::int64_t)x).pow(odd);
        Fp t = w;
        for (int i = 0; i < s - 1; ++i) t *= t;
        if (t == -Fp::one()) {
            ntt_ctx.log_size = s;
            ntt_ctx.base_root = w;
            break;
        }
    }
    return ntt_ctx.log_size;
}

void ntt(std::vector<Fp>& a, bool invert) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    int log_n = 0;
    while ((size_t(1) << log_n) < n) ++log_n;
    for (int level = 1; level <= log_n; ++level) {
        const size_t len = size_t(1) << level;
        Fp wlen = ntt_ctx.base_root;
        for (int i = 0; i < ntt_ctx.log_size - level; ++i) wlen *= wlen;
        if (invert) wlen = wlen.inv();
        for (size_t i = 0; i < n; i += len) {
            Fp w = Fp::one();
            for (size_t j = 0; j < len / 2; ++j) {
                Fp u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert) {
        Fp ninv = Fp((std::int64_t)n).inv();
        for (auto& v : a) v *= ninv;
    }
}

} // namespace

std::vector<Fp> poly_mul_vec(const std::vector<Fp>& a, const std::vector<Fp>& b) {
    const size_t need = a.size() + b.size() - 1;
    if (std::min(a.size(), b.size()) <= 512) return UniPoly<Fp>::mul_generic(a, b);
    size_t n = 1;
    int log_n = 0;
    while (n < need) {
        n <<= 1;
        ++log_n;
    }
    if (log_n > ntt_support()) return UniPoly<Fp>::mul_generic(a, b);
    std::vector<Fp> fa(a), fb(b);
    fa.resize(n);
    fb.resize(n);
    ntt(fa, false);
    ntt(fb, false);
    for (size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    ntt(fa, true);
    fa.resize(need);
    return fa;
}

namespace detail {

FpPoly fp_gcd(const FpPoly& A, const FpPoly& B) {
    if (A.is_zero()) return B.monic();
    if (B.is_zero()) return A.monic();
    std::vector<Fp> a = A.coeffs(), b = B.coeffs();
    auto deg_of = [](const std::vector<Fp>& v) {
        int d = (int)v.size() - 1;
        while (d >= 0 && v[d] == Fp()) --d;
        return d;
    };
    int da = deg_of(a), db = deg_of(b);
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
    }
    while (db >= 0) {
        if (da - db > 400 && db > 400) {
            // knock the degree gap down with one fast division
            FpPoly pa(std::vector<Fp>(a.begin(), a.begin() + da + 1));
            FpPoly pb(std::vector<Fp>(b.begin(), b.begin() + db + 1));
            FpPoly rem = divmod(pa, pb).rem;
            a.assign(b.begin(), b.begin() + db + 1);
            b = rem.coeffs();
            da = db;
            db = rem.deg();
            continue;
        }
        const Fp inv = b[db].inv();
        while (da >= db) {
            Fp c = a[da] * inv;
            const int off = da - db;
            if (!(c == Fp()))
                for (int j = 0; j < db; ++j) a[off + j] -= c * b[j];
            --da;
            while (da >= 0 && a[da] == Fp()) --da;
        }
        std::swap(a, b);
        std::swap(da, db);
    }
    if (da < 0) return {};
    return FpPoly(std::vector<Fp>(a.begin(), a.begin() + da + 1)).monic();
}

} // namespace detail

} // namespace kf
