#pragma once

#include <cstdint>
#include <vector>

#include "kf/errors.hpp"
#include "kf/rational.hpp"

namespace kf {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

// Prime field element with a runtime modulus held in thread-local context
// (NTL zz_p style). Values are stored in Montgomery form; elements must not
// outlive the modulus they were created under. Default modulus is the prime
// 2^61 - 1 so that products of two residues fit comfortably in 128 bits.
class Fp {
    struct Ctx {
        std::uint64_t p = 2305843009213693951ull;
        std::uint64_t pinv = 0;
        std::uint64_t r1 = 0, r2 = 0;
        Ctx() {
            std::uint64_t inv = p;
            for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
            pinv = ~inv + 1;
            r1 = (std::uint64_t)((detail::u128(1) << 64) % p);
            r2 = (std::uint64_t)((detail::u128)r1 * r1 % p);
        }
    };
    static thread_local Ctx ctx_;

public:
    // primes just below 2^61 with 2^22 | p-1, so transform-based polynomial
    // arithmetic applies at these moduli
    static constexpr std::uint64_t kDefaultPrimes[3] = {
        2305843009196916737ull, // 2^61 - 2^24 + 1
        2305843009146585089ull,
        2305843009117224961ull,
    };

    static void set_modulus(std::uint64_t p) {
        if (!(p & 1) || p >= (1ull << 62) || !detail::is_prime_u64(p))
            throw DomainError("modulus must be an odd prime below 2^62");
        Ctx c;
        c.p = p;
        // p^{-1} mod 2^64 by Newton iteration, then negate.
        std::uint64_t inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        c.pinv = ~inv + 1; // -p^{-1} mod 2^64
        c.r1 = (std::uint64_t)((detail::u128(1) << 64) % p);
        c.r2 = (std::uint64_t)((detail::u128)c.r1 * c.r1 % p);
        ctx_ = c;
    }

    static std::uint64_t modulus() { return ctx_.p; }

    // RAII switch, restores the previous modulus on scope exit.
    struct ModulusGuard {
        explicit ModulusGuard(std::uint64_t p) : saved_(ctx_) { set_modulus(p); }
        ~ModulusGuard() { ctx_ = saved_; }
        ModulusGuard(const ModulusGuard&) = delete;
        ModulusGuard& operator=(const ModulusGuard&) = delete;

    private:
        Ctx saved_;
    };

    Fp() : v_(0) {}
    explicit Fp(std::int64_t x) {
        std::uint64_t p = ctx_.p;
        std::uint64_t r = x >= 0 ? (std::uint64_t)x % p : p - 1 - ((std::uint64_t)(-(x + 1)) % p);
        v_ = to_mont(r);
    }
    explicit Fp(const Int& z) {
        Int m(mpz_fdiv_ui(z.get_mpz_t(), ctx_.p));
        v_ = to_mont(m.get_ui());
    }
    explicit Fp(const Rat& q) {
        Fp num(Int(q.get_num())), den(Int(q.get_den()));
        if (den.is_zero()) throw DomainError("denominator divisible by the modulus");
        *this = num / den;
    }

    static Fp zero() { return Fp(); }
    static Fp one() {
        Fp r;
        r.v_ = ctx_.r1;
        return r;
    }

    std::uint64_t value() const { return redc(v_); }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const {
        Fp r;
        r.v_ = v_ ? ctx_.p - v_ : 0;
        return r;
    }
    Fp& operator+=(const Fp& o) {
        v_ += o.v_;
        if (v_ >= ctx_.p) v_ -= ctx_.p;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + ctx_.p - o.v_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        v_ = redc((detail::u128)v_ * o.v_);
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return a.v_ != b.v_; }

    Fp pow(std::uint64_t e) const {
        Fp r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    Fp inv() const {
        if (is_zero()) throw DomainError("inverse of zero in prime field");
        return pow(ctx_.p - 2);
    }

private:
    static std::uint64_t redc(detail::u128 t) {
        std::uint64_t m = (std::uint64_t)t * ctx_.pinv;
        std::uint64_t r = (std::uint64_t)((t + (detail::u128)m * ctx_.p) >> 64);
        return r >= ctx_.p ? r - ctx_.p : r;
    }
    static std::uint64_t to_mont(std::uint64_t x) { return redc((detail::u128)x * ctx_.r2); }

    std::uint64_t v_;
};

inline thread_local Fp::Ctx Fp::ctx_{};

} // namespace kf
