#include "kf/prime_field.hpp"
#include "kf/unipoly.hpp"

namespace kf {

namespace {

FpPoly reduce_mod_p(const IntPoly& p) {
    std::vector<Fp> c;
    c.reserve(p.deg() + 1);
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return FpPoly(std::move(c));
}

// symmetric representative in (-M/2, M/2]
Int symmetric(const Int& v, const Int& M) {
    Int r = v % M;
    if (r < 0) r += M;
    if (2 * r > M) r -= M;
    return r;
}

} // namespace

IntPoly modular_gcd(const std::vector<IntPoly>& polys) {
    std::vector<const IntPoly*> nz;
    for (const auto& p : polys)
        if (!p.is_zero()) nz.push_back(&p);
    if (nz.empty()) return {};
    if (nz.size() == 1) return primitive_part(*nz.front());

    std::vector<IntPoly> prim;
    for (const auto* p : nz) prim.push_back(primitive_part(*p));
    int min_deg = prim[0].deg();
    for (const auto& p : prim) min_deg = std::min(min_deg, p.deg());
    if (min_deg == 0) return IntPoly{Int(1)};

    Int lambda = 0;
    for (const auto& p : prim) mpz_gcd(lambda.get_mpz_t(), lambda.get_mpz_t(), p.lc().get_mpz_t());

    std::vector<Int> acc;  // CRT accumulator, scaled to leading coefficient lambda
    Int modulus = 1;
    int acc_deg = -1;
    std::vector<Int> last_candidate;

    std::uint64_t prime = Fp::kDefaultPrimes[0] + 2;
    for (int used = 0; used < 10000;) {
        // next prime below 2^61 not dividing any leading coefficient
        do prime -= 2;
        while (!detail::is_prime_u64(prime));
        bool bad = false;
        for (const auto& p : prim)
            if (mpz_fdiv_ui(p.lc().get_mpz_t(), prime) == 0) bad = true;
        if (bad) continue;
        ++used;

        Fp::ModulusGuard guard(prime);
        FpPoly g = reduce_mod_p(prim[0]);
        for (size_t i = 1; i < prim.size() && g.deg() > 0; ++i) g = gcd(g, reduce_mod_p(prim[i]));
        if (g.deg() == 0) return IntPoly{Int(1)};
        if (acc_deg >= 0 && g.deg() > acc_deg) continue; // unlucky prime
        if (acc_deg < 0 || g.deg() < acc_deg) {
            // first usable prime, or all previous primes were unlucky
            acc_deg = g.deg();
            acc.assign(acc_deg + 1, Int(0));
            modulus = 1;
            last_candidate.clear();
        }
        // scale the monic image to leading coefficient lambda
        FpPoly scaled = Fp(lambda) * g.monic();
        const Int pz(prime);
        for (int i = 0; i <= acc_deg; ++i) {
            // CRT: x = acc[i] (mod modulus), x = scaled[i] (mod prime)
            Int rp(scaled.coeff(i).value());
            if (modulus == 1) {
                acc[i] = rp;
            } else {
                Int minv;
                mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
                Int t = ((rp - acc[i]) * minv) % pz;
                if (t < 0) t += pz;
                acc[i] += modulus * t;
            }
        }
        modulus *= pz;

        std::vector<Int> cand(acc_deg + 1);
        for (int i = 0; i <= acc_deg; ++i) cand[i] = symmetric(acc[i], modulus);
        if (cand == last_candidate) {
            IntPoly candidate = primitive_part(IntPoly(std::vector<Int>(cand)));
            bool ok = true;
            for (const auto& p : prim)
                if (!divides(candidate, p)) { ok = false; break; }
            if (ok) return candidate;
        }
        last_candidate = std::move(cand);
    }
    throw DomainError("modular gcd did not stabilize");
}

} // namespace kf
