#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "kf/errors.hpp"

namespace kf {

// Exact arithmetic substrate. mpq_class keeps the canonical form
// (coprime, positive denominator) through arithmetic, so value equality is
// representation equality; anything constructed from raw numerator and
// denominator must go through make_rat.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

// Parses "p/q" or "p" with optional sign.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw InvalidInput("malformed rational literal: " + s);
    }
}

inline std::string rat_str(const Rat& r) {
    return r.get_den() == 1 ? r.get_num().get_str()
                            : r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline int sign(const Rat& r) { return sgn(r); }
inline int sign(const Int& z) { return sgn(z); }

} // namespace kf
