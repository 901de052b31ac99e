#pragma once

#include "ehrhart/errors.hpp"

#include <gmpxx.h>

#include <string>

namespace ehrhart {

using BigInt = mpz_class;
/// Exact rational; gmpxx keeps arithmetic results canonical
/// (lowest terms, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// "a" or "a/b".
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Floor of a/b for b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace ehrhart
