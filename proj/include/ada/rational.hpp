#ifndef ADA_RATIONAL_HPP
#define ADA_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ada/errors.hpp"

namespace ada {

// Exact rational scalar.  mpq_class keeps itself canonical under arithmetic;
// only hand-built values need canonicalize().
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long n, long d = 1) {
    if (d == 0) throw DivByZero("rational with zero denominator");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

inline int sign(const Rat& q) { return sgn(q); }
inline bool is_int(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q) {
    if (!is_int(q) || !q.get_num().fits_slong_p()) throw Precondition("rational does not fit a machine integer");
    return q.get_num().get_si();
}

// q^e for integer e; e<0 inverts.
inline Rat pow_rat(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0) {
        if (e < 0) throw DivByZero("0^negative");
        return Rat(0);
    }
    Rat base = q;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (inv) return Rat(1) / acc;
    return acc;
}

// Exact square root if q is a square of a rational, otherwise nullopt.
inline std::optional<Rat> sqrt_exact(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rat(0);
    Int num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rat(rn, rd);
}

// "p/q" or "p"; throws ParseError on garbage.
inline Rat rat_from_string(const std::string& s, size_t err_pos = 0) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + s + "'", err_pos);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", err_pos);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

// Binomial coefficient C(a, k) for rational a, natural k (generalized binomial).
inline Rat binomial(const Rat& a, unsigned k) {
    Rat acc(1);
    for (unsigned j = 0; j < k; ++j) acc *= (a - Rat(j)) / Rat(j + 1);
    return acc;
}

} // namespace ada

#endif
