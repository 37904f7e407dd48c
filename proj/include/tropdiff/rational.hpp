#pragma once

#include <gmpxx.h>

#include <string>

#include "tropdiff/errors.hpp"

namespace tropdiff {

// Exact rational, always normalized (gcd 1, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

// Canonical print: "p" for integers, "p/q" otherwise (q > 0).
inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Safe fraction construction: mpq_class(num, den) does not canonicalize on
// its own, and a negative or non-coprime denominator breaks the mpq
// invariants.
inline Rat make_rat(long num, long den) {
    if (den == 0) fail(errc::invalid_argument, "zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parse "p", "-p", "p/q". Rejects everything else.
Rat parse_rat(const std::string& s);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long rat_to_long(const Rat& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p())
        fail(errc::invalid_argument, "expected a small integer, got " + rat_str(q));
    return q.get_num().get_si();
}

} // namespace tropdiff
