#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace vchc {

/// Exact rational scalar used throughout the solver stack. All solver
/// arithmetic is performed on these; no floating point anywhere.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Smallest integer >= q, as a rational.
inline Rat rat_ceil(const Rat& q) {
    BigInt n = numerator(q);
    BigInt d = denominator(q);
    BigInt quot = n / d;  // truncates toward zero
    if (quot * d < n) quot += 1;
    return Rat(quot);
}

inline bool rat_is_integer(const Rat& q) { return denominator(q) == 1; }

/// Canonical "p/q" rendering; integer values render without a denominator.
inline std::string rat_str(const Rat& q) { return q.str(); }

}  // namespace vchc
