#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace weil_atlas {

using Int = mpz_class;
using Rat = mpq_class;

// Exponent of the prime p in |x|; x must be nonzero.
unsigned valuation(const Int &x, const Int &p);

Int int_pow(const Int &base, unsigned long e);
Int mod_inverse(const Int &a, const Int &m);

// Nonnegative residue of a modulo m.
inline Int mod_floor(const Int &a, const Int &m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_prime(std::uint64_t n);
std::uint64_t least_primitive_root(std::uint64_t prime);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m);

// Decimal "a" or "a/b" in lowest terms.
std::string to_string(const Rat &x);
std::string to_string(const Int &x);
Rat parse_rational(const std::string &s);

// Rational coordinate vector to decimal strings.
std::vector<std::string> to_strings(const std::vector<Rat> &v);

} // namespace weil_atlas
