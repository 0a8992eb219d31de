#include "weil_atlas/arith.hpp"

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

unsigned valuation(const Int &x, const Int &p)
{
    if (x == 0)
        throw InputError("valuation of zero");
    Int y = abs(x);
    unsigned v = 0;
    while (mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Int int_pow(const Int &base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int mod_inverse(const Int &a, const Int &m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InputError("element not invertible modulo " + m.get_str());
    return r;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    Int x(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(x.get_mpz_t(), 40) != 0;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    unsigned __int128 result = 1 % m;
    unsigned __int128 b = base % m;
    while (e) {
        if (e & 1)
            result = result * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t least_primitive_root(std::uint64_t prime)
{
    if (prime == 2)
        return 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t n = prime - 1;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            factors.push_back(f);
            while (n % f == 0)
                n /= f;
        }
    }
    if (n > 1)
        factors.push_back(n);
    for (std::uint64_t g = 2; g < prime; ++g) {
        bool ok = true;
        for (auto f : factors) {
            if (pow_mod(g, (prime - 1) / f, prime) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return g;
    }
    throw InputError("no primitive root found for " + std::to_string(prime));
}

std::string to_string(const Rat &x)
{
    Rat y = x;
    y.canonicalize();
    return y.get_str();
}
std::string to_string(const Int &x) { return x.get_str(); }

Rat parse_rational(const std::string &s)
{
    Rat x;
    if (x.set_str(s, 10) != 0)
        throw InputError("malformed rational '" + s + "'");
    if (x.get_den() == 0)
        throw InputError("zero denominator in '" + s + "'");
    x.canonicalize();
    return x;
}

std::vector<std::string> to_strings(const std::vector<Rat> &v)
{
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto &x : v)
        out.push_back(to_string(x));
    return out;
}

} // namespace weil_atlas
