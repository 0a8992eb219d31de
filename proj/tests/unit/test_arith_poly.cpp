#include <gtest/gtest.h>

#include <random>
#include <set>

#include "weil_atlas/arith.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/poly.hpp"

using namespace weil_atlas;

namespace {

// Order of a modulo m by repeated multiplication.
std::uint64_t naive_order(std::uint64_t a, std::uint64_t m)
{
    std::uint64_t x = a % m, k = 1;
    while (x != 1) {
        x = x * a % m;
        ++k;
    }
    return k;
}

bool naive_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST(Arith, PrimalityAgreesWithTrialDivision)
{
    for (std::uint64_t n = 0; n < 2000; ++n)
        EXPECT_EQ(is_prime(n), naive_prime(n)) << n;
}

TEST(Arith, LeastPrimitiveRootHasFullOrderAndIsLeast)
{
    for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 17u, 103u, 257u}) {
        std::uint64_t g = least_primitive_root(p);
        EXPECT_EQ(naive_order(g, p), p - 1) << p;
        for (std::uint64_t a = 2; a < g; ++a)
            EXPECT_LT(naive_order(a, p), p - 1) << p << " " << a;
    }
    EXPECT_EQ(least_primitive_root(7), 3u);
    EXPECT_EQ(least_primitive_root(17), 3u);
}

TEST(Arith, ValuationAndModInverse)
{
    EXPECT_EQ(valuation(Int(7 * 7 * 7 * 2), Int(7)), 3u);
    EXPECT_EQ(valuation(Int(-49), Int(7)), 2u);
    EXPECT_EQ(valuation(Int(5), Int(7)), 0u);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Int m = Int(static_cast<unsigned long>(rng() % 1000 + 2));
        Int a = Int(static_cast<unsigned long>(rng() % 5000));
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        if (g != 1)
            continue;
        EXPECT_EQ(mod_floor(a * mod_inverse(a, m), m), m == 1 ? 0 : 1);
    }
}

TEST(Arith, RationalStringRoundTrip)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Rat x(Int(static_cast<long>(rng() % 20001) - 10000), Int(static_cast<unsigned long>(rng() % 97 + 1)));
        x.canonicalize();
        EXPECT_EQ(parse_rational(to_string(x)), x);
    }
    EXPECT_EQ(to_string(Rat(-3, 6)), "-1/2");
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_THROW(parse_rational("abc"), InputError);
}

TEST(Poly, ArithmeticIdentities)
{
    QPoly f = QPoly::from_integers({Int(1), Int(2), Int(3)});
    QPoly g = QPoly::from_integers({Int(-1), Int(1)});
    EXPECT_EQ((f * g).rem(g), QPoly());
    EXPECT_EQ(f.eval(Rat(2)), Rat(17));
    EXPECT_EQ(f.derivative(), QPoly::from_integers({Int(2), Int(6)}));
    EXPECT_EQ(g.pow(3).eval(Rat(3)), Rat(8));
}

TEST(Poly, SturmCountsMatchConstructedRoots)
{
    // Property: prod (x - a_i) over distinct integers a_i has exactly that
    // many real roots and as many positive ones as positive a_i.
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<long> roots;
        int count = 1 + static_cast<int>(rng() % 7);
        while (static_cast<int>(roots.size()) < count)
            roots.insert(static_cast<long>(rng() % 41) - 20);
        QPoly f = QPoly::from_integers({Int(1)});
        unsigned positive = 0;
        for (long a : roots) {
            f = f * QPoly::from_integers({Int(-a), Int(1)});
            positive += a > 0;
        }
        // A factor x^2 + 1 adds no real roots.
        if (trial % 2)
            f = f * QPoly::from_integers({Int(1), Int(0), Int(1)});
        EXPECT_EQ(count_real_roots(f), roots.size());
        EXPECT_EQ(count_positive_roots(f), positive);
    }
}
