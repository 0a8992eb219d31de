#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <set>

#include "weil_atlas/config.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/oracle.hpp"
#include "weil_atlas/weil.hpp"

using namespace weil_atlas;

namespace {

long legendre(long a, long p)
{
    a %= p;
    if (a < 0)
        a += p;
    if (a == 0)
        return 0;
    return pow_mod(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>((p - 1) / 2), static_cast<std::uint64_t>(p)) == 1 ? 1 : -1;
}

std::uint64_t naive_count_prime_field(std::uint64_t r, std::uint64_t p)
{
    long total = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
        long v = static_cast<long>(pow_mod(x, r, p)) - 1;
        total += 1 + legendre(v, static_cast<long>(p));
    }
    return static_cast<std::uint64_t>(total);
}

// F_(p^2) = F_p[i] / (i^2 - n) for the least non-residue n; squares found by
// squaring every element.
std::uint64_t naive_count_quadratic_field(std::uint64_t r, std::uint64_t p)
{
    long n = 2;
    while (legendre(n, static_cast<long>(p)) != -1)
        ++n;
    using E = std::pair<long, long>;
    auto mul = [&](E a, E b) {
        long pp = static_cast<long>(p);
        return E{(a.first * b.first + n * a.second % pp * b.second) % pp, (a.first * b.second + a.second * b.first) % pp};
    };
    std::set<E> squares;
    for (long a = 0; a < static_cast<long>(p); ++a)
        for (long b = 0; b < static_cast<long>(p); ++b)
            squares.insert(mul({a, b}, {a, b}));
    std::uint64_t total = 1;
    for (long a = 0; a < static_cast<long>(p); ++a)
        for (long b = 0; b < static_cast<long>(p); ++b) {
            E x{a, b}, acc{1, 0};
            for (std::uint64_t k = 0; k < r; ++k)
                acc = mul(acc, x);
            E v{(acc.first - 1 + static_cast<long>(p)) % static_cast<long>(p), acc.second};
            if (v == E{0, 0})
                total += 1;
            else if (squares.count(v))
                total += 2;
        }
    return total;
}

std::complex<double> evaluate(const CycloElem &x)
{
    const double two_pi = 2 * std::acos(-1.0);
    std::complex<double> s = 0;
    for (std::size_t e = 0; e < x.coeffs().size(); ++e)
        s += x.coeffs()[e].get_d() * std::polar(1.0, two_pi * static_cast<double>(e) / static_cast<double>(x.r()));
    return s;
}

} // namespace

TEST(Oracle, JacobiSumAgainstDirectComplexSummation)
{
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {3, 13}, {5, 11}, {5, 31}, {17, 103}}) {
        std::uint64_t g = 2;
        for (;; ++g) {
            std::uint64_t order = 1, x = g % p;
            while (x != 1) {
                x = x * g % p;
                ++order;
            }
            if (order == p - 1)
                break;
        }
        std::vector<std::uint64_t> dlog(p);
        for (std::uint64_t s = 0, x = 1; s + 1 < p; ++s, x = x * g % p)
            dlog[x] = s;
        const double two_pi = 2 * std::acos(-1.0);
        for (std::uint64_t j = 1; j < r; ++j) {
            std::complex<double> direct = 0;
            for (std::uint64_t t = 2; t < p; ++t) {
                double phi = dlog[p + 1 - t] % 2 == 0 ? 1.0 : -1.0;
                direct += phi * std::polar(1.0, two_pi * static_cast<double>(j * dlog[t] % r) / static_cast<double>(r));
            }
            CycloElem js = jacobi_sum(p, r, j);
            EXPECT_LT(std::abs(evaluate(js) - direct), 1e-8) << r << " " << p << " " << j;
            // |J|^2 = p.
            EXPECT_EQ(cyclo_mul(js, galois_apply(-1, js)), CycloElem::from_rational(r, Rat(static_cast<long>(p))));
        }
    }
    EXPECT_THROW(jacobi_sum(11, 3, 1), InputError);
    EXPECT_THROW(jacobi_sum(7, 3, 3), InputError);
}

TEST(Oracle, PointCountsAgainstNaiveCounts)
{
    EXPECT_EQ(point_count(3, 7, 1), 4u);
    EXPECT_EQ(point_count(3, 7, 2), 48u);
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {3, 13}, {5, 11}, {5, 31}, {7, 29}, {17, 103}}) {
        std::uint64_t c1 = point_count(r, p, 1);
        EXPECT_EQ(c1, naive_count_prime_field(r, p)) << r << " " << p;
        if (p < 120) {
            EXPECT_EQ(point_count(r, p, 2), naive_count_quadratic_field(r, p)) << r << " " << p;
        }
        // Weil bound with genus (r - 1) / 2.
        for (unsigned k = 1; k <= oracle_k_max(p, 2'000'000); ++k) {
            double q = std::pow(static_cast<double>(p), k);
            double dev = std::abs(static_cast<double>(point_count(r, p, k)) - q - 1);
            EXPECT_LE(dev, static_cast<double>(r - 1) * std::sqrt(q) + 1e-6);
        }
    }
    EXPECT_THROW(point_count(3, 1999, 2), SizeError);
}

TEST(Oracle, KMaxAndTrace)
{
    EXPECT_EQ(oracle_k_max(7, 2'000'000), 2u);
    EXPECT_EQ(oracle_k_max(1999, 2'000'000), 1u);
    EXPECT_EQ(cyclo_trace(CycloElem::zeta_power(17, 3)), Rat(-1));
    EXPECT_EQ(cyclo_trace(CycloElem::from_rational(17, Rat(2))), Rat(32));
}

TEST(Oracle, CalibratedEigenvaluesReproduceCounts)
{
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {3, 13}, {5, 11}, {17, 103}}) {
        std::vector<PointCount> counts;
        for (unsigned k = 1; k <= oracle_k_max(p, 2'000'000); ++k)
            counts.push_back({k, point_count(r, p, k)});
        auto eig = calibrate_eigenvalues(p, r, counts);
        ASSERT_EQ(eig.size(), r - 1);
        for (const auto &pc : counts) {
            CycloElem sum(r);
            for (const auto &e : eig)
                sum = sum + e.value.pow(pc.k);
            ASSERT_TRUE(sum.is_rational());
            Rat s = sum.coeffs().empty() ? Rat(0) : sum.coeffs()[0];
            Rat qk = Rat(static_cast<long>(std::pow(p, pc.k)));
            EXPECT_EQ(qk + 1 - s, Rat(static_cast<long>(pc.count)));
        }
        if (r == 3 && p == 7) {
            EXPECT_EQ(cyclo_trace(eig[0].value), Rat(4));
        }
    }
    std::vector<PointCount> wrong{{1, point_count(3, 7, 1) + 1}};
    EXPECT_THROW(calibrate_eigenvalues(7, 3, wrong), OracleMismatch);
}

TEST(Oracle, MatchesTheUniqueClass)
{
    RunConfig cfg;
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {3, 13}, {5, 11}}) {
        Classification cls = classify_all(r, p, cfg);
        OracleReport rep = oracle_match(cls, cfg);
        EXPECT_EQ(rep.matched_orbit, 0u);
        for (const auto &e : rep.eigenvalues)
            EXPECT_EQ(e.matched_orbit, std::optional<std::size_t>(0));
    }
    EXPECT_THROW(oracle_match(classify_all(7, 11, cfg), cfg), InputError);
}
