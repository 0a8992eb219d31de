#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "weil_atlas/cyclo.hpp"
#include "weil_atlas/embed.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/field.hpp"

using namespace weil_atlas;

namespace {

KElem random_elem(const FieldPtr &f, std::mt19937_64 &rng, long range = 5, bool integral = true)
{
    std::vector<Rat> c;
    for (unsigned j = 0; j < f->degree(); ++j) {
        Rat x(static_cast<long>(rng() % (2 * range + 1)) - range);
        if (!integral)
            x /= Rat(static_cast<long>(rng() % 3 + 1));
        c.push_back(x);
    }
    return KElem::from_coords(f, c);
}

// Norm computed in Q(zeta_r) as the product of sigma_(g^j)(x), j < d.
Rat cyclo_norm(const KElem &x)
{
    const FieldContext &f = x.field();
    CycloElem acc = CycloElem::from_rational(f.r(), Rat(1));
    CycloElem cx = x.to_cyclo();
    std::uint64_t a = 1;
    for (unsigned j = 0; j < f.degree(); ++j) {
        acc = cyclo_mul(acc, galois_apply(static_cast<long long>(a), cx));
        a = a * f.generator() % f.r();
    }
    EXPECT_TRUE(acc.is_rational());
    return acc.coeffs().empty() ? Rat(0) : acc.coeffs()[0];
}

} // namespace

TEST(Cyclo, Examples)
{
    auto z = CycloElem::zeta_power(5, 1);
    EXPECT_EQ(cyclo_mul(z, CycloElem::zeta_power(5, 4)), CycloElem::from_rational(5, Rat(1)));
    auto one_plus = CycloElem::from_rational(5, Rat(1)) + z;
    EXPECT_EQ(cyclo_mul(one_plus, CycloElem::from_rational(5, Rat(1))), one_plus);
    // (3 + zeta)(2 - zeta) = 7 in Q(zeta_3).
    auto a = CycloElem(3, {Rat(3), Rat(1)});
    auto b = CycloElem(3, {Rat(2), Rat(-1)});
    EXPECT_EQ(cyclo_mul(a, b), CycloElem::from_rational(3, Rat(7)));
}

TEST(Cyclo, GaloisApply)
{
    auto x = CycloElem(3, {Rat(0), Rat(1)});
    EXPECT_EQ(galois_apply(1, x), x);
    EXPECT_EQ(galois_apply(2, x), CycloElem(3, {Rat(-1), Rat(-1)}));
    EXPECT_THROW(galois_apply(7, CycloElem::zeta_power(7, 1)), InputError);
    // r = 7: sigma_(-1)(zeta + zeta^2 + zeta^4) = zeta^3 + zeta^5 + zeta^6.
    auto eta0 = CycloElem::zeta_power(7, 1) + CycloElem::zeta_power(7, 2) + CycloElem::zeta_power(7, 4);
    auto eta1 = CycloElem::zeta_power(7, 3) + CycloElem::zeta_power(7, 5) + CycloElem::zeta_power(7, 6);
    EXPECT_EQ(galois_apply(-1, eta0), eta1);
}

TEST(Field, BuildFieldExamples)
{
    auto f3 = build_field(3);
    EXPECT_EQ(f3->n(), 1u);
    EXPECT_EQ(f3->m(), 1u);
    EXPECT_EQ(f3->min_poly_eta(), QPoly::from_integers({Int(1), Int(1), Int(1)}));
    auto f7 = build_field(7);
    EXPECT_EQ(f7->n(), 1u);
    EXPECT_EQ(f7->m(), 3u);
    EXPECT_EQ(f7->min_poly_eta(), QPoly::from_integers({Int(2), Int(1), Int(1)}));
    auto f17 = build_field(17);
    EXPECT_EQ(f17->n(), 4u);
    EXPECT_EQ(f17->m(), 1u);
    EXPECT_EQ(f17->degree(), 16u);
    auto f13 = build_field(13);
    EXPECT_EQ(f13->degree(), 4u);
    EXPECT_EQ(f13->m(), 3u);
    EXPECT_THROW(build_field(9), InputError);
    EXPECT_THROW(build_field(2), InputError);
}

TEST(Field, PeriodsPartitionUnits)
{
    for (std::uint64_t r : {3u, 5u, 7u, 13u, 17u, 41u}) {
        auto f = build_field(r);
        std::vector<int> seen(r, 0);
        for (unsigned j = 0; j < f->degree(); ++j)
            for (auto e : f->period_exponents(j))
                ++seen[e];
        EXPECT_EQ(seen[0], 0);
        for (std::uint64_t e = 1; e < r; ++e)
            EXPECT_EQ(seen[e], 1) << r << " " << e;
    }
}

TEST(Field, ConjugationExamples)
{
    auto f3 = build_field(3);
    KElem five = KElem::from_rational(f3, Rat(5));
    EXPECT_EQ(k_conj(five), five);
    KElem zeta = KElem::period(f3, 0);
    EXPECT_EQ(k_conj(zeta).to_cyclo(), CycloElem(3, {Rat(-1), Rat(-1)}));
    auto f7 = build_field(7);
    EXPECT_EQ(k_conj(KElem::period(f7, 0)), KElem::period(f7, 1));
}

TEST(Field, MinPolyExamples)
{
    auto f3 = build_field(3);
    EXPECT_EQ(min_poly(KElem::from_rational(f3, Rat(5))), QPoly::from_integers({Int(-5), Int(1)}));
    KElem x = KElem::from_cyclo(f3, CycloElem(3, {Rat(3), Rat(1)}));
    EXPECT_EQ(min_poly(x), QPoly::from_integers({Int(7), Int(-5), Int(1)}));
    auto f7 = build_field(7);
    EXPECT_EQ(min_poly(KElem::period(f7, 0)), QPoly::from_integers({Int(2), Int(1), Int(1)}));
}

TEST(Field, EmbeddingExamples)
{
    auto f7 = build_field(7);
    for (const auto &b : embed(KElem::from_rational(f7, Rat(1)), 128))
        EXPECT_TRUE(b.contains(Rat(1)));
    auto e = embed(KElem::period(f7, 0), 128);
    // (-1 + sqrt(-7)) / 2
    EXPECT_NEAR(e[0].re.to_double(), -0.5, 1e-12);
    EXPECT_NEAR(std::abs(e[0].im.to_double()), std::sqrt(7.0) / 2, 1e-12);
    auto cz = embed(CycloElem::zeta_power(7, 1), 128);
    ComplexBall sum = ComplexBall::exact(Rat(0), 128);
    for (const auto &b : cz)
        sum = sum + b;
    EXPECT_TRUE(sum.contains(Rat(-1)));
    EXPECT_LT(embed(KElem::period(f7, 0), 256)[0].width(), e[0].width());
}

TEST(Field, ElementsAreFixedByH)
{
    // Fields with nontrivial H.
    for (std::uint64_t r : {7u, 13u}) {
        auto f = build_field(r);
        EXPECT_THROW(KElem::from_cyclo(f, CycloElem::zeta_power(r, 1)), InputError);
        std::mt19937_64 rng(r);
        for (int i = 0; i < 10; ++i) {
            KElem a = random_elem(f, rng);
            CycloElem c = a.to_cyclo();
            for (auto h : f->subgroup())
                EXPECT_EQ(galois_apply(static_cast<long long>(h), c), c);
        }
    }
}

class FieldProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FieldProperty, MultiplicationAgreesWithCyclotomicArithmetic)
{
    auto f = build_field(GetParam());
    std::mt19937_64 rng(GetParam());
    for (int i = 0; i < 40; ++i) {
        KElem a = random_elem(f, rng, 5, false), b = random_elem(f, rng, 5, false);
        EXPECT_EQ((a * b).to_cyclo(), cyclo_mul(a.to_cyclo(), b.to_cyclo()));
        EXPECT_EQ((a + b).to_cyclo(), a.to_cyclo() + b.to_cyclo());
        EXPECT_EQ(KElem::from_cyclo(f, a.to_cyclo()), a);
    }
}

TEST_P(FieldProperty, GaloisIsARingAutomorphism)
{
    auto f = build_field(GetParam());
    std::mt19937_64 rng(GetParam() + 1);
    for (int i = 0; i < 30; ++i) {
        KElem a = random_elem(f, rng), b = random_elem(f, rng);
        for (unsigned s = 0; s < f->degree(); ++s) {
            EXPECT_EQ((a * b).galois(s), a.galois(s) * b.galois(s));
            EXPECT_EQ((a + b).galois(s), a.galois(s) + b.galois(s));
            EXPECT_EQ(min_poly(a.galois(s)), min_poly(a));
        }
        EXPECT_EQ(a.conj().conj(), a);
        EXPECT_EQ(a.conj(), a.galois_by_unit(-1));
        // sigma_g acts on Q(zeta) through zeta -> zeta^g.
        EXPECT_EQ(a.galois(1).to_cyclo(), galois_apply(static_cast<long long>(f->generator()), a.to_cyclo()));
    }
}

TEST_P(FieldProperty, NormInverseAndEmbeddings)
{
    auto f = build_field(GetParam());
    std::mt19937_64 rng(GetParam() + 2);
    for (int i = 0; i < 25; ++i) {
        KElem a = random_elem(f, rng, 4, false);
        if (a.is_zero())
            continue;
        KElem b = random_elem(f, rng, 4);
        EXPECT_EQ(a.norm(), cyclo_norm(a));
        EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
        EXPECT_EQ(a * a.inverse(), KElem::from_rational(f, Rat(1)));
        // |N(a)| against the product of certified embedding moduli.
        auto emb = embed(a, 128);
        double log_prod = 0;
        for (const auto &e : emb)
            log_prod += std::log(std::hypot(e.re.to_double(), e.im.to_double()));
        EXPECT_NEAR(log_prod, std::log(std::abs(a.norm().get_d())), 1e-9);
        // Minimal polynomial vanishes on a and has degree orbit_length.
        QPoly mp = min_poly(a);
        EXPECT_EQ(mp.degree(), static_cast<int>(a.orbit_length()));
        EXPECT_EQ(f->degree() % a.orbit_length(), 0u);
        KElem acc = KElem::from_rational(f, Rat(0));
        for (int k = mp.degree(); k >= 0; --k)
            acc = acc * a + KElem::from_rational(f, mp.coeff(static_cast<unsigned>(k)));
        EXPECT_TRUE(acc.is_zero());
    }
}

TEST_P(FieldProperty, ConjugationShiftsPeriodIndexByHalf)
{
    auto f = build_field(GetParam());
    const unsigned d = f->degree();
    for (unsigned j = 0; j < d; ++j) {
        EXPECT_EQ(KElem::period(f, j).conj(), KElem::period(f, (j + d / 2) % d));
        EXPECT_EQ(KElem::period(f, j).trace(), Rat(-1));
    }
}


INSTANTIATE_TEST_SUITE_P(Primes, FieldProperty, ::testing::Values(3, 5, 7, 13, 17));
