#include <gtest/gtest.h>

#include <random>

#include "weil_atlas/config.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/ptype.hpp"
#include "weil_atlas/weil.hpp"

using namespace weil_atlas;

namespace {

KElem cyc(const FieldPtr &f, std::vector<long> coeffs)
{
    std::vector<Rat> c(coeffs.begin(), coeffs.end());
    return KElem::from_cyclo(f, CycloElem(f->r(), c));
}

KElem one(const FieldPtr &f) { return KElem::from_rational(f, Rat(1)); }

// eta_j + eta_(j+d/2) = zeta^a + zeta^(-a) summed over H; a real unit when m = 1.
KElem real_period_unit(const FieldPtr &f, unsigned j)
{
    return KElem::period(f, j) + KElem::period(f, j + f->degree() / 2);
}

} // namespace

TEST(Weil, IsWeilExamples)
{
    auto f = build_field(3);
    EXPECT_TRUE(is_weil(cyc(f, {3, 1}), 7, 1));
    EXPECT_TRUE(is_weil(KElem::from_rational(f, Rat(7)), 7, 2));
    EXPECT_FALSE(is_weil(KElem::from_rational(f, Rat(2)), 7, 1));
    EXPECT_FALSE(is_weil(cyc(f, {3, 1}) / Rat(2), 7, 1));
    SplitFiber fiber = primes_above(f, 7);
    EXPECT_THROW(make_weil(KElem::from_rational(f, Rat(2)), fiber, 1), InputError);
}

TEST(Weil, OrdinarityExamples)
{
    auto f = build_field(3);
    SplitFiber fiber = primes_above(f, 7);
    EXPECT_TRUE(is_ordinary(make_weil(cyc(f, {3, 1}), fiber, 1)));
    EXPECT_FALSE(is_ordinary(make_weil(KElem::from_rational(f, Rat(7)), fiber, 2)));
    EXPECT_FALSE(is_ordinary(make_weil(cyc(f, {0, 7}), fiber, 2)));
}

TEST(Weil, RootsOfUnity)
{
    auto f3 = build_field(3);
    EXPECT_TRUE(is_root_of_unity(KElem::from_rational(f3, Rat(-1))));
    EXPECT_FALSE(is_root_of_unity(KElem::from_rational(f3, Rat(2))));
    EXPECT_FALSE(is_root_of_unity(KElem::from_rational(f3, Rat(1, 2))));
    KElem ratio = cyc(f3, {1, -2}) / cyc(f3, {3, 1});
    EXPECT_EQ(ratio, -cyc(f3, {0, 1}));
    EXPECT_TRUE(is_root_of_unity(ratio));
    auto f17 = build_field(17);
    for (unsigned j = 0; j < 16; ++j) {
        EXPECT_TRUE(is_root_of_unity(KElem::period(f17, j)));
        EXPECT_TRUE(is_root_of_unity(-KElem::period(f17, j).pow(5)));
    }
    // A unit of infinite order.
    EXPECT_FALSE(is_root_of_unity(real_period_unit(f17, 0)));
    auto f7 = build_field(7);
    EXPECT_FALSE(is_root_of_unity(KElem::period(f7, 0)));
}

TEST(Weil, FrobeniusCharpoly)
{
    auto f = build_field(3);
    SplitFiber fiber = primes_above(f, 7);
    EXPECT_EQ(frob_charpoly(make_weil(cyc(f, {3, 1}), fiber, 1)), (std::vector<Int>{7, -5, 1}));
    WeilNumber seven = make_weil(KElem::from_rational(f, Rat(7)), fiber, 2);
    EXPECT_THROW(frob_charpoly(seven), DegenerateFieldError);
    EXPECT_EQ(frob_charpoly(seven, true), (std::vector<Int>{49, -14, 1}));
}

TEST(Weil, UnitOfGenerator)
{
    auto f = build_field(3);
    UnitInfo ui = unit_of(cyc(f, {3, 1}), Int(7));
    EXPECT_EQ(ui.u, one(f));
    EXPECT_TRUE(ui.totally_positive);
    EXPECT_EQ(unit_of(cyc(f, {0, 1}) * cyc(f, {3, 1}), Int(7)).u, ui.u);
    EXPECT_THROW(unit_of(KElem::from_rational(f, Rat(2)), Int(7)), InvariantError);
}

TEST(Weil, SqrtUnitExamples)
{
    auto f = build_field(5);
    auto r1 = sqrt_unit(one(f));
    ASSERT_TRUE(r1.has_value());
    EXPECT_EQ(*r1 * *r1, one(f));
    EXPECT_FALSE(sqrt_unit(-one(f)).has_value());
    // 2cos(2 pi / 5) has a negative conjugate.
    EXPECT_FALSE(sqrt_unit(real_period_unit(f, 0)).has_value());
}

TEST(Weil, SqrtUnitRoundTrip)
{
    std::mt19937_64 rng(17);
    for (std::uint64_t r : {5u, 17u}) {
        auto f = build_field(r);
        const unsigned half = f->degree() / 2;
        for (int trial = 0; trial < 8; ++trial) {
            KElem u0 = one(f);
            for (unsigned j = 0; j < half; ++j) {
                unsigned e = static_cast<unsigned>(rng() % 4);
                KElem b = real_period_unit(f, j);
                u0 = u0 * (rng() % 2 ? b.pow(e) : b.inverse().pow(e));
            }
            if (rng() % 2)
                u0 = -u0;
            ASSERT_EQ(u0.conj(), u0);
            auto got = sqrt_unit(u0 * u0);
            ASSERT_TRUE(got.has_value()) << u0.str();
            EXPECT_TRUE(*got == u0 || *got == -u0);
        }
    }
}

TEST(Weil, PiAndPi0ForEisensteinExample)
{
    auto f = build_field(3);
    SplitFiber fiber = primes_above(f, 7);
    std::size_t at4 = fiber[0].root == 4 ? 0 : 1;
    KElem z = cyc(f, {3, 1});
    WeilNumber pi = build_Pi(z, 1, fiber);
    EXPECT_EQ(pi.value, cyc(f, {8, 5}));
    EXPECT_EQ(pi.value * pi.value.conj(), KElem::from_rational(f, Rat(49)));
    EXPECT_EQ(pi.slopes[at4], 1);
    EXPECT_EQ(pi.slopes[1 - at4], 0);
    WeilNumber pi0 = build_Pi0(z, one(f), 1, fiber);
    EXPECT_EQ(pi0.value, z);
    EXPECT_TRUE(is_ordinary(pi0));
    EXPECT_EQ(pi0.value * pi0.value, pi.value);
}

TEST(Weil, CanonicalZIsEquivariant)
{
    auto f = build_field(5);
    KElem z = cyc(f, {2, 1, 0, 3});
    auto zs = canonical_Z(z, 4);
    ASSERT_EQ(zs.size(), 4u);
    EXPECT_EQ(zs[0], z);
    for (unsigned s = 0; s < 4; ++s)
        for (unsigned t = 0; t < 4; ++t)
            EXPECT_EQ(zs[(s + t) % 4], zs[s].galois(t));
}

TEST(Weil, EquivalenceExamples)
{
    auto f = build_field(3);
    SplitFiber fiber = primes_above(f, 7);
    WeilNumber a = make_weil(cyc(f, {3, 1}), fiber, 1);
    WeilNumber b = make_weil(cyc(f, {1, -2}), fiber, 1);
    EXPECT_TRUE(equivalent(a, b, fiber));
    EXPECT_TRUE(equivalent(a, make_weil(a.value.galois(1), fiber, 1), fiber));
    EXPECT_TRUE(equivalent(a, make_weil(a.value.pow(2), fiber, 2), fiber));
    EXPECT_THROW(equivalent(a, make_weil(KElem::from_rational(f, Rat(7)), fiber, 2), fiber), OrdinarityError);
}

TEST(Weil, ClassifyEisenstein)
{
    RunConfig cfg;
    Classification cls = classify_all(3, 7, cfg);
    ASSERT_EQ(cls.records.size(), 1u);
    const ClassRecord &rec = cls.records[0];
    EXPECT_EQ(rec.charpoly, (std::vector<Int>{7, -5, 1}));
    EXPECT_EQ(rec.c, 1u);
    EXPECT_EQ(rec.dim, 1u);
    EXPECT_EQ(rec.fod_exponent, 1u);
    ASSERT_TRUE(rec.pi0.has_value());
    EXPECT_EQ(rec.pi0->value, cyc(cls.field, {3, 1}));
    EXPECT_EQ(cls.q(), 7);
}

TEST(Weil, ClassifyRejectsBadInput)
{
    RunConfig cfg;
    EXPECT_THROW(classify_all(5, 7, cfg), SplitError);
    EXPECT_THROW(classify_all(9, 19, cfg), InputError);
    cfg.precision_bits = 8;
    EXPECT_THROW(classify_all(3, 7, cfg), InputError);
}

struct ClassCase {
    std::uint64_t r, p;
};

class ClassifyProperty : public ::testing::TestWithParam<ClassCase> {};

TEST_P(ClassifyProperty, RecordInvariants)
{
    auto [r, p] = GetParam();
    RunConfig cfg;
    Classification cls = classify_all(r, p, cfg);
    const FieldPtr &f = cls.field;
    const unsigned d = f->degree();
    const Int q = cls.q();
    for (const ClassRecord &rec : cls.records) {
        const Orbit &orb = cls.orbits[rec.orbit_id];
        EXPECT_EQ(rec.p_type_mask, orb.representative());
        EXPECT_EQ(principal_ideal(rec.z), ideal_pow(*f, rec.rep_ideal, rec.c));
        EXPECT_EQ(rec.u, rec.z * rec.z.conj() / Rat(q));
        EXPECT_EQ(rec.pi.value * rec.pi.value.conj(), KElem::from_rational(f, Rat(q * q)));
        EXPECT_TRUE(is_ordinary(rec.pi));
        ASSERT_TRUE(rec.pi0.has_value());
        EXPECT_EQ(rec.pi0->value * rec.pi0->value, rec.pi.value);
        EXPECT_EQ(rec.pi0->value * rec.pi0->value.conj(), KElem::from_rational(f, Rat(q)));
        for (const auto &s : rec.pi0->slopes)
            EXPECT_TRUE(s == 0 || s == 1);
        EXPECT_EQ(rec.dim, d / 2);
        ASSERT_EQ(rec.charpoly.size(), d + 1);
        EXPECT_EQ(rec.charpoly.front(), int_pow(q, d / 2));
        EXPECT_EQ(rec.charpoly.back(), 1);
        // Pi of sigma(B) is sigma(Pi(B)).
        auto zs = canonical_Z(rec.z, d);
        for (unsigned s = 0; s < d; ++s) {
            const HpIdeal &moved = cls.hp[orb.members[s]];
            EXPECT_EQ(principal_ideal(zs[s]), ideal_pow(*f, moved.ideal, rec.c));
            EXPECT_EQ(build_Pi(zs[s], rec.c, cls.fiber).value, rec.pi.value.galois(s));
        }
    }
}

TEST_P(ClassifyProperty, IndependentOfWorkerCount)
{
    auto [r, p] = GetParam();
    RunConfig one_worker, many;
    many.workers = 4;
    Classification a = classify_all(r, p, one_worker), b = classify_all(r, p, many);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].z, b.records[i].z);
        EXPECT_EQ(a.records[i].charpoly, b.records[i].charpoly);
    }
}

INSTANTIATE_TEST_SUITE_P(Shipped, ClassifyProperty,
                         ::testing::Values(ClassCase{3, 7}, ClassCase{3, 13}, ClassCase{5, 11}, ClassCase{5, 31},
                                           ClassCase{7, 11}, ClassCase{13, 3}));
