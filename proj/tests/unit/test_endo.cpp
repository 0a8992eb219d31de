#include <gtest/gtest.h>

#include "weil_atlas/config.hpp"
#include "weil_atlas/endo.hpp"
#include "weil_atlas/errors.hpp"
#include "weil_atlas/weil.hpp"

using namespace weil_atlas;

TEST(Endo, VerdictNames)
{
    EXPECT_EQ(to_string(EndoVerdict::commutative_cm_field), "commutative_cm_field");
    EXPECT_EQ(to_string(EndoVerdict::noncommutative), "noncommutative");
    EXPECT_EQ(to_string(EndoVerdict::supersingular), "supersingular");
}

TEST(Endo, OrdinaryRecordsAreCommutative)
{
    for (auto [r, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 7}, {5, 11}, {7, 11}, {13, 3}}) {
        Classification cls = classify_all(r, p, RunConfig{});
        for (const auto &rec : cls.records) {
            ASSERT_TRUE(rec.pi0.has_value());
            EndoReport rep = classify_endo(*rec.pi0, cls.fiber);
            EXPECT_EQ(rep.verdict, EndoVerdict::commutative_cm_field);
            EXPECT_EQ(rep.dim, cls.field->degree() / 2);
            EXPECT_EQ(rep.center_degree, cls.field->degree());
            for (const auto &inv : rep.invariants)
                EXPECT_EQ(inv, 0);
            EXPECT_EQ(classify_endo(rec.pi, cls.fiber).verdict, EndoVerdict::commutative_cm_field);
        }
    }
}

TEST(Endo, SupersingularControls)
{
    auto f = build_field(3);
    SplitFiber fiber = primes_above(f, 7);
    WeilNumber seven = make_weil(KElem::from_rational(f, Rat(7)), fiber, 2);
    auto inv = local_invariants(seven, fiber);
    ASSERT_EQ(inv.size(), 2u);
    for (const auto &x : inv)
        EXPECT_EQ(x, Rat(1, 2));
    EndoReport rep = classify_endo(seven, fiber);
    EXPECT_EQ(rep.verdict, EndoVerdict::supersingular);
    EXPECT_EQ(rep.dim, 0u);
    WeilNumber twisted = make_weil(KElem::from_rational(f, Rat(7)) * KElem::period(f, 0), fiber, 2);
    EXPECT_EQ(classify_endo(twisted, fiber).verdict, EndoVerdict::supersingular);
}

TEST(Endo, NoncommutativeWhenInvariantsDoNotVanish)
{
    Classification cls = classify_all(5, 11, RunConfig{});
    const auto &rec = cls.records[0];
    ASSERT_TRUE(rec.pi0.has_value());
    // pi = p * Pi0 is a Weil p^3-number with slopes in {1/3, 2/3}.
    WeilNumber pi = make_weil(rec.pi0->value * Rat(11), cls.fiber, 3);
    EndoReport rep = classify_endo(pi, cls.fiber);
    EXPECT_EQ(rep.verdict, EndoVerdict::noncommutative);
    for (const auto &x : rep.invariants)
        EXPECT_TRUE(x == Rat(1, 3) || x == Rat(2, 3));
}

TEST(Endo, NonsplitPrimes)
{
    auto f = build_field(7);
    // 3 is not a square mod 7, so it does not split completely.
    WeilNumber pi = make_weil(KElem::from_rational(f, Rat(3)), 3, 2);
    EXPECT_EQ(classify_endo(pi).verdict, EndoVerdict::supersingular);
    auto f5 = build_field(5);
    SplitFiber fiber = primes_above(f5, 11);
    WeilNumber other = make_weil(KElem::from_rational(build_field(3), Rat(7)), primes_above(build_field(3), 7), 2);
    EXPECT_THROW(local_invariants(other, fiber), SplitError);
}
