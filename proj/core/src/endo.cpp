#include "weil_atlas/endo.hpp"

#include "weil_atlas/errors.hpp"
#include "weil_atlas/weil.hpp"

namespace weil_atlas {

std::string to_string(EndoVerdict v)
{
    switch (v) {
    case EndoVerdict::commutative_cm_field:
        return "commutative_cm_field";
    case EndoVerdict::noncommutative:
        return "noncommutative";
    case EndoVerdict::supersingular:
        return "supersingular";
    }
    return "unknown";
}

namespace {

Rat frac(const Rat &x)
{
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rat out = x - Rat(fl);
    out.canonicalize();
    return out;
}

bool pi_squared_over_q_is_root_of_unity(const WeilNumber &pi)
{
    KElem ratio = pi.value * pi.value / Rat(pi.q());
    return is_root_of_unity(ratio);
}

} // namespace

std::vector<Rat> local_invariants(const WeilNumber &pi, const SplitFiber &fiber)
{
    if (pi.p != fiber.p())
        throw SplitError("Weil number and fiber live over different primes");
    std::vector<Rat> out;
    out.reserve(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        Rat slope = pi.slopes.size() == fiber.size() ? pi.slopes[i] : Rat(fiber.ord(pi.value, i), pi.j);
        slope.canonicalize();
        out.push_back(frac(slope));
    }
    return out;
}

EndoReport classify_endo(const WeilNumber &pi, const SplitFiber &fiber)
{
    EndoReport rep;
    rep.invariants = local_invariants(pi, fiber);
    rep.center_degree = static_cast<unsigned>(pi.minpoly.degree());
    const unsigned d = pi.value.field().degree();
    if (pi_squared_over_q_is_root_of_unity(pi)) {
        rep.verdict = EndoVerdict::supersingular;
        return rep;
    }
    bool all_zero = true;
    for (const auto &x : rep.invariants)
        all_zero = all_zero && x == 0;
    if (all_zero && rep.center_degree == d) {
        rep.verdict = EndoVerdict::commutative_cm_field;
        rep.dim = d / 2;
    } else {
        rep.verdict = EndoVerdict::noncommutative;
    }
    return rep;
}

EndoReport classify_endo(const WeilNumber &pi)
{
    if (!pi_squared_over_q_is_root_of_unity(pi))
        throw SplitError("local invariants need a completely split prime");
    EndoReport rep;
    rep.verdict = EndoVerdict::supersingular;
    rep.center_degree = static_cast<unsigned>(pi.minpoly.degree());
    return rep;
}

} // namespace weil_atlas
