#include "weil_atlas/weil.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <mpfr.h>

#include "weil_atlas/embed.hpp"
#include "weil_atlas/errors.hpp"

namespace weil_atlas {

bool is_ordinary(const WeilNumber &pi)
{
    if (pi.slopes.empty())
        throw InputError("ordinarity needs slopes over a split fiber");
    for (const auto &s : pi.slopes)
        if (s != 0 && s != 1)
            return false;
    return true;
}

bool is_root_of_unity(const KElem &x)
{
    if (x.is_zero() || !x.is_integral())
        return false;
    if (abs(x.norm()) != 1)
        return false;
    return x.pow(static_cast<unsigned>(2 * x.field().r())) == KElem::from_rational(x.field_ptr(), Rat(1));
}

std::vector<Int> frob_charpoly(const WeilNumber &pi, bool allow_degenerate)
{
    const unsigned d = pi.value.field().degree();
    if (pi.minpoly.degree() != static_cast<int>(d) && !allow_degenerate)
        throw DegenerateFieldError("Q(pi) has degree " + std::to_string(pi.minpoly.degree()) + " < " +
                                   std::to_string(d));
    return pi.minpoly.pow(d / static_cast<unsigned>(pi.minpoly.degree())).integer_coeffs();
}

bool equivalent(const WeilNumber &a, const WeilNumber &b, const SplitFiber &fiber)
{
    if (a.p != b.p || a.p != fiber.p())
        throw InputError("equivalence is decided over a single prime p");
    if (!is_ordinary(a) || !is_ordinary(b))
        throw OrdinarityError("equivalence is only decided for ordinary Weil numbers");
    PType pa = psi_of(a, fiber);
    PType pb = psi_of(b, fiber);
    for (std::size_t s = 0; s < fiber.size(); ++s)
        if (galois_ptype(fiber, pa, static_cast<long long>(s)) == pb)
            return true;
    return false;
}

std::vector<KElem> canonical_Z(const KElem &z_rep, std::size_t orbit_size)
{
    std::vector<KElem> out;
    out.reserve(orbit_size);
    for (std::size_t s = 0; s < orbit_size; ++s)
        out.push_back(z_rep.galois(static_cast<long long>(s)));
    return out;
}

namespace {

bool totally_positive(const KElem &u)
{
    QPoly f = min_poly(u);
    return count_positive_roots(f) == static_cast<unsigned>(f.degree());
}

// sqrt of a ball known to enclose a positive real; nullopt if the ball
// reaches 0 at this precision.
std::optional<ComplexBall> sqrt_positive(const ComplexBall &x, mpfr_prec_t prec)
{
    Real lo(prec);
    mpfr_sub(lo.get(), x.re.get(), x.rad.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0)
        return std::nullopt;
    ComplexBall out(prec);
    mpfr_sqrt(out.re.get(), x.re.get(), MPFR_RNDN);
    mpfr_set_zero(out.im.get(), 1);
    // |sqrt(y) - sqrt(re)| <= rad / sqrt(lo); plus one ulp of rounding.
    Real t(64);
    mpfr_sqrt(t.get(), lo.get(), MPFR_RNDD);
    mpfr_div(out.rad.get(), x.rad.get(), t.get(), MPFR_RNDU);
    Real ulp(64);
    mpfr_set(ulp.get(), out.re.get(), MPFR_RNDU);
    mpfr_abs(ulp.get(), ulp.get(), MPFR_RNDU);
    mpfr_mul_2si(ulp.get(), ulp.get(), 1 - static_cast<long>(prec), MPFR_RNDU);
    mpfr_add(out.rad.get(), out.rad.get(), ulp.get(), MPFR_RNDU);
    return out;
}

} // namespace

UnitInfo unit_of(const KElem &z, const Int &q)
{
    KElem u = z * z.conj() / Rat(q);
    if (!u.is_integral())
        throw InvariantError("unit-integral", "z rho(z) / q is not integral");
    if (abs(u.norm()) != 1)
        throw InvariantError("unit-norm", "z rho(z) / q is not a unit");
    if (u.conj() != u)
        throw InvariantError("unit-real", "z rho(z) / q is not fixed by rho");
    bool tp = totally_positive(u);
    return UnitInfo{std::move(u), tp};
}

std::optional<KElem> sqrt_unit(const KElem &u, unsigned precision_bits, unsigned max_precision)
{
    const FieldContext &f = u.field();
    const unsigned d = f.degree();
    const unsigned half = d / 2;
    if (u.conj() != u)
        throw InputError("sqrt_unit expects a rho-fixed element");
    if (!u.is_integral() || abs(u.norm()) != 1)
        throw InputError("sqrt_unit expects a unit");
    if (!totally_positive(u))
        return std::nullopt;
    if (precision_bits < 64)
        precision_bits = 64;

    for (unsigned prec = precision_bits; prec <= max_precision; prec *= 2) {
        auto u_emb = embed(u, prec);
        auto eta = period_balls(f, prec);
        std::vector<ComplexBall> roots;
        bool resolved = true;
        for (unsigned k = 0; k < half && resolved; ++k) {
            auto r = sqrt_positive(u_emb[k], prec + 32);
            if (!r)
                resolved = false;
            else
                roots.push_back(std::move(*r));
        }
        if (!resolved)
            continue;

        bool ambiguous = false;
        // sigma_k(u0) = s_k sqrt(sigma_k(u)) with s_0 = +1; rho pairs k with
        // k + d/2, which carries the same real value.
        const std::uint64_t patterns = std::uint64_t(1) << (half - 1);
        for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
            std::vector<Int> w(d);
            bool excluded = false;
            bool pattern_ambiguous = false;
            for (unsigned l = 0; l < d && !excluded; ++l) {
                // w_l = Tr(u0 rho(eta_l)) = 2 Re sum_{k < d/2} sigma_k(u0) eta_(l+k).
                ComplexBall acc = ComplexBall::exact(Rat(0), prec);
                for (unsigned k = 0; k < half; ++k) {
                    bool negative = k > 0 && ((pattern >> (k - 1)) & 1);
                    ComplexBall term = roots[k] * eta[(l + k) % d];
                    acc = acc + (negative ? term.scaled(Rat(-1)) : term);
                }
                RealBall wl = acc.scaled(Rat(2)).real_part();
                if (wl.excludes_all_integers())
                    excluded = true;
                else if (!wl.unique_integer(w[l]))
                    pattern_ambiguous = true;
            }
            if (excluded)
                continue;
            if (pattern_ambiguous) {
                ambiguous = true;
                continue;
            }
            const RatSquare &ginv = f.trace_gram_inverse();
            std::vector<Rat> c(d, Rat(0));
            for (unsigned i = 0; i < d; ++i)
                for (unsigned l = 0; l < d; ++l)
                    c[i] += ginv[i][l] * w[l];
            KElem u0 = KElem::from_coords(u.field_ptr(), c);
            if (u0.is_integral() && u0 * u0 == u)
                return u0;
        }
        if (!ambiguous)
            return std::nullopt;
    }
    throw PrecisionError("square root of a unit not separated within " + std::to_string(max_precision) + " bits");
}

WeilNumber build_Pi(const KElem &z, unsigned c, const SplitFiber &fiber)
{
    Int q = int_pow(Int(static_cast<unsigned long>(fiber.p())), c);
    KElem pi = z * Rat(q) / z.conj();
    if (!pi.is_integral())
        throw InvariantError("Pi-integral", "q z / rho(z) is not integral");
    return make_weil(pi, fiber, 2 * c);
}

WeilNumber build_Pi0(const KElem &z, const KElem &u0, unsigned c, const SplitFiber &fiber)
{
    KElem pi0 = (z / u0).trace_normalized();
    if (!pi0.is_integral())
        throw InvariantError("Pi0-integral", "z / u0 is not integral");
    return make_weil(pi0, fiber, c);
}

Int Classification::q() const
{
    unsigned c = 0;
    for (const auto &rec : records)
        c = std::max(c, rec.c);
    return int_pow(Int(static_cast<unsigned long>(fiber.p())), c);
}

ClassRecord build_record(const Orbit &orbit, const std::vector<HpIdeal> &hp, const SplitFiber &fiber,
                         const RunConfig &config)
{
    const FieldPtr &field = fiber.field_ptr();
    const FieldContext &f = *field;
    const unsigned d = f.degree();
    const HpIdeal &rep = hp.at(orbit.representative());

    GeneratorSearchOptions opts;
    opts.bound_multiplier = config.lll_bound_multiplier;
    PrincipalPower pp = principal_power(rep.ideal, field, config.exp_cap, opts);
    const unsigned c = pp.exponent;
    const KElem &z = pp.generator;
    const Int q = int_pow(Int(static_cast<unsigned long>(fiber.p())), c);

    UnitInfo ui = unit_of(z, q);
    if (!ui.totally_positive)
        throw InvariantError("unit-positive", "z rho(z) / q is not totally positive");

    WeilNumber pi = build_Pi(z, c, fiber);
    if (!is_ordinary(pi))
        throw InvariantError("Pi-ordinary", "Pi has a slope outside {0, 1}");
    if (!(psi_of(pi, fiber) == rep.ptype))
        throw InvariantError("Pi-ideal", "Pi O_K is not B^(2c)");

    std::optional<KElem> u0 = sqrt_unit(ui.u, config.precision_bits);
    std::optional<WeilNumber> pi0;
    std::vector<int> signs;
    if (u0) {
        pi0 = build_Pi0(z, *u0, c, fiber);
        if (pi0->value * pi0->value != pi.value)
            throw InvariantError("Pi0-square", "Pi0^2 != Pi");
        if (!is_ordinary(*pi0) || !(psi_of(*pi0, fiber) == rep.ptype))
            throw InvariantError("Pi0-ideal", "Pi0 O_K is not B^c");
        for (std::size_t s = 0; s < orbit.members.size(); ++s) {
            long long ss = static_cast<long long>(s);
            KElem moved = (z.galois(ss) / u0->galois(ss)).trace_normalized();
            KElem transported = pi0->value.galois(ss);
            if (moved == transported)
                signs.push_back(1);
            else if (moved == -transported)
                signs.push_back(-1);
            else
                throw InvariantError("Pi0-equivariance", "Pi0(sigma B) != +-sigma(Pi0(B))");
        }
    }

    const WeilNumber &lead = pi0 ? *pi0 : pi;
    if (conj_ptype(fiber, rep.ptype) == rep.ptype)
        throw InvariantError("full-field", "B = rho(B)");
    KElem power = lead.value;
    for (unsigned h = 1; h <= config.hmax; ++h) {
        if (power.orbit_length() != d)
            throw InvariantError("full-field", "Q(Pi^" + std::to_string(h) + ") != K");
        power = power * lead.value;
    }
    std::vector<Int> charpoly = frob_charpoly(lead);
    if (charpoly.front() != int_pow(lead.q(), d / 2))
        throw InvariantError("charpoly-constant", "constant term of the charpoly is not q^(d/2)");

    return ClassRecord{orbit.id,
                       rep.ptype.mask,
                       rep.ideal,
                       c,
                       z,
                       ui.u,
                       u0,
                       std::move(pi),
                       std::move(pi0),
                       std::move(charpoly),
                       d / 2,
                       u0 ? c : 2 * c,
                       std::move(signs)};
}

Classification classify_all(std::uint64_t r, std::uint64_t p, const RunConfig &config)
{
    config.validate();
    FieldPtr field = build_field(r);
    SplitFiber fiber = primes_above(field, p);
    std::vector<HpIdeal> hp = enumerate_Hp(fiber);
    std::vector<Orbit> orbits = g_orbits(hp, fiber);

    std::vector<std::optional<ClassRecord>> slots(orbits.size());
    std::vector<std::exception_ptr> errors(orbits.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < orbits.size(); i = next++) {
            try {
                slots[i] = build_record(orbits[i], hp, fiber, config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::min<std::size_t>(config.workers, std::max<std::size_t>(orbits.size(), 1));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    // The first failure in orbit order wins, independent of scheduling.
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<ClassRecord> records;
    records.reserve(slots.size());
    for (auto &s : slots)
        records.push_back(std::move(*s));
    return Classification{std::move(field), std::move(fiber), std::move(hp), std::move(orbits), std::move(records)};
}

} // namespace weil_atlas
