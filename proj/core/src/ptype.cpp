#include "weil_atlas/ptype.hpp"

#include <algorithm>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

std::vector<RhoPair> rho_pairs(const SplitFiber &fiber)
{
    std::vector<RhoPair> pairs;
    // Fiber indices already follow residue order, so the smaller index is
    // the smaller-root member.
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        std::size_t j = fiber.rho(i);
        if (j == i)
            throw InvariantError("rho-free", "rho fixes a prime above p");
        if (i < j)
            pairs.push_back({i, j});
    }
    return pairs;
}

PType ptype_from_mask(const SplitFiber &fiber, std::uint64_t mask)
{
    auto pairs = rho_pairs(fiber);
    if (pairs.size() < 64 && (mask >> pairs.size()) != 0)
        throw InputError("p-type mask has bits beyond the number of rho-pairs");
    PType phi;
    phi.mask = mask;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        phi.primes.push_back(((mask >> k) & 1) ? pairs[k].high : pairs[k].low);
    std::sort(phi.primes.begin(), phi.primes.end());
    return phi;
}

bool is_ptype(const SplitFiber &fiber, const std::vector<std::size_t> &primes)
{
    if (primes.size() * 2 != fiber.size())
        return false;
    std::vector<int> hits(fiber.size(), 0);
    for (auto i : primes) {
        if (i >= fiber.size())
            return false;
        ++hits[i];
        ++hits[fiber.rho(i)];
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

PType ptype_from_primes(const SplitFiber &fiber, std::vector<std::size_t> primes)
{
    std::sort(primes.begin(), primes.end());
    if (!is_ptype(fiber, primes))
        throw InvariantError("p-type", "prime set does not meet every rho-pair exactly once");
    auto pairs = rho_pairs(fiber);
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (std::binary_search(primes.begin(), primes.end(), pairs[k].high))
            mask |= std::uint64_t(1) << k;
    return PType{mask, std::move(primes)};
}

PType galois_ptype(const SplitFiber &fiber, const PType &phi, long long s)
{
    std::vector<std::size_t> image;
    image.reserve(phi.primes.size());
    for (auto i : phi.primes)
        image.push_back(fiber.galois_image(i, s));
    return ptype_from_primes(fiber, std::move(image));
}

PType conj_ptype(const SplitFiber &fiber, const PType &phi)
{
    return galois_ptype(fiber, phi, fiber.field().rho_shift());
}

std::vector<HpIdeal> enumerate_Hp(const SplitFiber &fiber)
{
    const FieldContext &f = fiber.field();
    if (f.n() >= 6)
        throw SizeError("H(p) has 2^(2^" + std::to_string(f.n() - 1) + ") elements; enumeration stops at n = 5");
    if (fiber.size() != f.degree())
        throw SplitError("fiber is not a complete split fiber");
    const std::size_t half = fiber.size() / 2;
    const std::uint64_t count = std::uint64_t(1) << half;
    const IdealHNF p_ok = principal_ideal(KElem::from_rational(fiber.field_ptr(), Rat(fiber.p())));

    std::vector<HpIdeal> hp;
    hp.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        PType phi = ptype_from_mask(fiber, mask);
        std::vector<unsigned> e(fiber.size(), 0);
        for (auto i : phi.primes)
            e[i] = 1;
        IdealHNF b = fiber.ideal_with_exponents(e);
        if (b.norm() != int_pow(Int(static_cast<unsigned long>(fiber.p())), static_cast<unsigned long>(half)))
            throw InvariantError("Hp-norm", "ideal of mask " + std::to_string(mask) + " has the wrong norm");
        hp.push_back(HpIdeal{std::move(phi), std::move(b), kNoOrbit});
    }
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::uint64_t partner = conj_ptype(fiber, hp[mask].ptype).mask;
        if (partner != (~mask & (count - 1)))
            throw InvariantError("Hp-conjugate", "rho does not complement the p-type of mask " + std::to_string(mask));
        if (ideal_mul(f, hp[mask].ideal, hp[partner].ideal) != p_ok)
            throw InvariantError("Hp-product", "B * rho(B) != p O_K for mask " + std::to_string(mask));
    }
    return hp;
}

std::vector<std::size_t> primes_containing(const SplitFiber &fiber, const IdealHNF &ideal)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        // B is contained in P iff every basis column lies in P.
        bool inside = true;
        for (const auto &col : ideal.columns())
            if (!fiber[i].ideal.contains(KElem::from_integers(fiber.field_ptr(), col))) {
                inside = false;
                break;
            }
        if (inside)
            out.push_back(i);
    }
    return out;
}

std::vector<Orbit> g_orbits(std::vector<HpIdeal> &hp, const SplitFiber &fiber)
{
    const std::size_t d = fiber.size();
    std::vector<bool> seen(hp.size(), false);
    std::vector<Orbit> orbits;
    for (std::uint64_t mask = 0; mask < hp.size(); ++mask) {
        if (seen[mask])
            continue;
        std::vector<std::uint64_t> members;
        for (std::size_t s = 0; s < d; ++s) {
            std::uint64_t image = galois_ptype(fiber, hp[mask].ptype, static_cast<long long>(s)).mask;
            if (std::find(members.begin(), members.end(), image) != members.end())
                throw InvariantError("free-action", "G acts with a stabilizer on H(p) at mask " + std::to_string(mask));
            members.push_back(image);
            seen[image] = true;
        }
        // Rotate so the least HNF comes first; members[s] = sigma^s(rep) survives.
        std::size_t best = 0;
        for (std::size_t s = 1; s < d; ++s)
            if (hp[members[s]].ideal < hp[members[best]].ideal)
                best = s;
        std::rotate(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(best), members.end());
        orbits.push_back(Orbit{0, std::move(members)});
    }
    std::sort(orbits.begin(), orbits.end(), [&](const Orbit &a, const Orbit &b) {
        return hp[a.representative()].ideal < hp[b.representative()].ideal;
    });
    for (std::size_t id = 0; id < orbits.size(); ++id) {
        orbits[id].id = id;
        for (auto mask : orbits[id].members)
            hp[mask].orbit_id = id;
    }
    return orbits;
}

PType psi_of(const WeilNumber &pi, const SplitFiber &fiber)
{
    if (pi.slopes.size() != fiber.size())
        throw InputError("Weil number carries no slopes for this fiber");
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        const Rat &s = pi.slopes[i];
        if (s == 1)
            support.push_back(i);
        else if (s != 0)
            throw OrdinarityError("slope " + to_string(s) + " is not 0 or 1");
    }
    if (!is_ptype(fiber, support))
        throw OrdinarityError("slope-1 support is not a p-type");
    return ptype_from_primes(fiber, std::move(support));
}

WeilIdeal b_of_weil(const WeilNumber &pi, const SplitFiber &fiber)
{
    PType phi = psi_of(pi, fiber);
    std::vector<unsigned> e(fiber.size(), 0);
    for (auto i : phi.primes)
        e[i] = 1;
    IdealHNF b = fiber.ideal_with_exponents(e);
    // pi O_K is supported on S(p) (its norm is a power of p), so the
    // valuations determine it: pi O_K = prod_{P in Phi} P^j = B^j.
    Rat expected(int_pow(Int(static_cast<unsigned long>(fiber.p())), pi.j * static_cast<unsigned long>(phi.primes.size())));
    if (abs(pi.value.norm()) != expected)
        throw OrdinarityError("norm of pi is not q^(d/2)");
    return WeilIdeal{std::move(phi), std::move(b), pi.j};
}

} // namespace weil_atlas
