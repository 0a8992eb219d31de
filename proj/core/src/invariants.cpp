#include "weil_atlas/invariants.hpp"

#include <set>

#include "weil_atlas/endo.hpp"
#include "weil_atlas/errors.hpp"

namespace weil_atlas {

namespace {

void field_checks(const FieldContext &f, const FieldPtr &field, CheckReport &rep)
{
    const unsigned d = f.degree();
    KElem sum = KElem::from_rational(field, Rat(0));
    for (unsigned j = 0; j < d; ++j) {
        KElem eta = KElem::period(field, j);
        sum = sum + eta;
        rep.check("period-trace", eta.trace() == -1, "Tr(eta_" + std::to_string(j) + ") != -1");
        rep.check("rho-shift", eta.conj() == KElem::period(field, (j + f.rho_shift()) % d),
                  "rho(eta_" + std::to_string(j) + ") is not a period shift");
        rep.check("sigma-shift", eta.galois(1) == KElem::period(field, (j + 1) % d),
                  "sigma(eta_" + std::to_string(j) + ") is not the next period");
    }
    rep.check("period-sum", sum == KElem::from_rational(field, Rat(-1)), "sum of periods != -1");
    const IntSquare &g = f.trace_gram();
    bool symmetric = true;
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j)
            symmetric = symmetric && g[i][j] == g[j][i];
    rep.check("trace-gram", symmetric && f.min_poly_eta().degree() == static_cast<int>(d),
              "trace Gram matrix not symmetric or eta_0 not of full degree");
}

void fiber_checks(const SplitFiber &fiber, CheckReport &rep)
{
    const FieldContext &f = fiber.field();
    const Int pz(static_cast<unsigned long>(fiber.p()));
    std::set<std::vector<Int>> residues;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        const PrimeAbove &P = fiber[i];
        residues.insert(P.residues);
        rep.check("prime-norm", P.ideal.norm() == pz, "prime " + std::to_string(i) + " has norm != p");
        bool kernel = true;
        for (unsigned j = 0; j < f.degree(); ++j) {
            KElem e = KElem::period(fiber.field_ptr(), j) - KElem::from_rational(fiber.field_ptr(), Rat(P.residues[j]));
            kernel = kernel && P.ideal.contains(e);
        }
        rep.check("prime-residues", kernel, "eta_j - a_j not in prime " + std::to_string(i));
        rep.check("rho-involution", fiber.rho(fiber.rho(i)) == i && fiber.rho(i) != i,
                  "rho is not a fixed-point-free involution at prime " + std::to_string(i));
        std::set<std::size_t> orbit;
        for (std::size_t s = 0; s < fiber.size(); ++s)
            orbit.insert(fiber.galois_image(i, static_cast<long long>(s)));
        rep.check("free-action-S", orbit.size() == fiber.size(), "G does not act freely on S(p)");
        rep.check("galois-ideal", ideal_galois(f, P.ideal, 1) == fiber[fiber.galois_image(i, 1)].ideal,
                  "sigma(P) disagrees with the action table");
    }
    rep.check("distinct-primes", residues.size() == fiber.size(), "two primes share a residue map");
    std::vector<std::pair<IdealHNF, unsigned>> all;
    for (const auto &P : fiber.primes())
        all.emplace_back(P.ideal, 1);
    rep.check("prime-product", ideal_product(f, all) == principal_ideal(KElem::from_rational(fiber.field_ptr(), Rat(pz))),
              "primes above p do not multiply to p*O_K");
}

void hp_checks(const Classification &cl, CheckReport &rep)
{
    const SplitFiber &fiber = cl.fiber;
    const FieldContext &f = *cl.field;
    const std::size_t half = fiber.size() / 2;
    rep.check("Hp-count", cl.hp.size() == (std::size_t(1) << half), "#H(p) != 2^(2^(n-1))");
    std::set<IntSquare> distinct;
    const IdealHNF p_ok = principal_ideal(KElem::from_rational(cl.field, Rat(fiber.p())));
    for (std::size_t mask = 0; mask < cl.hp.size(); ++mask) {
        const HpIdeal &b = cl.hp[mask];
        distinct.insert(b.ideal.basis());
        rep.check("Hp-mask", b.ptype.mask == mask, "H(p) is not indexed by mask");
        const HpIdeal &conj = cl.hp[conj_ptype(fiber, b.ptype).mask];
        rep.check("Hp-product", ideal_mul(f, b.ideal, conj.ideal) == p_ok, "B rho(B) != p O_K");
        rep.check("Hp-conj", ideal_conj(f, b.ideal) == conj.ideal, "rho(B) disagrees with the conjugate p-type");
        rep.check("Hp-bijection", primes_containing(fiber, b.ideal) == b.ptype.primes,
                  "primes containing B differ from its p-type");
        const HpIdeal &moved = cl.hp[galois_ptype(fiber, b.ptype, 1).mask];
        rep.check("Hp-equivariance", ideal_galois(f, b.ideal, 1) == moved.ideal, "Phi(sigma B) != sigma Phi(B)");
    }
    rep.check("Hp-distinct", distinct.size() == cl.hp.size(), "H(p) has repeated ideals");

    const std::size_t expected_orbits = std::size_t(1) << (half - f.n());
    rep.check("orbit-count", cl.orbits.size() == expected_orbits && cl.records.size() == expected_orbits,
              "orbit count != 2^(2^(n-1)-n)");
    std::set<std::uint64_t> covered;
    for (const auto &o : cl.orbits) {
        rep.check("free-action-H", o.members.size() == fiber.size() &&
                                        std::set<std::uint64_t>(o.members.begin(), o.members.end()).size() ==
                                            fiber.size(),
                  "orbit " + std::to_string(o.id) + " is not free");
        for (auto m : o.members) {
            covered.insert(m);
            rep.check("orbit-label", cl.hp[m].orbit_id == o.id, "orbit_id mislabelled");
        }
    }
    rep.check("orbit-partition", covered.size() == cl.hp.size(), "orbits do not cover H(p)");
}

void record_checks(const Classification &cl, const RunConfig &config, CheckReport &rep)
{
    const SplitFiber &fiber = cl.fiber;
    const FieldContext &f = *cl.field;
    const Int pz(static_cast<unsigned long>(fiber.p()));

    // Pi at every B of H(p), indexed by mask, via sigma-transport.
    std::vector<std::optional<KElem>> pi_of(cl.hp.size());
    std::vector<unsigned> c_of(cl.hp.size(), 0);
    for (const auto &rec : cl.records) {
        const Orbit &orbit = cl.orbits.at(rec.orbit_id);
        std::vector<KElem> zs = canonical_Z(rec.z, orbit.members.size());
        for (std::size_t s = 0; s < orbit.members.size(); ++s) {
            const std::uint64_t mask = orbit.members[s];
            const long long ss = static_cast<long long>(s);
            IdealHNF target = ideal_pow(f, cl.hp[mask].ideal, rec.c);
            rep.check("Z-generates", generates(zs[s], target), "Z(sigma B) does not generate (sigma B)^c");
            KElem pi_s = build_Pi(zs[s], rec.c, fiber).value;
            rep.check("Pi-equivariance", pi_s == rec.pi.value.galois(ss), "Pi(sigma B) != sigma Pi(B)");
            pi_of[mask] = pi_s;
            c_of[mask] = rec.c;
        }
        if (rec.pi0) {
            rep.check("Pi0-signs", rec.pi0_signs.size() == orbit.members.size(), "Pi0 signs not recorded");
        }
        const WeilNumber &lead = rec.pi0 ? *rec.pi0 : rec.pi;
        EndoReport er = classify_endo(lead, fiber);
        bool zero = true;
        for (const auto &x : er.invariants)
            zero = zero && x == 0;
        rep.check("endo-commutative", er.verdict == EndoVerdict::commutative_cm_field && zero && er.dim == f.degree() / 2,
                  "record " + std::to_string(rec.orbit_id) + " is not ordinary with commutative End");
        for (std::size_t s = 1; s < f.degree(); ++s) {
            WeilNumber moved = make_weil(lead.value.galois(static_cast<long long>(s)), fiber, lead.j);
            rep.check("endo-galois", classify_endo(moved, fiber).verdict == er.verdict, "verdict not Galois-stable");
        }
        for (std::size_t i = 0; i < fiber.size(); ++i) {
            Rat sum = er.invariants[i] + er.invariants[fiber.rho(i)];
            rep.check("invariant-rho", sum == 0 || sum == 1, "inv_P + inv_rho(P) not integral");
        }
    }

    // Kronecker: Pi1 O_K = Pi2 O_K iff Pi1 / Pi2 is a root of unity; the
    // ideals agree exactly when the masks do. Pi2^(-1) = rho(Pi2) / q^2.
    for (std::size_t a = 0; a < pi_of.size(); ++a)
        for (std::size_t b = 0; b < pi_of.size(); ++b) {
            if (!pi_of[a] || !pi_of[b] || c_of[a] != c_of[b])
                continue;
            Rat q2(int_pow(pz, 2 * c_of[a]));
            KElem ratio = *pi_of[a] * pi_of[b]->conj() / q2;
            rep.check("kronecker", is_root_of_unity(ratio) == (a == b), "ideal equality and root-of-unity ratio disagree");
        }

    // Honda equivalence: true within an orbit, false across orbits.
    for (std::size_t i = 0; i < cl.records.size(); ++i) {
        const WeilNumber &wi = cl.records[i].pi0 ? *cl.records[i].pi0 : cl.records[i].pi;
        for (std::size_t j = 0; j < cl.records.size(); ++j) {
            const WeilNumber &wj = cl.records[j].pi0 ? *cl.records[j].pi0 : cl.records[j].pi;
            rep.check("equivalence", equivalent(wi, wj, fiber) == (i == j), "equivalent() disagrees with orbit ids");
        }
        WeilNumber moved = make_weil(wi.value.galois(1), fiber, wi.j);
        rep.check("equivalence", equivalent(wi, moved, fiber), "pi not equivalent to sigma(pi)");
    }

    rep.merge(verify_certificate(to_certificate(cl), config));
}

} // namespace

CheckReport run_invariant_suite(const Classification &classes, const RunConfig &config)
{
    CheckReport rep;
    field_checks(*classes.field, classes.field, rep);
    fiber_checks(classes.fiber, rep);
    hp_checks(classes, rep);
    record_checks(classes, config, rep);
    return rep;
}

CheckReport nonsplit_sanity(std::uint64_t r, std::uint64_t p)
{
    CheckReport rep;
    if (splits_completely(r, p))
        throw InputError(std::to_string(p) + " splits completely; the non-split check needs an inert-type prime");
    FieldPtr field = build_field(r);
    // The roots of unity of K lie in mu_(2r); K contains zeta_r^k only when
    // H is trivial, and always contains -1.
    std::vector<KElem> units{KElem::from_rational(field, Rat(1)), KElem::from_rational(field, Rat(-1))};
    if (field->m() == 1) {
        for (std::uint64_t k = 1; k < r; ++k) {
            KElem z = KElem::from_cyclo(field, CycloElem::zeta_power(r, static_cast<long long>(k)));
            units.push_back(z);
            units.push_back(-z);
        }
    }
    const Rat p2(int_pow(Int(static_cast<unsigned long>(p)), 2));
    for (const auto &zeta : units) {
        KElem pi = zeta * Rat(p);
        rep.check("nonsplit-weil", is_weil(pi, p, 2), "p zeta^k is not a Weil p^2-number");
        rep.check("nonsplit-root-of-unity", is_root_of_unity(pi * pi / p2), "pi^2 / p^2 is not a root of unity");
        EndoReport er = classify_endo(make_weil(pi, p, 2));
        rep.check("nonsplit-supersingular", er.verdict == EndoVerdict::supersingular, "p zeta^k not supersingular");
    }
    return rep;
}

} // namespace weil_atlas
