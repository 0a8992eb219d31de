#include "weil_atlas/certificate.hpp"

#include <algorithm>
#include <set>

#include "weil_atlas/embed.hpp"
#include "weil_atlas/errors.hpp"

namespace weil_atlas {

namespace {

const std::vector<std::string> kTopKeys = {"r", "p", "n", "m", "q", "class_count", "records"};
const std::vector<std::string> kRecordKeys = {"orbit_id",   "c",          "p_type_mask", "z_coords",
                                              "u_coords",   "u0_coords",  "pi_coords",   "pi0_coords",
                                              "charpoly",   "dim",        "fod_exponent"};

// JSON integer when it fits in 64 bits, decimal string otherwise.
Json int_json(const Int &x)
{
    if (x.fits_slong_p())
        return Json(x.get_si());
    return Json(x.get_str());
}

Json coords_json(const KElem &x)
{
    Json arr = Json::array();
    for (const auto &c : x.coords())
        arr.push_back(to_string(c));
    return arr;
}

Int json_int(const Json &j, const std::string &what)
{
    if (j.is_number_integer())
        return Int(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned())
        return Int(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Rat v = parse_rational(j.get<std::string>());
        if (v.get_den() != 1)
            throw InputError(what + " must be an integer");
        return v.get_num();
    }
    throw InputError(what + " must be an integer");
}

std::uint64_t json_u64(const Json &j, const std::string &what)
{
    Int v = json_int(j, what);
    if (v < 0 || !v.fits_ulong_p())
        throw InputError(what + " is out of range");
    return v.get_ui();
}

KElem json_coords(const Json &j, const FieldPtr &field, const std::string &what)
{
    if (!j.is_array() || j.size() != field->degree())
        throw InputError(what + " must be an array of " + std::to_string(field->degree()) + " coordinates");
    std::vector<Rat> c;
    for (const auto &x : j) {
        if (!x.is_string())
            throw InputError(what + " coordinates must be strings");
        c.push_back(parse_rational(x.get<std::string>()));
    }
    return KElem::from_coords(field, c);
}

void require_keys(const Json &obj, const std::vector<std::string> &keys, const std::string &what)
{
    if (!obj.is_object())
        throw InputError(what + " must be a JSON object");
    for (const auto &k : keys)
        if (!obj.contains(k))
            throw InputError(what + " lacks key '" + k + "'");
}

std::set<std::string> key_set(const Json &obj)
{
    std::set<std::string> out;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        out.insert(it.key());
    return out;
}

} // namespace

Json to_certificate(const Classification &classes)
{
    const FieldContext &f = *classes.field;
    Json doc;
    doc["r"] = f.r();
    doc["p"] = classes.fiber.p();
    doc["n"] = f.n();
    doc["m"] = f.m();
    doc["q"] = int_json(classes.q());
    doc["class_count"] = classes.records.size();
    Json records = Json::array();
    for (const auto &rec : classes.records) {
        Json j;
        j["orbit_id"] = rec.orbit_id;
        j["c"] = rec.c;
        j["p_type_mask"] = rec.p_type_mask;
        j["z_coords"] = coords_json(rec.z);
        j["u_coords"] = coords_json(rec.u);
        j["u0_coords"] = rec.u0 ? coords_json(*rec.u0) : Json(nullptr);
        j["pi_coords"] = coords_json(rec.pi.value);
        j["pi0_coords"] = rec.pi0 ? coords_json(rec.pi0->value) : Json(nullptr);
        Json cp = Json::array();
        for (const auto &c : rec.charpoly)
            cp.push_back(int_json(c));
        j["charpoly"] = std::move(cp);
        j["dim"] = rec.dim;
        j["fod_exponent"] = rec.fod_exponent;
        records.push_back(std::move(j));
    }
    doc["records"] = std::move(records);
    return doc;
}

void CheckReport::check(const std::string &name, bool ok, const std::string &detail)
{
    ++counts_[name];
    if (ok)
        ++passed_;
    else
        failures_.push_back(detail.empty() ? name : name + ": " + detail);
}

void CheckReport::merge(const CheckReport &o)
{
    passed_ += o.passed_;
    failures_.insert(failures_.end(), o.failures_.begin(), o.failures_.end());
    for (const auto &[k, v] : o.counts_)
        counts_[k] += v;
}

CheckReport verify_certificate(const Json &doc, const RunConfig &config)
{
    CheckReport rep;
    require_keys(doc, kTopKeys, "certificate");
    rep.check("schema", key_set(doc) == std::set<std::string>(kTopKeys.begin(), kTopKeys.end()),
              "unexpected top-level keys");

    const std::uint64_t r = json_u64(doc["r"], "r");
    const std::uint64_t p = json_u64(doc["p"], "p");
    if (r < 3 || !is_prime(r))
        throw InputError("r must be an odd prime");
    if (!splits_completely(r, p))
        throw SplitError(std::to_string(p) + " does not split completely");
    FieldPtr field = build_field(r);
    const FieldContext &f = *field;
    const unsigned d = f.degree();
    rep.check("field-shape", json_u64(doc["n"], "n") == f.n() && json_u64(doc["m"], "m") == f.m(),
              "n or m inconsistent with r");

    SplitFiber fiber = primes_above(field, p);
    const Json &records = doc["records"];
    if (!records.is_array())
        throw InputError("records must be an array");
    const std::uint64_t class_count = json_u64(doc["class_count"], "class_count");
    const std::uint64_t expected_count = std::uint64_t(1) << ((d / 2) - f.n());
    rep.check("class-count", class_count == records.size() && class_count == expected_count,
              "class_count " + std::to_string(class_count) + ", records " + std::to_string(records.size()) +
                  ", expected " + std::to_string(expected_count));

    const Int pz(static_cast<unsigned long>(p));
    unsigned max_c = 0;
    std::vector<PType> reps;
    std::vector<IdealHNF> rep_ideals;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Json &jr = records[i];
        const std::string tag = "record " + std::to_string(i);
        require_keys(jr, kRecordKeys, tag);
        rep.check("schema", key_set(jr) == std::set<std::string>(kRecordKeys.begin(), kRecordKeys.end()),
                  tag + " has unexpected keys");
        rep.check("orbit-id", json_u64(jr["orbit_id"], "orbit_id") == i, tag + " is out of order");

        const unsigned c = static_cast<unsigned>(json_u64(jr["c"], "c"));
        if (c == 0)
            throw InputError(tag + ": c must be positive");
        max_c = std::max(max_c, c);
        const std::uint64_t mask = json_u64(jr["p_type_mask"], "p_type_mask");
        if (d / 2 < 64 && (mask >> (d / 2)) != 0)
            throw InputError(tag + ": p_type_mask out of range");
        PType phi = ptype_from_mask(fiber, mask);
        reps.push_back(phi);
        const Int q = int_pow(pz, c);

        KElem z = json_coords(jr["z_coords"], field, "z_coords");
        KElem u = json_coords(jr["u_coords"], field, "u_coords");
        KElem pi = json_coords(jr["pi_coords"], field, "pi_coords");

        rep.guarded("z-generates", [&] {
            std::vector<unsigned> e(fiber.size(), 0);
            for (auto k : phi.primes)
                e[k] = c;
            rep.check("z-generates", generates(z, fiber.ideal_with_exponents(e)), tag + ": z does not generate B^c");
        });
        rep.guarded("unit", [&] {
            UnitInfo ui = unit_of(z, q);
            rep.check("unit", ui.u == u && ui.totally_positive, tag + ": u != z rho(z) / q or not totally positive");
        });
        rep.check("pi-formula", z.is_integral() && !u.is_zero() && pi == z * z / u, tag + ": pi != z^2 / u");
        rep.check("pi-weil", is_weil(pi, p, 2 * c), tag + ": pi rho(pi) != q^2");

        std::optional<KElem> pi0;
        if (jr["u0_coords"].is_null() != jr["pi0_coords"].is_null())
            throw InputError(tag + ": u0_coords and pi0_coords must be both present or both null");
        if (!jr["u0_coords"].is_null()) {
            KElem u0 = json_coords(jr["u0_coords"], field, "u0_coords");
            pi0 = json_coords(jr["pi0_coords"], field, "pi0_coords");
            rep.check("u0-square", u0 * u0 == u && u0.conj() == u0, tag + ": u0^2 != u or u0 not real");
            rep.check("pi0-formula", !u0.is_zero() && *pi0 == (z / u0).trace_normalized(),
                      tag + ": pi0 != +-z / u0 (trace-normalized)");
            rep.check("pi0-square", *pi0 * *pi0 == pi, tag + ": pi0^2 != pi");
            rep.check("pi0-weil", is_weil(*pi0, p, c), tag + ": pi0 rho(pi0) != q");
        } else {
            rep.guarded("u0-absent", [&] {
                rep.check("u0-absent", !sqrt_unit(u, config.precision_bits).has_value(),
                          tag + ": u has a square root but u0 is null");
            });
        }

        const KElem &lead = pi0 ? *pi0 : pi;
        const unsigned lead_j = pi0 ? c : 2 * c;
        rep.guarded("ordinary", [&] {
            WeilNumber w = make_weil(lead, fiber, lead_j);
            rep.check("ordinary", is_ordinary(w) && psi_of(w, fiber) == phi,
                      tag + ": slopes are not the 0/1 pattern of the p-type");
            std::vector<Int> cp;
            for (const auto &x : jr["charpoly"])
                cp.push_back(json_int(x, "charpoly coefficient"));
            rep.check("charpoly", cp == frob_charpoly(w), tag + ": charpoly differs from prod (T - sigma(pi))");
            rep.check("charpoly-constant",
                      cp.size() == d + 1 && cp.back() == 1 && cp.front() == int_pow(w.q(), d / 2),
                      tag + ": charpoly is not monic of degree d with constant q^(d/2)");
            KElem power = lead;
            bool full = conj_ptype(fiber, phi).mask != phi.mask;
            for (unsigned h = 1; h <= config.hmax && full; ++h) {
                full = power.orbit_length() == d;
                power = power * lead;
            }
            rep.check("full-field", full, tag + ": some power of pi generates a proper subfield");
            bool modulus = true;
            for (const auto &ball : embed(lead, config.precision_bits))
                modulus = modulus && encloses_modulus(ball, w.q());
            rep.check("embedding-modulus", modulus, tag + ": an embedding misses |x| = sqrt(q)");
        });
        rep.check("dim", json_u64(jr["dim"], "dim") == d / 2, tag + ": dim != 2^(n-1)");
        rep.check("fod-exponent", json_u64(jr["fod_exponent"], "fod_exponent") == (pi0 ? c : 2 * c),
                  tag + ": fod_exponent inconsistent with Pi0");

        rep.guarded("representative", [&] {
            // The representative has the least HNF in its orbit.
            std::vector<unsigned> e(fiber.size(), 0);
            for (auto k : phi.primes)
                e[k] = 1;
            IdealHNF b = fiber.ideal_with_exponents(e);
            bool least = true;
            for (std::size_t s = 1; s < fiber.size(); ++s) {
                PType moved = galois_ptype(fiber, phi, static_cast<long long>(s));
                std::vector<unsigned> em(fiber.size(), 0);
                for (auto k : moved.primes)
                    em[k] = 1;
                least = least && !(fiber.ideal_with_exponents(em) < b);
            }
            rep.check("representative", least, tag + ": representative is not the least HNF of its orbit");
            rep_ideals.push_back(std::move(b));
        });
    }
    rep.check("q-level", json_int(doc["q"], "q") == int_pow(pz, max_c), "q != p^max(c)");

    if (rep_ideals.size() == records.size())
        rep.check("orbit-order", std::is_sorted(rep_ideals.begin(), rep_ideals.end()),
                  "orbit ids do not follow representative order");

    bool distinct = true;
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b)
            for (std::size_t s = 0; s < fiber.size(); ++s)
                distinct = distinct && !(galois_ptype(fiber, reps[a], static_cast<long long>(s)) == reps[b]);
    rep.check("distinct-orbits", distinct, "two records lie in one G-orbit");
    return rep;
}

} // namespace weil_atlas
