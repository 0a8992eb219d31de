#include "weil_atlas/oracle.hpp"

#include <algorithm>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

CycloElem jacobi_sum(std::uint64_t p, std::uint64_t r, std::uint64_t j)
{
    if (!is_prime(r) || r < 3)
        throw InputError("r must be an odd prime");
    if (!is_prime(p) || p % r != 1)
        throw InputError("the Jacobi sum needs a prime p = 1 mod r");
    if (j == 0 || j >= r)
        throw InputError("character index must lie in 1..r-1");
    const std::uint64_t g = least_primitive_root(p);
    std::vector<std::uint64_t> dlog(p, 0);
    std::uint64_t x = 1;
    for (std::uint64_t s = 0; s + 1 < p; ++s) {
        dlog[x] = s;
        x = x * g % p;
    }
    std::vector<Rat> counts(r, Rat(0));
    for (std::uint64_t t = 2; t < p; ++t) {
        std::uint64_t e = (j * (dlog[t] % r)) % r;
        int phi = (dlog[(p + 1 - t) % p] % 2 == 0) ? 1 : -1;
        counts[e] += phi;
    }
    return CycloElem::from_exponent_counts(r, counts);
}

namespace {

// F_(p^k) as F_p[x]/(f) for the lex-least monic irreducible f of degree k;
// elements are base-p digit vectors packed into an integer.
class FiniteField {
  public:
    FiniteField(std::uint64_t p, unsigned k) : p_(p), k_(k), modulus_(find_irreducible(p, k)) {}

    std::uint64_t size() const
    {
        std::uint64_t s = 1;
        for (unsigned i = 0; i < k_; ++i)
            s *= p_;
        return s;
    }

    std::vector<std::uint64_t> unpack(std::uint64_t x) const
    {
        std::vector<std::uint64_t> v(k_);
        for (unsigned i = 0; i < k_; ++i) {
            v[i] = x % p_;
            x /= p_;
        }
        return v;
    }

    std::uint64_t pack(const std::vector<std::uint64_t> &v) const
    {
        std::uint64_t x = 0;
        for (unsigned i = k_; i-- > 0;)
            x = x * p_ + v[i];
        return x;
    }

    std::vector<std::uint64_t> mul(const std::vector<std::uint64_t> &a, const std::vector<std::uint64_t> &b) const
    {
        std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i)
            for (unsigned j = 0; j < k_; ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        // Reduce with x^k = -sum_{i<k} f_i x^i.
        for (unsigned deg = 2 * k_ - 1; deg-- > k_;) {
            std::uint64_t c = prod[deg];
            if (c == 0)
                continue;
            prod[deg] = 0;
            for (unsigned i = 0; i < k_; ++i)
                prod[deg - k_ + i] = (prod[deg - k_ + i] + (p_ - modulus_[i]) * c) % p_;
        }
        prod.resize(k_);
        return prod;
    }

  private:
    // Coefficients f_0..f_(k-1) of the monic modulus.
    static std::vector<std::uint64_t> find_irreducible(std::uint64_t p, unsigned k)
    {
        if (k == 1)
            return {0};
        std::uint64_t total = 1;
        for (unsigned i = 0; i < k; ++i)
            total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<std::uint64_t> f(k);
            std::uint64_t c = code;
            // Lex order on (f_(k-1), ..., f_0).
            for (unsigned i = 0; i < k; ++i) {
                f[i] = c % p;
                c /= p;
            }
            if (is_irreducible(f, p))
                return f;
        }
        throw InvariantError("finite-field", "no irreducible polynomial found");
    }

    // No monic factor of degree 1..k/2.
    static bool is_irreducible(const std::vector<std::uint64_t> &f, std::uint64_t p)
    {
        const unsigned k = static_cast<unsigned>(f.size());
        std::vector<std::uint64_t> full(f);
        full.push_back(1);
        for (unsigned deg = 1; deg <= k / 2; ++deg) {
            std::uint64_t total = 1;
            for (unsigned i = 0; i < deg; ++i)
                total *= p;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::vector<std::uint64_t> h(deg + 1, 1);
                std::uint64_t c = code;
                for (unsigned i = 0; i < deg; ++i) {
                    h[i] = c % p;
                    c /= p;
                }
                std::vector<std::uint64_t> rem(full);
                for (unsigned top = k; top >= deg; --top) {
                    std::uint64_t lead = rem[top];
                    if (lead != 0)
                        for (unsigned i = 0; i <= deg; ++i)
                            rem[top - deg + i] = (rem[top - deg + i] + (p - h[i]) * lead) % p;
                    if (top == deg)
                        break;
                }
                if (std::all_of(rem.begin(), rem.begin() + deg, [](std::uint64_t v) { return v == 0; }))
                    return false;
            }
        }
        return true;
    }

    std::uint64_t p_;
    unsigned k_;
    std::vector<std::uint64_t> modulus_;
};

} // namespace

std::uint64_t point_count(std::uint64_t r, std::uint64_t p, unsigned k, std::uint64_t cap)
{
    if (!is_prime(p) || p == 2)
        throw InputError("point counts need an odd prime p");
    if (k == 0)
        throw InputError("extension degree must be positive");
    unsigned __int128 size = 1;
    for (unsigned i = 0; i < k; ++i) {
        size *= p;
        if (size > cap)
            throw SizeError("p^k exceeds the point-count cap of " + std::to_string(cap));
    }
    FiniteField field(p, k);
    const std::uint64_t q = field.size();
    std::vector<std::uint8_t> is_square(q, 0);
    for (std::uint64_t y = 0; y < q; ++y) {
        auto v = field.unpack(y);
        is_square[field.pack(field.mul(v, v))] = 1;
    }
    std::uint64_t affine = 0;
    for (std::uint64_t x = 0; x < q; ++x) {
        auto v = field.unpack(x);
        auto acc = v;
        for (std::uint64_t e = 1; e < r; ++e)
            acc = field.mul(acc, v);
        acc[0] = (acc[0] + p - 1) % p;
        std::uint64_t rhs = field.pack(acc);
        if (rhs == 0)
            affine += 1;
        else if (is_square[rhs])
            affine += 2;
    }
    return affine + 1;
}

unsigned oracle_k_max(std::uint64_t p, std::uint64_t cap)
{
    return (static_cast<unsigned __int128>(p) * p <= cap) ? 2 : 1;
}

Rat cyclo_trace(const CycloElem &x)
{
    Rat t = 0;
    for (const auto &c : x.normal_coords())
        t -= c;
    return t;
}

std::vector<JacobiRecord> calibrate_eigenvalues(std::uint64_t p, std::uint64_t r,
                                                const std::vector<PointCount> &counts)
{
    if (counts.empty())
        throw InputError("calibration needs at least one point count");
    std::vector<CycloElem> sums;
    for (std::uint64_t j = 1; j < r; ++j)
        sums.push_back(jacobi_sum(p, r, j));
    for (int sign : {1, -1}) {
        bool ok = true;
        for (const auto &pc : counts) {
            Rat power_sum = 0;
            for (const auto &js : sums)
                power_sum += cyclo_trace((js * Rat(sign)).pow(pc.k)) / Rat(static_cast<unsigned long>(r - 1));
            Rat expected = Rat(int_pow(Int(static_cast<unsigned long>(p)), pc.k)) + 1 - Rat(Int(std::to_string(pc.count)));
            if (power_sum != expected) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<JacobiRecord> out;
            for (std::uint64_t j = 1; j < r; ++j)
                out.push_back(JacobiRecord{j, sums[j - 1] * Rat(sign), sign, std::nullopt});
            return out;
        }
    }
    throw OracleMismatch("no global sign matches the point counts of y^2 = x^" + std::to_string(r) + " - 1 over F_" +
                         std::to_string(p));
}

OracleReport oracle_match(const Classification &classes, const RunConfig &config)
{
    const FieldContext &f = *classes.field;
    if (f.m() != 1)
        throw InputError("the curve oracle needs a Fermat prime r (K = Q(zeta_r)); r = " + std::to_string(f.r()));
    const std::uint64_t r = f.r();
    const std::uint64_t p = classes.fiber.p();

    OracleReport rep;
    rep.r = r;
    rep.p = p;
    const unsigned kmax = oracle_k_max(p, config.pointcount_cap);
    for (unsigned k = 1; k <= kmax; ++k)
        rep.counts.push_back(PointCount{k, point_count(r, p, k, config.pointcount_cap)});
    rep.eigenvalues = calibrate_eigenvalues(p, r, rep.counts);

    std::optional<std::size_t> orbit;
    for (auto &rec : rep.eigenvalues) {
        KElem alpha = KElem::from_cyclo(classes.field, rec.value);
        if (!is_weil(alpha, p, 1))
            throw OracleMismatch("eigenvalue " + rec.value.str() + " is not a Weil p-number");
        WeilNumber w = make_weil(alpha, classes.fiber, 1);
        if (!is_ordinary(w))
            throw OracleMismatch("eigenvalue " + rec.value.str() + " is not ordinary");
        WeilIdeal b = b_of_weil(w, classes.fiber);
        std::size_t id = classes.hp.at(b.ptype.mask).orbit_id;
        rec.matched_orbit = id;
        if (orbit && *orbit != id)
            throw OracleMismatch("eigenvalues land in orbits " + std::to_string(*orbit) + " and " + std::to_string(id));
        orbit = id;
        const ClassRecord &cls = classes.records.at(id);
        if (!equivalent(w, cls.pi0 ? *cls.pi0 : cls.pi, classes.fiber))
            throw OracleMismatch("eigenvalue is not equivalent to the record of its orbit");
    }
    rep.matched_orbit = *orbit;
    if (classes.records.size() == 1 && rep.matched_orbit != 0)
        throw OracleMismatch("unique class not matched");
    return rep;
}

} // namespace weil_atlas
