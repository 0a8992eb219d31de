#include "weil_atlas/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include <mpfr.h>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

// ---------------------------------------------------------------- IdealHNF

IdealHNF::IdealHNF(IntSquare basis) : basis_(std::move(basis)), norm_(1)
{
    const std::size_t d = basis_.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (basis_[i].size() != d)
            throw InputError("ideal basis must be square");
        if (basis_[i][i] <= 0)
            throw InputError("ideal basis must have a positive diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (basis_[i][j] != 0)
                throw InputError("ideal basis must be upper triangular");
        norm_ *= basis_[i][i];
    }
}

IdealHNF IdealHNF::unit(unsigned dim)
{
    IntSquare id(dim, IntRow(dim, Int(0)));
    for (unsigned i = 0; i < dim; ++i)
        id[i][i] = 1;
    return IdealHNF(std::move(id));
}

std::vector<IntVec> IdealHNF::columns() const
{
    const std::size_t d = basis_.size();
    std::vector<IntVec> cols(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            cols[j][i] = basis_[i][j];
    return cols;
}

bool IdealHNF::contains(const KElem &x) const
{
    if (!x.is_integral())
        return false;
    const std::size_t d = basis_.size();
    IntVec rest(x.numerators());
    Int c, rem;
    for (std::size_t k = d; k-- > 0;) {
        mpz_fdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), rest[k].get_mpz_t(), basis_[k][k].get_mpz_t());
        if (rem != 0)
            return false;
        if (c == 0)
            continue;
        for (std::size_t i = 0; i <= k; ++i)
            rest[i] -= c * basis_[i][k];
    }
    return true;
}

bool IdealHNF::operator<(const IdealHNF &o) const
{
    const std::size_t d = basis_.size();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            int c = cmp(basis_[i][j], o.basis_[i][j]);
            if (c != 0)
                return c < 0;
        }
    return false;
}

std::string IdealHNF::str() const
{
    std::ostringstream os;
    os << "HNF(norm=" << norm_.get_str() << ")[";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < basis_[i].size(); ++j)
            os << (j ? " " : "") << basis_[i][j].get_str();
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- arithmetic

IdealHNF principal_ideal(const KElem &x)
{
    if (x.is_zero() || !x.is_integral())
        throw InputError("principal_ideal needs a nonzero integral element");
    const FieldContext &f = x.field();
    IntSquare mx = f.multiplication_matrix(x);
    Int modulus = abs(x.norm().get_num());
    return IdealHNF(hnf_with_modulus(transpose(mx), modulus, f.degree()));
}

IdealHNF ideal_from_generators(const FieldContext &field, const std::vector<KElem> &gens, const Int &modulus)
{
    std::vector<IntVec> cols;
    for (const auto &gk : gens) {
        if (!gk.is_integral())
            throw InputError("ideal generators must be integral");
        for (unsigned j = 0; j < field.degree(); ++j)
            cols.push_back((gk * KElem::period(gk.field_ptr(), j)).numerators());
    }
    return IdealHNF(hnf_with_modulus(cols, modulus, field.degree()));
}

IdealHNF ideal_mul(const FieldContext &field, const IdealHNF &a, const IdealHNF &b)
{
    const unsigned d = field.degree();
    if (a.dim() != d || b.dim() != d)
        throw InputError("ideal dimension does not match the field");
    if (a.is_unit())
        return b;
    if (b.is_unit())
        return a;
    // Columns of (y * a) for y running over a Z-basis of b.
    std::vector<IntVec> gens;
    gens.reserve(static_cast<std::size_t>(d) * d);
    const auto bcols = b.columns();
    const auto &ab = a.basis();
    for (const auto &ycol : bcols) {
        IntSquare my(d, IntRow(d, Int(0)));
        for (unsigned i = 0; i < d; ++i) {
            if (ycol[i] == 0)
                continue;
            for (unsigned j = 0; j < d; ++j)
                for (const auto &t : field.product_terms(i, j))
                    my[t.index][j] += ycol[i] * t.coeff;
        }
        IntSquare prod = mat_mul(my, ab);
        for (unsigned c = 0; c < d; ++c) {
            IntVec v(d);
            for (unsigned r = 0; r < d; ++r)
                v[r] = prod[r][c];
            gens.push_back(std::move(v));
        }
    }
    return IdealHNF(hnf_with_modulus(gens, a.norm() * b.norm(), d));
}

IdealHNF ideal_pow(const FieldContext &field, const IdealHNF &a, unsigned e)
{
    IdealHNF result = IdealHNF::unit(field.degree());
    IdealHNF base = a;
    while (e) {
        if (e & 1)
            result = ideal_mul(field, result, base);
        e >>= 1;
        if (e)
            base = ideal_mul(field, base, base);
    }
    return result;
}

IdealHNF ideal_product(const FieldContext &field, const std::vector<std::pair<IdealHNF, unsigned>> &factors)
{
    IdealHNF result = IdealHNF::unit(field.degree());
    for (const auto &[ideal, e] : factors)
        if (e > 0)
            result = ideal_mul(field, result, ideal_pow(field, ideal, e));
    return result;
}

IdealHNF ideal_galois(const FieldContext &field, const IdealHNF &a, long long s)
{
    const long long d = field.degree();
    long long shift = ((s % d) + d) % d;
    if (shift == 0)
        return a;
    std::vector<IntVec> gens;
    for (const auto &col : a.columns()) {
        IntVec v(col.size());
        for (long long j = 0; j < d; ++j)
            v[(j + shift) % d] = col[j];
        gens.push_back(std::move(v));
    }
    return IdealHNF(hnf_with_modulus(gens, a.norm(), field.degree()));
}

IdealHNF ideal_conj(const FieldContext &field, const IdealHNF &a)
{
    return ideal_galois(field, a, field.rho_shift());
}

// ---------------------------------------------------------------- splitting

bool splits_completely(std::uint64_t r, std::uint64_t p)
{
    if (r < 3 || !is_prime(r))
        throw InputError("r must be an odd prime");
    if (!is_prime(p))
        throw InputError(std::to_string(p) + " is not prime");
    if (p == r)
        throw InputError("p = r is ramified in K^(r)");
    std::uint64_t m = r - 1;
    while (m % 2 == 0)
        m /= 2;
    // p mod r is a 2^n-th power iff its order divides m.
    return pow_mod(p % r, m, r) == 1;
}

namespace {

using ModVec = std::vector<std::uint64_t>;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    return pow_mod(a, p - 2, p);
}

// Basis of the null space of the rows x cols matrix a over F_p.
std::vector<ModVec> null_space(std::vector<ModVec> a, std::size_t cols, std::uint64_t p)
{
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[row], a[piv]);
        std::uint64_t inv = inv_mod(a[row][c], p);
        for (auto &x : a[row])
            x = mul_mod(x, inv, p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][c] == 0)
                continue;
            std::uint64_t f = a[i][c];
            for (std::size_t k = 0; k < cols; ++k)
                a[i][k] = (a[i][k] + p - mul_mod(f, a[row][k], p)) % p;
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    std::vector<ModVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        ModVec v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = (p - a[r][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

// x*y in O_K / modulus, in period coordinates.
std::vector<Int> mul_mod_ideal(const FieldContext &f, const std::vector<Int> &x, const std::vector<Int> &y,
                               const Int &modulus)
{
    const unsigned d = f.degree();
    std::vector<Int> out(d, Int(0));
    for (unsigned i = 0; i < d; ++i) {
        if (x[i] == 0)
            continue;
        for (unsigned j = 0; j < d; ++j) {
            if (y[j] == 0)
                continue;
            Int xy = x[i] * y[j];
            for (const auto &t : f.product_terms(i, j))
                out[t.index] += xy * t.coeff;
        }
    }
    for (auto &c : out)
        c = mod_floor(c, modulus);
    return out;
}

// Lift an idempotent known modulo p^from to p^to via e -> 3e^2 - 2e^3.
std::vector<Int> lift_idempotent(const FieldContext &f, std::vector<Int> e, const Int &p, unsigned from, unsigned to)
{
    unsigned cur = from;
    while (cur < to) {
        cur = std::min(2 * cur, to);
        Int mod = int_pow(p, cur);
        std::vector<Int> e2 = mul_mod_ideal(f, e, e, mod);
        std::vector<Int> e3 = mul_mod_ideal(f, e2, e, mod);
        for (unsigned k = 0; k < e.size(); ++k)
            e[k] = mod_floor(3 * e2[k] - 2 * e3[k], mod);
    }
    return e;
}

// iota_P(eta_j) = (eta_j e)_k / e_k for any coordinate k where e_k is a unit.
std::vector<Int> periods_from_idempotent(const FieldContext &f, const std::vector<Int> &e, const Int &p,
                                         unsigned precision)
{
    const unsigned d = f.degree();
    Int mod = int_pow(p, precision);
    unsigned k = 0;
    while (k < d && mpz_divisible_p(e[k].get_mpz_t(), p.get_mpz_t()))
        ++k;
    if (k == d)
        throw InvariantError("idempotent", "prime idempotent vanishes modulo p");
    Int inv = mod_inverse(e[k], mod);
    std::vector<Int> out(d);
    for (unsigned j = 0; j < d; ++j) {
        Int acc = 0;
        for (unsigned i = 0; i < d; ++i) {
            if (e[i] == 0)
                continue;
            for (const auto &t : f.product_terms(j, i))
                if (t.index == k)
                    acc += e[i] * t.coeff;
        }
        out[j] = mod_floor(acc * inv, mod);
    }
    return out;
}

// Ring homomorphisms O_K -> F_p, as residue vectors of the periods. They are
// the common eigenvectors a of the maps A_i with (A_i a)_j = sum_k T_ij[k] a_k,
// the eigenvalue of A_i being a_i, normalized by sum_j a_j = -1.
std::vector<ModVec> residue_vectors(const FieldContext &f, std::uint64_t p)
{
    const unsigned d = f.degree();
    Int pz(static_cast<unsigned long>(p));
    std::vector<std::vector<ModVec>> act(d, std::vector<ModVec>(d, ModVec(d, 0)));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j)
            for (const auto &t : f.product_terms(i, j))
                act[i][j][t.index] = mod_floor(Int(act[i][j][t.index]) + t.coeff, pz).get_ui();

    // Every eigenvalue of A_i is a conjugate residue of eta_0.
    std::vector<std::uint64_t> coeffs;
    for (const auto &c : f.min_poly_eta().integer_coeffs())
        coeffs.push_back(mod_floor(c, pz).get_ui());
    std::vector<std::uint64_t> roots;
    for (std::uint64_t t = 0; t < p; ++t) {
        unsigned __int128 acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = (acc * t + coeffs[i]) % p;
        if (acc == 0)
            roots.push_back(t);
    }

    std::vector<std::vector<ModVec>> pending;
    std::vector<ModVec> full(d, ModVec(d, 0));
    for (unsigned i = 0; i < d; ++i)
        full[i][i] = 1;
    pending.push_back(std::move(full));
    std::vector<ModVec> lines;
    while (!pending.empty()) {
        std::vector<ModVec> space = std::move(pending.back());
        pending.pop_back();
        if (space.size() == 1) {
            lines.push_back(std::move(space[0]));
            continue;
        }
        bool split = false;
        for (unsigned i = 0; i < d && !split; ++i) {
            std::vector<std::vector<ModVec>> pieces;
            std::size_t total = 0;
            for (std::uint64_t lambda : roots) {
                // Rows j of (A_i - lambda) applied to each basis vector of space.
                std::vector<ModVec> m(d, ModVec(space.size(), 0));
                for (std::size_t c = 0; c < space.size(); ++c)
                    for (unsigned j = 0; j < d; ++j) {
                        std::uint64_t acc = (p - mul_mod(lambda, space[c][j], p)) % p;
                        for (unsigned k = 0; k < d; ++k)
                            if (act[i][j][k] != 0 && space[c][k] != 0)
                                acc = (acc + mul_mod(act[i][j][k], space[c][k], p)) % p;
                        m[j][c] = acc;
                    }
                auto kernel = null_space(std::move(m), space.size(), p);
                if (kernel.empty())
                    continue;
                std::vector<ModVec> piece;
                for (const auto &coef : kernel) {
                    ModVec v(d, 0);
                    for (std::size_t c = 0; c < space.size(); ++c)
                        if (coef[c] != 0)
                            for (unsigned k = 0; k < d; ++k)
                                v[k] = (v[k] + mul_mod(coef[c], space[c][k], p)) % p;
                    piece.push_back(std::move(v));
                }
                total += piece.size();
                pieces.push_back(std::move(piece));
            }
            if (total != space.size())
                throw InvariantError("split-algebra", "O_K/p is not diagonalizable for p = " + std::to_string(p));
            if (pieces.size() > 1) {
                split = true;
                for (auto &piece : pieces)
                    pending.push_back(std::move(piece));
            }
        }
        if (!split)
            throw InvariantError("split-algebra", "periods do not separate the primes above " + std::to_string(p));
    }

    std::vector<ModVec> out;
    for (auto &v : lines) {
        std::uint64_t s = 0;
        for (auto x : v)
            s = (s + x) % p;
        if (s == 0)
            throw InvariantError("split-algebra", "eigenvector does not define a unital map");
        std::uint64_t scale = mul_mod(p - 1, inv_mod(s, p), p);
        for (auto &x : v)
            x = mul_mod(x, scale, p);
        for (unsigned i = 0; i < d; ++i)
            for (unsigned j = 0; j < d; ++j) {
                std::uint64_t rhs = 0;
                for (unsigned k = 0; k < d; ++k)
                    rhs = (rhs + mul_mod(act[i][j][k], v[k], p)) % p;
                if (mul_mod(v[i], v[j], p) != rhs)
                    throw InvariantError("split-algebra", "residue map is not multiplicative");
            }
        out.push_back(std::move(v));
    }
    return out;
}

// Idempotents of O_K/p dual to the residue vectors: e_P has residue 1 at P
// and 0 elsewhere.
std::vector<std::vector<Int>> idempotents_mod_p(const std::vector<ModVec> &residues, std::uint64_t p)
{
    const std::size_t d = residues.size();
    // Solve residues * E = I over F_p by elimination on [residues | I].
    std::vector<ModVec> aug(d, ModVec(2 * d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            aug[i][j] = residues[i][j];
        aug[i][d + i] = 1;
    }
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        while (piv < d && aug[piv][c] == 0)
            ++piv;
        if (piv == d)
            throw InvariantError("split-algebra", "residue maps are linearly dependent");
        std::swap(aug[c], aug[piv]);
        std::uint64_t inv = inv_mod(aug[c][c], p);
        for (auto &x : aug[c])
            x = mul_mod(x, inv, p);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == c || aug[i][c] == 0)
                continue;
            std::uint64_t f = aug[i][c];
            for (std::size_t k = 0; k < 2 * d; ++k)
                aug[i][k] = (aug[i][k] + p - mul_mod(f, aug[c][k], p)) % p;
        }
    }
    std::vector<std::vector<Int>> out(d, std::vector<Int>(d));
    for (std::size_t P = 0; P < d; ++P)
        for (std::size_t j = 0; j < d; ++j)
            out[P][j] = Int(static_cast<unsigned long>(aug[j][d + P]));
    return out;
}

// Sublattice {x in span(cols) : sum_j x_j a_j = 0 mod p^e}.
std::vector<IntVec> restrict_congruence(const std::vector<IntVec> &cols, const std::vector<Int> &a, const Int &p,
                                        unsigned e)
{
    const std::size_t d = a.size();
    Int mod = int_pow(p, e);
    std::vector<Int> values(cols.size());
    std::size_t best = cols.size();
    unsigned best_v = e;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Int y = 0;
        for (std::size_t j = 0; j < d; ++j)
            y += cols[c][j] * a[j];
        values[c] = mod_floor(y, mod);
        unsigned v = values[c] == 0 ? e : valuation(values[c], p);
        if (v < best_v) {
            best_v = v;
            best = c;
        }
    }
    if (best == cols.size())
        return cols;
    Int pw = int_pow(p, best_v);
    Int rest_mod = int_pow(p, e - best_v);
    Int unit_inv = mod_inverse(values[best] / pw, rest_mod);
    std::vector<IntVec> next;
    next.reserve(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c == best)
            continue;
        Int factor = mod_floor((values[c] / pw) * unit_inv, rest_mod);
        IntVec v(cols[c]);
        for (std::size_t j = 0; j < d; ++j)
            v[j] -= factor * cols[best][j];
        next.push_back(std::move(v));
    }
    IntVec v(cols[best]);
    for (auto &x : v)
        x *= rest_mod;
    next.push_back(std::move(v));
    return next;
}

constexpr unsigned kCachedPrecision = 16;
constexpr std::uint64_t kMaxSplitPrime = 20'000'000;

} // namespace

SplitFiber::SplitFiber(FieldPtr field, std::uint64_t p, std::vector<PrimeAbove> primes, unsigned cached_precision,
                       std::vector<std::vector<Int>> cached_idempotents)
    : field_(std::move(field)), p_(p), primes_(std::move(primes)), cached_precision_(cached_precision),
      cached_idempotents_(std::move(cached_idempotents))
{
    Int pz(static_cast<unsigned long>(p_));
    cached_padic_.reserve(cached_idempotents_.size());
    for (const auto &e : cached_idempotents_)
        cached_padic_.push_back(periods_from_idempotent(*field_, e, pz, cached_precision_));
}

std::size_t SplitFiber::galois_image(std::size_t i, long long s) const
{
    const long long d = static_cast<long long>(primes_.size());
    return primes_.at(i).g_action[static_cast<std::size_t>(((s % d) + d) % d)];
}

std::size_t SplitFiber::index_of_residues(const std::vector<Int> &residues) const
{
    for (std::size_t i = 0; i < primes_.size(); ++i)
        if (primes_[i].residues == residues)
            return i;
    throw InvariantError("prime-lookup", "no prime above p has the given residue vector");
}

std::vector<Int> SplitFiber::padic_periods(std::size_t i, unsigned precision) const
{
    Int p(static_cast<unsigned long>(p_));
    if (precision <= cached_precision_) {
        Int mod = int_pow(p, precision);
        std::vector<Int> out(cached_padic_.at(i));
        for (auto &x : out)
            x = mod_floor(x, mod);
        return out;
    }
    auto e = lift_idempotent(*field_, cached_idempotents_.at(i), p, cached_precision_, precision);
    return periods_from_idempotent(*field_, e, p, precision);
}

long SplitFiber::ord(const KElem &x, std::size_t i) const
{
    if (x.is_zero())
        throw InputError("valuation of zero");
    Int p(static_cast<unsigned long>(p_));
    unsigned precision = cached_precision_;
    for (;;) {
        auto a = padic_periods(i, precision);
        Int mod = int_pow(p, precision);
        Int y = 0;
        for (std::size_t j = 0; j < a.size(); ++j)
            y += x.numerators()[j] * a[j];
        y = mod_floor(y, mod);
        if (y != 0)
            return static_cast<long>(valuation(y, p)) - static_cast<long>(valuation(x.denominator(), p));
        precision *= 2;
    }
}

std::vector<long> SplitFiber::valuations(const KElem &x) const
{
    std::vector<long> v(primes_.size());
    for (std::size_t i = 0; i < primes_.size(); ++i)
        v[i] = ord(x, i);
    return v;
}

IdealHNF SplitFiber::ideal_with_exponents(const std::vector<unsigned> &exponents) const
{
    const unsigned d = field_->degree();
    if (exponents.size() != primes_.size())
        throw InputError("one exponent per prime above p is required");
    Int p(static_cast<unsigned long>(p_));
    std::vector<IntVec> cols = IdealHNF::unit(d).columns();
    unsigned max_e = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const unsigned e = exponents[i];
        if (e == 0)
            continue;
        max_e = std::max(max_e, e);
        cols = restrict_congruence(cols, padic_periods(i, e), p, e);
        cols = IdealHNF(hnf_with_modulus(cols, int_pow(p, max_e), d)).columns();
    }
    return IdealHNF(hnf_with_modulus(cols, max_e == 0 ? Int(1) : int_pow(p, max_e), d));
}

SplitFiber primes_above(FieldPtr field, std::uint64_t p)
{
    const FieldContext &f = *field;
    if (!splits_completely(f.r(), p))
        throw SplitError(std::to_string(p) + " does not split completely in K^(" + std::to_string(f.r()) + ")");
    if (p > kMaxSplitPrime)
        throw SizeError("root search modulo p is limited to p <= " + std::to_string(kMaxSplitPrime));
    const unsigned d = f.degree();
    Int pz(static_cast<unsigned long>(p));

    std::vector<ModVec> res = residue_vectors(f, p);
    if (res.size() != d)
        throw InvariantError("prime-count", "found " + std::to_string(res.size()) + " primes above " +
                                                std::to_string(p) + ", expected " + std::to_string(d));
    std::sort(res.begin(), res.end());
    if (std::adjacent_find(res.begin(), res.end()) != res.end())
        throw InvariantError("prime-count", "two primes above p share a residue map");

    std::vector<std::vector<Int>> idem = idempotents_mod_p(res, p);
    for (auto &e : idem)
        e = lift_idempotent(f, std::move(e), pz, 1, kCachedPrecision);

    std::vector<PrimeAbove> primes(d);
    for (unsigned i = 0; i < d; ++i) {
        PrimeAbove &P = primes[i];
        P.p = p;
        P.residues.resize(d);
        for (unsigned j = 0; j < d; ++j)
            P.residues[j] = Int(static_cast<unsigned long>(res[i][j]));
        P.root = P.residues[0];
        P.ideal = IdealHNF(hnf_with_modulus(restrict_congruence(IdealHNF::unit(d).columns(), P.residues, pz, 1), pz, d));
        if (P.ideal.norm() != pz)
            throw InvariantError("prime-norm", "prime above " + std::to_string(p) + " has norm " +
                                                   P.ideal.norm().get_str());
    }

    // sigma^s(P) has residue vector j -> a_(j - s).
    std::map<std::vector<Int>, std::size_t> by_residues;
    for (unsigned i = 0; i < d; ++i)
        by_residues[primes[i].residues] = i;
    for (unsigned i = 0; i < d; ++i) {
        primes[i].g_action.resize(d);
        for (unsigned s = 0; s < d; ++s) {
            std::vector<Int> shifted(d);
            for (unsigned j = 0; j < d; ++j)
                shifted[j] = primes[i].residues[(j + d - s) % d];
            auto it = by_residues.find(shifted);
            if (it == by_residues.end())
                throw InvariantError("galois-action", "sigma image of a prime is not above p");
            primes[i].g_action[s] = it->second;
            if (s > 0 && it->second == i)
                throw InvariantError("free-action", "a nontrivial sigma fixes a prime above p");
        }
        primes[i].rho_partner = primes[i].g_action[f.rho_shift()];
    }

    // The product of the primes is pO_K: they are distinct and comaximal, so
    // the product is their intersection, and the invertible residue matrix
    // makes O_K/p -> F_p^d injective.
    return SplitFiber(std::move(field), p, std::move(primes), kCachedPrecision, std::move(idem));
}

long ord_P(const KElem &x, const SplitFiber &fiber, std::size_t prime_index)
{
    return fiber.ord(x, prime_index);
}

// ---------------------------------------------------------------- generators

bool generates(const KElem &x, const IdealHNF &ideal)
{
    if (x.is_zero() || !x.is_integral())
        return false;
    if (abs(x.norm()) != Rat(ideal.norm()))
        return false;
    return ideal.contains(x);
}

namespace {

// floor(mult * d * N^(2/d)).
Int enumeration_bound(double mult, unsigned d, const Int &norm)
{
    mpfr_t t;
    mpfr_init2(t, 256);
    mpfr_set_z(t, norm.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(t, t, d, MPFR_RNDU);
    mpfr_sqr(t, t, MPFR_RNDU);
    mpfr_mul_ui(t, t, d, MPFR_RNDU);
    mpfr_mul_d(t, t, mult, MPFR_RNDU);
    Int out;
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
    return out;
}

} // namespace

std::optional<KElem> find_generator(const IdealHNF &ideal, const FieldPtr &field, const GeneratorSearchOptions &opts)
{
    const FieldContext &f = *field;
    const unsigned d = f.degree();
    if (ideal.dim() != d)
        throw InputError("ideal dimension does not match the field");
    if (!(opts.bound_multiplier > 0))
        throw InputError("bound multiplier must be positive");

    const IntSquare &h = ideal.basis();
    IntSquare gram = mat_mul(transpose(h), mat_mul(f.trace_gram(), h));
    LllResult lll = lll_reduce_gram(gram);
    IntSquare reduced = mat_mul(h, lll.transform);

    // Half of the complex embeddings of each reduced basis vector; the other
    // half are their conjugates.
    const unsigned half = d / 2;
    const auto &eta = f.period_values();
    std::vector<std::vector<std::complex<double>>> emb(d, std::vector<std::complex<double>>(half));
    for (unsigned c = 0; c < d; ++c)
        for (unsigned k = 0; k < half; ++k) {
            std::complex<double> s = 0;
            for (unsigned j = 0; j < d; ++j)
                s += reduced[j][c].get_d() * eta[(j + k) % d];
            emb[c][k] = s;
        }

    const double log_target = std::log(ideal.norm().get_d());
    const Int bound = enumeration_bound(opts.bound_multiplier, d, ideal.norm());
    // Candidates are ranked by T2 norm, then by larger trace, then
    // lexicographically, after fixing the sign by trace.
    std::optional<KElem> best;
    Int best_t2;
    Rat best_trace;
    std::vector<std::complex<double>> sig(half);
    auto visit = [&](const IntVec &x, const Int &t2) {
        std::fill(sig.begin(), sig.end(), std::complex<double>(0));
        for (unsigned c = 0; c < d; ++c) {
            if (x[c] == 0)
                continue;
            double xc = x[c].get_d();
            for (unsigned k = 0; k < half; ++k)
                sig[k] += xc * emb[c][k];
        }
        double lognorm = 0;
        for (unsigned k = 0; k < half; ++k)
            lognorm += 2.0 * std::log(std::abs(sig[k]));
        // Norms of elements of I are multiples of N(I); 0.25 separates N from 2N.
        if (std::abs(lognorm - log_target) > 0.25)
            return;
        KElem cand = KElem::from_integers(field, mat_vec(reduced, x));
        if (abs(cand.norm()) != Rat(ideal.norm()))
            return;
        cand = cand.trace_normalized();
        Rat tr = cand.trace();
        bool better = !best || t2 < best_t2 || (t2 == best_t2 && (tr > best_trace || (tr == best_trace && cand.lex_less(*best))));
        if (better) {
            best = std::move(cand);
            best_t2 = t2;
            best_trace = tr;
        }
    };
    EnumerationStats stats = enumerate_short_vectors(lll.gram, bound, visit, opts.node_cap);
    if (!stats.complete)
        throw SearchExhausted("generator enumeration exceeded " + std::to_string(opts.node_cap) + " nodes");
    if (best && !ideal.contains(*best))
        throw InvariantError("generator-membership", "enumerated vector left the ideal");
    return best;
}

std::optional<unsigned> tabulated_class_exponent(std::uint64_t r)
{
    switch (r) {
    case 3:
    case 5:
    case 7:
    case 13:
    case 17:
        return 1u;
    default:
        return std::nullopt;
    }
}

PrincipalPower principal_power(const IdealHNF &b, const FieldPtr &field, unsigned cap,
                               const GeneratorSearchOptions &opts, bool use_table)
{
    if (cap == 0)
        throw InputError("exponent cap must be positive");
    const FieldContext &f = *field;
    if (auto known = use_table ? tabulated_class_exponent(f.r()) : std::nullopt) {
        // Class numbers here are 1, so B itself is principal; a missing
        // generator means the enumeration bound is too small.
        IdealHNF power = ideal_pow(f, b, *known);
        if (auto z = find_generator(power, field, opts))
            return {*known, *z};
        throw SearchExhausted("no generator of B^" + std::to_string(*known) +
                              " within the enumeration bound; raise the bound multiplier");
    }
    IdealHNF power = b;
    for (unsigned k = 1; k <= cap; ++k) {
        if (k > 1)
            power = ideal_mul(f, power, b);
        if (auto z = find_generator(power, field, opts))
            return {k, *z};
    }
    throw ExponentCapError("no principal power B^k with k <= " + std::to_string(cap) + " was certified");
}

unsigned class_exponent(const IdealHNF &b, const FieldPtr &field, unsigned cap, const GeneratorSearchOptions &opts)
{
    return principal_power(b, field, cap, opts).exponent;
}

} // namespace weil_atlas
