#include "weil_atlas/field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

// ---------------------------------------------------------------- KElem

KElem::KElem(FieldPtr field) : field_(std::move(field))
{
    num_.assign(field_->degree(), Int(0));
}

KElem::KElem(FieldPtr field, std::vector<Int> num, Int den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den))
{
    normalize();
}

void KElem::normalize()
{
    if (den_ == 0)
        throw InputError("zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        for (auto &c : num_)
            c = -c;
    }
    if (den_ == 1)
        return;
    Int g = den_;
    for (const auto &c : num_) {
        if (g == 1)
            break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g != 1) {
        for (auto &c : num_)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

KElem KElem::from_rational(FieldPtr field, const Rat &x)
{
    // 1 = -(eta_0 + ... + eta_(d-1))
    const unsigned d = field->degree();
    return KElem(std::move(field), std::vector<Int>(d, Int(-x.get_num())), x.get_den());
}

KElem KElem::from_coords(FieldPtr field, const std::vector<Rat> &coords)
{
    if (coords.size() != field->degree())
        throw InputError("KElem needs exactly [K:Q] coordinates");
    Int den = 1;
    for (const auto &c : coords)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> num(coords.size());
    for (size_t i = 0; i < coords.size(); ++i)
        num[i] = coords[i].get_num() * (den / coords[i].get_den());
    return KElem(std::move(field), std::move(num), std::move(den));
}

KElem KElem::from_integers(FieldPtr field, std::vector<Int> coords, Int den)
{
    if (coords.size() != field->degree())
        throw InputError("KElem needs exactly [K:Q] coordinates");
    return KElem(std::move(field), std::move(coords), std::move(den));
}

KElem KElem::period(FieldPtr field, unsigned j)
{
    KElem e(field);
    e.num_.at(j) = 1;
    return e;
}

KElem KElem::from_cyclo(FieldPtr field, const CycloElem &x)
{
    if (x.r() != field->r())
        throw InputError("cyclotomic element belongs to a different r");
    auto d = x.normal_coords();
    const unsigned deg = field->degree();
    std::vector<Rat> coords(deg);
    for (unsigned j = 0; j < deg; ++j) {
        const auto &exps = field->period_exponents(j);
        coords[j] = d[exps.front() - 1];
        for (auto e : exps)
            if (d[e - 1] != coords[j])
                throw InputError("element of Q(zeta_r) is not fixed by H: " + x.str());
    }
    return from_coords(std::move(field), coords);
}

unsigned KElem::degree() const { return field_->degree(); }

Rat KElem::coord(unsigned j) const
{
    Rat c(num_.at(j), den_);
    c.canonicalize();
    return c;
}

std::vector<Rat> KElem::coords() const
{
    std::vector<Rat> out;
    out.reserve(num_.size());
    for (unsigned j = 0; j < num_.size(); ++j)
        out.push_back(coord(j));
    return out;
}

bool KElem::is_zero() const
{
    for (const auto &c : num_)
        if (c != 0)
            return false;
    return true;
}

bool KElem::is_rational() const
{
    for (const auto &c : num_)
        if (c != num_.front())
            return false;
    return true;
}

Rat KElem::to_rational() const
{
    if (!is_rational())
        throw InputError("element is not rational");
    Rat v(-num_.front(), den_);
    v.canonicalize();
    return v;
}

KElem KElem::operator+(const KElem &o) const
{
    std::vector<Int> num(num_.size());
    if (den_ == o.den_) {
        for (size_t i = 0; i < num.size(); ++i)
            num[i] = num_[i] + o.num_[i];
        return KElem(field_, std::move(num), den_);
    }
    for (size_t i = 0; i < num.size(); ++i)
        num[i] = num_[i] * o.den_ + o.num_[i] * den_;
    return KElem(field_, std::move(num), den_ * o.den_);
}

KElem KElem::operator-() const
{
    KElem e(*this);
    for (auto &c : e.num_)
        c = -c;
    return e;
}

KElem KElem::operator-(const KElem &o) const { return *this + (-o); }

KElem KElem::operator*(const KElem &o) const
{
    const FieldContext &f = *field_;
    const unsigned d = f.degree();
    std::vector<Int> acc(d, Int(0));
    Int prod;
    for (unsigned i = 0; i < d; ++i) {
        if (num_[i] == 0)
            continue;
        for (unsigned j = 0; j < d; ++j) {
            if (o.num_[j] == 0)
                continue;
            prod = num_[i] * o.num_[j];
            for (const auto &t : f.product_terms(i, j)) {
                if (t.coeff > 0)
                    mpz_addmul_ui(acc[t.index].get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(t.coeff));
                else
                    mpz_submul_ui(acc[t.index].get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(-t.coeff));
            }
        }
    }
    return KElem(field_, std::move(acc), den_ * o.den_);
}

KElem KElem::operator*(const Rat &c) const
{
    std::vector<Int> num(num_);
    for (auto &x : num)
        x *= c.get_num();
    return KElem(field_, std::move(num), den_ * c.get_den());
}

KElem KElem::operator/(const Rat &c) const
{
    if (c == 0)
        throw InputError("division by zero");
    return *this * (Rat(1) / c);
}

KElem KElem::operator/(const KElem &o) const { return *this * o.inverse(); }

bool KElem::lex_less(const KElem &o) const
{
    for (unsigned j = 0; j < num_.size(); ++j) {
        int c = cmp(Rat(num_[j], den_), Rat(o.num_[j], o.den_));
        if (c != 0)
            return c < 0;
    }
    return false;
}

KElem KElem::galois(long long s) const
{
    const long long d = static_cast<long long>(num_.size());
    long long shift = ((s % d) + d) % d;
    if (shift == 0)
        return *this;
    std::vector<Int> num(num_.size());
    for (long long j = 0; j < d; ++j)
        num[(j + shift) % d] = num_[j];
    KElem e(field_);
    e.num_ = std::move(num);
    e.den_ = den_;
    return e;
}

KElem KElem::galois_by_unit(long long a) const
{
    return galois(static_cast<long long>(field_->dlog(a) % field_->degree()));
}

KElem KElem::conj() const { return galois(field_->rho_shift()); }

Rat KElem::trace() const
{
    // Tr(eta_j) = -1 for every period.
    Int s = 0;
    for (const auto &c : num_)
        s += c;
    Rat t(-s, den_);
    t.canonicalize();
    return t;
}

Rat KElem::norm() const
{
    // G is cyclic of order 2^n: fold the orbit in n multiplications.
    KElem t = *this;
    for (unsigned step = field_->degree() / 2; step >= 1; step /= 2)
        t = t * t.galois(step);
    return t.to_rational();
}

KElem KElem::inverse() const
{
    if (is_zero())
        throw InputError("inverse of zero");
    // Invariant: acc * x == t; at the end t = N(x).
    KElem t = *this;
    KElem acc = from_rational(field_, Rat(1));
    for (unsigned step = field_->degree() / 2; step >= 1; step /= 2) {
        KElem shifted = t.galois(step);
        acc = acc * shifted;
        t = t * shifted;
    }
    return acc / t.to_rational();
}

KElem KElem::pow(unsigned e) const
{
    KElem result = from_rational(field_, Rat(1));
    KElem base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

unsigned KElem::orbit_length() const
{
    // Stabilizers are subgroups of the cyclic 2-group G, so test divisors.
    const unsigned d = field_->degree();
    for (unsigned s = 1; s < d; s *= 2)
        if (galois(s) == *this)
            return s;
    return d;
}

KElem KElem::sign_normalized() const
{
    for (const auto &c : num_) {
        if (c != 0)
            return c < 0 ? -*this : *this;
    }
    return *this;
}

KElem KElem::trace_normalized() const
{
    const int s = sgn(trace());
    if (s == 0)
        return sign_normalized();
    return s < 0 ? -*this : *this;
}

CycloElem KElem::to_cyclo() const
{
    const FieldContext &f = *field_;
    std::vector<Rat> d(f.r() - 1);
    for (std::uint64_t e = 1; e < f.r(); ++e)
        d[e - 1] = coord(f.period_of(e));
    return CycloElem::from_normal_coords(f.r(), d);
}

std::string KElem::str() const
{
    std::ostringstream os;
    os << "[";
    for (unsigned j = 0; j < num_.size(); ++j)
        os << (j ? ", " : "") << coord(j).get_str();
    os << "]";
    return os.str();
}

KElem k_conj(const KElem &x) { return x.conj(); }

QPoly min_poly(const KElem &x)
{
    const unsigned s = x.orbit_length();
    const FieldPtr &f = x.field_ptr();
    // Coefficients in K of prod_{k<s} (T - sigma^k x), ascending.
    std::vector<KElem> poly{KElem::from_rational(f, Rat(1))};
    for (unsigned k = 0; k < s; ++k) {
        KElem root = x.galois(k);
        std::vector<KElem> next(poly.size() + 1, KElem(f));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = next[i + 1] + poly[i];
            next[i] = next[i] - poly[i] * root;
        }
        poly = std::move(next);
    }
    std::vector<Rat> coeffs;
    coeffs.reserve(poly.size());
    for (const auto &c : poly) {
        if (!c.is_rational())
            throw InvariantError("min-poly-rational", "conjugate product has an irrational coefficient");
        coeffs.push_back(c.to_rational());
    }
    return QPoly(std::move(coeffs));
}

QPoly field_poly(const KElem &x)
{
    QPoly mp = min_poly(x);
    return mp.pow(x.degree() / static_cast<unsigned>(mp.degree()));
}

// ---------------------------------------------------------------- FieldContext

std::uint64_t FieldContext::dlog(long long a) const
{
    long long am = a % static_cast<long long>(r_);
    if (am < 0)
        am += static_cast<long long>(r_);
    if (am == 0)
        throw InputError("Galois exponent must be a unit modulo r");
    return dlog_[static_cast<std::size_t>(am)];
}

IntSquare FieldContext::multiplication_matrix(const KElem &x) const
{
    if (!x.is_integral())
        throw InputError("multiplication matrix needs an integral element");
    IntSquare mat(d_, IntRow(d_, Int(0)));
    const auto &a = x.numerators();
    for (unsigned i = 0; i < d_; ++i) {
        if (a[i] == 0)
            continue;
        for (unsigned j = 0; j < d_; ++j)
            for (const auto &t : product_terms(i, j))
                mat[t.index][j] += a[i] * t.coeff;
    }
    return mat;
}

std::string FieldContext::describe() const
{
    std::ostringstream os;
    os << "K^(" << r_ << "): n=" << n_ << " m=" << m_ << " [K:Q]=" << d_ << " g=" << g_
       << " min_poly(eta_0)=" << min_poly_eta_.str("x");
    return os.str();
}

RatSquare invert_matrix(const RatSquare &a)
{
    const size_t n = a.size();
    RatSquare m(a);
    RatSquare inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0)
            ++piv;
        if (piv == n)
            throw InvariantError("matrix-invertible", "singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat s = Rat(1) / m[col][col];
        for (size_t k = 0; k < n; ++k) {
            m[col][k] *= s;
            inv[col][k] *= s;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0)
                continue;
            Rat f = m[row][col];
            for (size_t k = 0; k < n; ++k) {
                m[row][k] -= f * m[col][k];
                inv[row][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

FieldPtr build_field(std::uint64_t r)
{
    if (r < 3 || !is_prime(r))
        throw InputError("r must be an odd prime, got " + std::to_string(r));

    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    FieldContext &f = *ctx;
    f.r_ = r;
    f.n_ = 0;
    f.m_ = r - 1;
    while (f.m_ % 2 == 0) {
        f.m_ /= 2;
        ++f.n_;
    }
    f.d_ = 1u << f.n_;
    f.g_ = least_primitive_root(r);

    f.dlog_.assign(r, 0);
    std::uint64_t power = 1;
    for (std::uint64_t k = 0; k + 1 < r; ++k) {
        f.dlog_[power] = k;
        power = power * f.g_ % r;
    }

    const std::uint64_t h = pow_mod(f.g_, f.d_, r);
    power = 1;
    for (std::uint64_t k = 0; k < f.m_; ++k) {
        f.subgroup_.push_back(power);
        power = power * h % r;
    }

    f.periods_.assign(f.d_, {});
    f.coset_of_.assign(r, 0);
    for (unsigned j = 0; j < f.d_; ++j) {
        std::uint64_t gj = pow_mod(f.g_, j, r);
        for (auto hh : f.subgroup_) {
            std::uint64_t e = gj * hh % r;
            f.periods_[j].push_back(e);
            f.coset_of_[e] = j;
        }
    }

    // eta_i * eta_j = sum over pairs of zeta^(a+b); each coset k is hit a
    // multiple of m times, and exponent 0 contributes 1 = -sum eta_k.
    const unsigned d = f.d_;
    f.mult_.assign(static_cast<size_t>(d) * d, {});
    for (unsigned i = 0; i < d; ++i) {
        for (unsigned j = 0; j < d; ++j) {
            std::vector<long> counts(d, 0);
            long zeros = 0;
            for (auto a : f.periods_[i])
                for (auto b : f.periods_[j]) {
                    std::uint64_t e = (a + b) % r;
                    if (e == 0)
                        ++zeros;
                    else
                        ++counts[f.coset_of_[e]];
                }
            auto &terms = f.mult_[i * d + j];
            for (unsigned k = 0; k < d; ++k) {
                if (counts[k] % static_cast<long>(f.m_) != 0)
                    throw InvariantError("period-product", "coset count not divisible by m");
                long c = counts[k] / static_cast<long>(f.m_) - zeros;
                if (c != 0)
                    terms.push_back({k, c});
            }
        }
    }

    f.period_values_.resize(d);
    for (unsigned j = 0; j < d; ++j) {
        std::complex<double> v = 0;
        for (auto e : f.periods_[j]) {
            double t = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(r);
            v += std::complex<double>(std::cos(t), std::sin(t));
        }
        f.period_values_[j] = v;
    }

    FieldPtr cptr = ctx;

    // Trace form Tr(eta_i * rho(eta_j)) = -(sum of coordinates of the product).
    f.gram_.assign(d, IntRow(d, Int(0)));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            long s = 0;
            for (const auto &t : f.product_terms(i, (j + f.rho_shift()) % d))
                s += t.coeff;
            f.gram_[i][j] = -s;
        }
    RatSquare gq(d, std::vector<Rat>(d));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j)
            gq[i][j] = f.gram_[i][j];
    f.gram_inv_ = invert_matrix(gq);

    KElem eta0 = KElem::period(cptr, 0);
    f.min_poly_eta_ = min_poly(eta0);
    if (f.min_poly_eta_.degree() != static_cast<int>(d) || !f.min_poly_eta_.has_integer_coeffs())
        throw InvariantError("min-poly-eta", "eta_0 does not generate K");

    f.eta_pow_.assign(d, IntRow(d));
    KElem pw = KElem::from_rational(cptr, Rat(1));
    RatSquare pq(d, std::vector<Rat>(d));
    for (unsigned k = 0; k < d; ++k) {
        for (unsigned j = 0; j < d; ++j) {
            f.eta_pow_[k][j] = pw.numerators()[j];
            pq[k][j] = pw.numerators()[j];
        }
        pw = pw * eta0;
    }
    f.eta_pow_inv_ = invert_matrix(pq);

    return cptr;
}

} // namespace weil_atlas
