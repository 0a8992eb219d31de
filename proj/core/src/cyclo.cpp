#include "weil_atlas/cyclo.hpp"

#include <sstream>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

namespace {

std::uint64_t check_r(std::uint64_t r)
{
    if (r < 3 || !is_prime(r))
        throw InputError("cyclotomic order must be an odd prime, got " + std::to_string(r));
    return r;
}

std::size_t reduce_exponent(long long e, std::uint64_t r)
{
    long long m = e % static_cast<long long>(r);
    if (m < 0)
        m += static_cast<long long>(r);
    return static_cast<std::size_t>(m);
}

} // namespace

CycloElem::CycloElem(std::uint64_t r) : r_(check_r(r)), coeffs_(r - 1, Rat(0)) {}

CycloElem::CycloElem(std::uint64_t r, std::vector<Rat> coeffs) : r_(check_r(r)), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != r - 1)
        throw InputError("CycloElem needs r-1 coefficients");
    for (auto &c : coeffs_)
        c.canonicalize();
}

CycloElem CycloElem::from_rational(std::uint64_t r, const Rat &x)
{
    CycloElem e(r);
    e.coeffs_[0] = x;
    return e;
}

CycloElem CycloElem::from_exponent_counts(std::uint64_t r, const std::vector<Rat> &counts)
{
    if (counts.size() != r)
        throw InputError("exponent counts must have length r");
    CycloElem e(r);
    // zeta^(r-1) = -(1 + zeta + ... + zeta^(r-2))
    for (std::size_t i = 0; i + 1 < r; ++i)
        e.coeffs_[i] = counts[i] - counts[r - 1];
    return e;
}

CycloElem CycloElem::zeta_power(std::uint64_t r, long long e)
{
    std::vector<Rat> counts(check_r(r), Rat(0));
    counts[reduce_exponent(e, r)] = 1;
    return from_exponent_counts(r, counts);
}

std::vector<Rat> CycloElem::normal_coords() const
{
    // x = sum_{i<r-1} c_i zeta^i and 1 = -sum_{e=1}^{r-1} zeta^e.
    std::vector<Rat> d(r_ - 1);
    for (std::size_t e = 1; e + 1 < r_; ++e)
        d[e - 1] = coeffs_[e] - coeffs_[0];
    d[r_ - 2] = -coeffs_[0];
    return d;
}

CycloElem CycloElem::from_normal_coords(std::uint64_t r, const std::vector<Rat> &d)
{
    if (d.size() != r - 1)
        throw InputError("normal coordinates need r-1 entries");
    std::vector<Rat> counts(r, Rat(0));
    for (std::size_t e = 1; e < r; ++e)
        counts[e] = d[e - 1];
    return from_exponent_counts(r, counts);
}

bool CycloElem::is_zero() const
{
    for (const auto &c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool CycloElem::is_rational() const
{
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

CycloElem CycloElem::operator+(const CycloElem &o) const
{
    CycloElem e(*this);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        e.coeffs_[i] += o.coeffs_[i];
    return e;
}

CycloElem CycloElem::operator-() const
{
    CycloElem e(*this);
    for (auto &c : e.coeffs_)
        c = -c;
    return e;
}

CycloElem CycloElem::operator-(const CycloElem &o) const { return *this + (-o); }

CycloElem CycloElem::operator*(const CycloElem &o) const
{
    if (r_ != o.r_)
        throw InputError("CycloElem operands live in different fields");
    // Multiply in Z[x]/(x^r - 1), then reduce by Phi_r.
    std::vector<Rat> counts(r_, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            if (o.coeffs_[j] == 0)
                continue;
            counts[(i + j) % r_] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return from_exponent_counts(r_, counts);
}

CycloElem CycloElem::operator*(const Rat &c) const
{
    CycloElem e(*this);
    for (auto &x : e.coeffs_)
        x *= c;
    return e;
}

CycloElem CycloElem::pow(unsigned e) const
{
    CycloElem result = from_rational(r_, Rat(1));
    CycloElem base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

std::string CycloElem::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        if (!first)
            os << " + ";
        os << coeffs_[i].get_str();
        if (i == 1)
            os << "*z";
        else if (i > 1)
            os << "*z^" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

CycloElem cyclo_mul(const CycloElem &a, const CycloElem &b) { return a * b; }

CycloElem galois_apply(long long a, const CycloElem &x)
{
    const std::uint64_t r = x.r();
    std::size_t am = reduce_exponent(a, r);
    if (am == 0)
        throw InputError("Galois exponent must be a unit modulo r");
    std::vector<Rat> counts(r, Rat(0));
    for (std::size_t i = 0; i < x.coeffs().size(); ++i)
        counts[(i * am) % r] += x.coeffs()[i];
    return CycloElem::from_exponent_counts(r, counts);
}

} // namespace weil_atlas
