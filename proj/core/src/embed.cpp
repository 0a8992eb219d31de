#include "weil_atlas/embed.hpp"

#include <cmath>
#include <memory>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

// ---------------------------------------------------------------- Real

Real::Real(mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(const Real &o)
{
    mpfr_init2(value_, o.precision());
    mpfr_set(value_, o.value_, MPFR_RNDN);
}

Real::Real(Real &&o) noexcept
{
    mpfr_init2(value_, o.precision());
    mpfr_swap(value_, o.value_);
}

Real &Real::operator=(const Real &o)
{
    if (this != &o) {
        mpfr_set_prec(value_, o.precision());
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&o) noexcept
{
    mpfr_swap(value_, o.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_rational(const Rat &x, mpfr_prec_t prec, mpfr_rnd_t rnd)
{
    Real r(prec);
    mpfr_set_q(r.value_, x.get_mpq_t(), rnd);
    return r;
}

Real Real::from_double(double x, mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_set_d(r.value_, x, MPFR_RNDN);
    return r;
}

std::string Real::str(int digits) const
{
    std::unique_ptr<char[]> buf(new char[digits + 32]);
    mpfr_snprintf(buf.get(), digits + 32, "%.*Rg", digits, value_);
    return buf.get();
}

namespace {

constexpr mpfr_prec_t kRadiusPrec = 64;

// Upper bound for |x| * 2^(shift - prec(x)): a few ulps of x.
Real ulps(const Real &x, int shift)
{
    Real e(kRadiusPrec);
    mpfr_abs(e.get(), x.get(), MPFR_RNDU);
    mpfr_mul_2si(e.get(), e.get(), shift - static_cast<long>(x.precision()), MPFR_RNDU);
    return e;
}

void add_up(Real &acc, const Real &x) { mpfr_add(acc.get(), acc.get(), x.get(), MPFR_RNDU); }

Real mul_up(const Real &a, const Real &b)
{
    Real r(kRadiusPrec);
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

// |re + i im| rounded up.
Real hypot_up(const Real &re, const Real &im)
{
    Real r(kRadiusPrec);
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDU);
    return r;
}

} // namespace

// ---------------------------------------------------------------- balls

RealBall::RealBall(mpfr_prec_t prec) : mid(prec), rad(kRadiusPrec) {}

bool RealBall::contains(const Real &x) const
{
    Real diff(mid.precision() + 8);
    mpfr_sub(diff.get(), x.get(), mid.get(), MPFR_RNDN);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
    Real slack = ulps(diff, 2);
    add_up(slack, rad);
    return mpfr_lessequal_p(diff.get(), slack.get());
}

bool RealBall::contains(const Rat &x) const
{
    return contains(Real::from_rational(x, mid.precision() + 8));
}

bool RealBall::unique_integer(Int &out) const
{
    if (mpfr_cmp_d(rad.get(), 0.25) >= 0)
        return false;
    Real rounded(mid.precision());
    mpfr_rint(rounded.get(), mid.get(), MPFR_RNDN);
    Rat candidate;
    mpfr_get_z(out.get_mpz_t(), rounded.get(), MPFR_RNDN);
    candidate = out;
    return contains(candidate);
}

bool RealBall::excludes_all_integers() const
{
    Real lo(mid.precision() + 8), hi(mid.precision() + 8);
    mpfr_sub(lo.get(), mid.get(), rad.get(), MPFR_RNDD);
    mpfr_add(hi.get(), mid.get(), rad.get(), MPFR_RNDU);
    mpfr_ceil(lo.get(), lo.get());
    return mpfr_greater_p(lo.get(), hi.get());
}

double RealBall::width() const { return 2.0 * rad.to_double(); }

ComplexBall::ComplexBall(mpfr_prec_t prec) : re(prec), im(prec), rad(kRadiusPrec) {}

ComplexBall ComplexBall::exact(const Rat &x, mpfr_prec_t prec)
{
    ComplexBall b(prec);
    mpfr_set_q(b.re.get(), x.get_mpq_t(), MPFR_RNDN);
    b.rad = ulps(b.re, 1);
    return b;
}

ComplexBall ComplexBall::operator+(const ComplexBall &o) const
{
    ComplexBall b(re.precision());
    mpfr_add(b.re.get(), re.get(), o.re.get(), MPFR_RNDN);
    mpfr_add(b.im.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_add(b.rad.get(), rad.get(), o.rad.get(), MPFR_RNDU);
    add_up(b.rad, ulps(b.re, 1));
    add_up(b.rad, ulps(b.im, 1));
    return b;
}

ComplexBall ComplexBall::operator*(const ComplexBall &o) const
{
    const mpfr_prec_t prec = re.precision();
    ComplexBall b(prec);
    Real t1(prec), t2(prec);
    mpfr_mul(t1.get(), re.get(), o.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_sub(b.re.get(), t1.get(), t2.get(), MPFR_RNDN);
    Real err = ulps(t1, 1);
    add_up(err, ulps(t2, 1));
    add_up(err, ulps(b.re, 1));
    mpfr_mul(t1.get(), re.get(), o.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), im.get(), o.re.get(), MPFR_RNDN);
    mpfr_add(b.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    add_up(err, ulps(t1, 1));
    add_up(err, ulps(t2, 1));
    add_up(err, ulps(b.im, 1));
    // |z1 w - z0 w0| <= |z0| r_w + |w0| r_z + r_z r_w
    Real a0 = hypot_up(re, im);
    Real b0 = hypot_up(o.re, o.im);
    b.rad = mul_up(a0, o.rad);
    add_up(b.rad, mul_up(b0, rad));
    add_up(b.rad, mul_up(rad, o.rad));
    add_up(b.rad, err);
    return b;
}

ComplexBall ComplexBall::scaled(const Rat &c) const
{
    return *this * exact(c, re.precision());
}

ComplexBall ComplexBall::conj() const
{
    ComplexBall b(*this);
    mpfr_neg(b.im.get(), b.im.get(), MPFR_RNDN);
    return b;
}

RealBall ComplexBall::abs() const
{
    RealBall out(re.precision());
    mpfr_hypot(out.mid.get(), re.get(), im.get(), MPFR_RNDN);
    out.rad = ulps(out.mid, 2);
    add_up(out.rad, rad);
    return out;
}

RealBall ComplexBall::real_part() const
{
    RealBall out(re.precision());
    out.mid = re;
    out.rad = rad;
    return out;
}

bool ComplexBall::contains(const Rat &re_part, const Rat &im_part) const
{
    const mpfr_prec_t prec = re.precision() + 8;
    Real dr = Real::from_rational(re_part, prec);
    Real di = Real::from_rational(im_part, prec);
    mpfr_sub(dr.get(), dr.get(), re.get(), MPFR_RNDN);
    mpfr_sub(di.get(), di.get(), im.get(), MPFR_RNDN);
    Real dist = hypot_up(dr, di);
    Real slack = ulps(dist, 3);
    add_up(slack, rad);
    return mpfr_lessequal_p(dist.get(), slack.get());
}

std::string ComplexBall::str() const
{
    return "(" + re.str(25) + " + " + im.str(25) + "i) +/- " + rad.str(3);
}

// ---------------------------------------------------------------- embeddings

namespace {

mpfr_prec_t working_precision(unsigned precision_bits)
{
    if (precision_bits < 64)
        throw InputError("embedding precision must be at least 64 bits");
    return static_cast<mpfr_prec_t>(precision_bits) + 32;
}

// zeta^e under the identity embedding.
ComplexBall zeta_ball(std::uint64_t e, std::uint64_t r, mpfr_prec_t prec)
{
    ComplexBall z(prec);
    Real angle(prec + 16);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_ui(angle.get(), angle.get(), 2 * e, MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), r, MPFR_RNDN);
    mpfr_cos(z.re.get(), angle.get(), MPFR_RNDN);
    mpfr_sin(z.im.get(), angle.get(), MPFR_RNDN);
    // Angle error is a few ulps of a number below 2*pi at prec + 16 bits,
    // and cos/sin are 1-Lipschitz; add the final rounding of each part.
    mpfr_set_ui_2exp(z.rad.get(), 1, 8 - static_cast<long>(prec), MPFR_RNDU);
    return z;
}

ComplexBall combination(const std::vector<Rat> &coeffs, const std::vector<ComplexBall> &basis,
                        std::size_t shift, mpfr_prec_t prec)
{
    ComplexBall acc(prec);
    const std::size_t d = basis.size();
    for (std::size_t k = 0; k < d; ++k) {
        if (coeffs[k] == 0)
            continue;
        acc = acc + basis[(k + shift) % d].scaled(coeffs[k]);
    }
    return acc;
}

} // namespace

std::vector<ComplexBall> period_balls(const FieldContext &field, unsigned precision_bits)
{
    const mpfr_prec_t prec = working_precision(precision_bits);
    std::vector<ComplexBall> out;
    out.reserve(field.degree());
    for (unsigned j = 0; j < field.degree(); ++j) {
        ComplexBall acc(prec);
        for (auto e : field.period_exponents(j))
            acc = acc + zeta_ball(e, field.r(), prec);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<ComplexBall> embed(const KElem &x, unsigned precision_bits)
{
    const mpfr_prec_t prec = working_precision(precision_bits);
    auto periods = period_balls(x.field(), precision_bits);
    auto coeffs = x.coords();
    std::vector<ComplexBall> out;
    out.reserve(x.degree());
    for (unsigned j = 0; j < x.degree(); ++j)
        out.push_back(combination(coeffs, periods, j, prec));
    return out;
}

std::vector<ComplexBall> embed(const CycloElem &x, unsigned precision_bits)
{
    const mpfr_prec_t prec = working_precision(precision_bits);
    const std::uint64_t r = x.r();
    const std::uint64_t g = least_primitive_root(r);
    std::vector<ComplexBall> out;
    out.reserve(r - 1);
    std::uint64_t a = 1;
    for (std::uint64_t j = 0; j + 1 < r; ++j) {
        ComplexBall acc(prec);
        for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
            if (x.coeffs()[i] == 0)
                continue;
            ComplexBall term = i == 0 ? ComplexBall::exact(Rat(1), prec) : zeta_ball(i * a % r, r, prec);
            acc = acc + term.scaled(x.coeffs()[i]);
        }
        out.push_back(std::move(acc));
        a = a * g % r;
    }
    return out;
}

bool encloses_modulus(const ComplexBall &z, const Int &q)
{
    RealBall m = z.abs();
    Real root(m.mid.precision() + 8);
    mpfr_set_z(root.get(), q.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    return m.contains(root);
}

} // namespace weil_atlas
