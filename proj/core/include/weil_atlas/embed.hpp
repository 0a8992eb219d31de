#pragma once

#include <string>
#include <vector>

#include <mpfr.h>

#include "weil_atlas/arith.hpp"
#include "weil_atlas/field.hpp"

namespace weil_atlas {

// Owning wrapper around an mpfr_t.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128);
    Real(const Real &o);
    Real(Real &&o) noexcept;
    Real &operator=(const Real &o);
    Real &operator=(Real &&o) noexcept;
    ~Real();

    static Real from_rational(const Rat &x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_double(double x, mpfr_prec_t prec);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string str(int digits = 20) const;

  private:
    mpfr_t value_;
};

// Real interval [mid - rad, mid + rad].
struct RealBall {
    Real mid;
    Real rad;

    explicit RealBall(mpfr_prec_t prec);
    bool contains(const Real &x) const;
    bool contains(const Rat &x) const;
    // The ball contains exactly one integer and has radius below 1/4; that
    // integer is written to out.
    bool unique_integer(Int &out) const;
    bool excludes_all_integers() const;
    double width() const;
};

// Complex disc { z : |z - (re + i im)| <= rad }.
struct ComplexBall {
    Real re;
    Real im;
    Real rad;

    explicit ComplexBall(mpfr_prec_t prec);
    static ComplexBall exact(const Rat &x, mpfr_prec_t prec);

    ComplexBall operator+(const ComplexBall &o) const;
    ComplexBall operator*(const ComplexBall &o) const;
    ComplexBall scaled(const Rat &c) const;
    ComplexBall conj() const;

    RealBall abs() const;
    RealBall real_part() const;
    bool contains(const Rat &re_part, const Rat &im_part = Rat(0)) const;
    double width() const { return 2.0 * rad.to_double(); }
    std::string str() const;
};

// Certified values of eta_j, j = 0..d-1, under the identity embedding.
std::vector<ComplexBall> period_balls(const FieldContext &field, unsigned precision_bits);

// Enclosures of sigma_(g^j)(x), j = 0..[K:Q]-1. Requires precision >= 64.
std::vector<ComplexBall> embed(const KElem &x, unsigned precision_bits);

// Enclosures of sigma_(g^j)(x) over all of Gal(Q(zeta_r)/Q), j = 0..r-2,
// g the least primitive root modulo r.
std::vector<ComplexBall> embed(const CycloElem &x, unsigned precision_bits);

// True iff | |z| - sqrt(q) | is compatible with the ball radius.
bool encloses_modulus(const ComplexBall &z, const Int &q);

} // namespace weil_atlas
