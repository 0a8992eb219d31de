#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weil_atlas/arith.hpp"

namespace weil_atlas {

// Dense univariate polynomial over Q, ascending coefficients, no trailing
// zeros. The zero polynomial has an empty coefficient vector.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs);
    static QPoly monomial(const Rat &c, unsigned degree);
    static QPoly from_integers(const std::vector<Int> &coeffs);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rat> &coeffs() const { return coeffs_; }
    Rat coeff(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
    const Rat &leading() const { return coeffs_.back(); }

    bool is_monic() const { return !is_zero() && leading() == 1; }
    bool has_integer_coeffs() const;
    std::vector<Int> integer_coeffs() const;

    QPoly operator+(const QPoly &o) const;
    QPoly operator-(const QPoly &o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly &o) const;
    QPoly operator*(const Rat &c) const;
    bool operator==(const QPoly &o) const { return coeffs_ == o.coeffs_; }

    QPoly pow(unsigned e) const;
    QPoly derivative() const;
    QPoly monic() const;
    // Euclidean remainder; divisor must be nonzero.
    QPoly rem(const QPoly &divisor) const;

    Rat eval(const Rat &x) const;
    int sign_at(const Rat &x) const;
    // Sign of the polynomial as x -> +infinity (resp. -infinity).
    int sign_at_pos_inf() const;
    int sign_at_neg_inf() const;

    std::string str(const char *var = "T") const;

  private:
    void trim();
    std::vector<Rat> coeffs_;
};

// Number of distinct real roots of a squarefree polynomial (Sturm).
unsigned count_real_roots(const QPoly &f);
// Number of distinct roots in the open interval (0, +inf); f squarefree.
unsigned count_positive_roots(const QPoly &f);

} // namespace weil_atlas
