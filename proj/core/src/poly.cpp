#include "weil_atlas/poly.hpp"

#include <algorithm>
#include <sstream>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

QPoly::QPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs))
{
    for (auto &c : coeffs_)
        c.canonicalize();
    trim();
}

QPoly QPoly::monomial(const Rat &c, unsigned degree)
{
    std::vector<Rat> v(degree + 1, Rat(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::from_integers(const std::vector<Int> &coeffs)
{
    std::vector<Rat> v;
    v.reserve(coeffs.size());
    for (const auto &c : coeffs)
        v.emplace_back(c);
    return QPoly(std::move(v));
}

void QPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

bool QPoly::has_integer_coeffs() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rat &c) { return c.get_den() == 1; });
}

std::vector<Int> QPoly::integer_coeffs() const
{
    if (!has_integer_coeffs())
        throw InvariantError("integer-coefficients", "polynomial " + str() + " is not integral");
    std::vector<Int> out;
    out.reserve(coeffs_.size());
    for (const auto &c : coeffs_)
        out.push_back(c.get_num());
    return out;
}

QPoly QPoly::operator+(const QPoly &o) const
{
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        v[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i)
        v[i] += o.coeffs_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const
{
    std::vector<Rat> v(coeffs_);
    for (auto &c : v)
        c = -c;
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly &o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly &o) const
{
    if (is_zero() || o.is_zero())
        return {};
    std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rat &c) const
{
    std::vector<Rat> v(coeffs_);
    for (auto &x : v)
        x *= c;
    return QPoly(std::move(v));
}

QPoly QPoly::pow(unsigned e) const
{
    QPoly result({Rat(1)});
    QPoly base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

QPoly QPoly::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Rat> v(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        v[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(v));
}

QPoly QPoly::monic() const
{
    if (is_zero())
        return {};
    return *this * (Rat(1) / leading());
}

QPoly QPoly::rem(const QPoly &divisor) const
{
    if (divisor.is_zero())
        throw InputError("polynomial division by zero");
    std::vector<Rat> r(coeffs_);
    const int dd = divisor.degree();
    const Rat lead_inv = Rat(1) / divisor.leading();
    for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
        if (r[k] == 0)
            continue;
        Rat f = r[k] * lead_inv;
        for (int i = 0; i <= dd; ++i)
            r[k - dd + i] -= f * divisor.coeffs_[i];
    }
    if (static_cast<int>(r.size()) > dd)
        r.resize(std::max(dd, 0));
    return QPoly(std::move(r));
}

Rat QPoly::eval(const Rat &x) const
{
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

int QPoly::sign_at(const Rat &x) const { return sgn(eval(x)); }

int QPoly::sign_at_pos_inf() const { return is_zero() ? 0 : sgn(leading()); }

int QPoly::sign_at_neg_inf() const
{
    if (is_zero())
        return 0;
    int s = sgn(leading());
    return degree() % 2 == 0 ? s : -s;
}

std::string QPoly::str(const char *var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat &c = coeffs_[i];
        if (c == 0)
            continue;
        Rat a = abs(c);
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        if (a != 1 || i == 0)
            os << a.get_str();
        if (i > 0) {
            if (a != 1)
                os << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly &f)
{
    std::vector<QPoly> seq{f, f.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = -(seq[seq.size() - 2].rem(seq.back()));
        if (r.is_zero())
            break;
        seq.push_back(r);
    }
    if (seq.back().is_zero())
        seq.pop_back();
    return seq;
}

template <typename SignFn> unsigned sign_changes(const std::vector<QPoly> &seq, SignFn sign)
{
    unsigned changes = 0;
    int last = 0;
    for (const auto &p : seq) {
        int s = sign(p);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

unsigned count_real_roots(const QPoly &f)
{
    if (f.degree() <= 0)
        return 0;
    auto seq = sturm_sequence(f);
    unsigned lo = sign_changes(seq, [](const QPoly &p) { return p.sign_at_neg_inf(); });
    unsigned hi = sign_changes(seq, [](const QPoly &p) { return p.sign_at_pos_inf(); });
    return lo - hi;
}

unsigned count_positive_roots(const QPoly &f)
{
    if (f.degree() <= 0)
        return 0;
    auto seq = sturm_sequence(f);
    const Rat zero(0);
    // Sturm counts roots in (a, b]; a root at 0 is excluded since a = 0.
    unsigned lo = sign_changes(seq, [&](const QPoly &p) { return p.sign_at(zero); });
    unsigned hi = sign_changes(seq, [](const QPoly &p) { return p.sign_at_pos_inf(); });
    return lo - hi;
}

} // namespace weil_atlas
