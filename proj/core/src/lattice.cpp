#include "weil_atlas/lattice.hpp"

#include <cmath>

#include "weil_atlas/errors.hpp"

namespace weil_atlas {

IntSquare transpose(const IntSquare &a)
{
    if (a.empty())
        return {};
    IntSquare t(a[0].size(), IntRow(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

IntSquare mat_mul(const IntSquare &a, const IntSquare &b)
{
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntSquare c(n, IntRow(m, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                mpz_addmul(c[i][j].get_mpz_t(), a[i][l].get_mpz_t(), b[l][j].get_mpz_t());
        }
    return c;
}

IntVec mat_vec(const IntSquare &a, const IntVec &x)
{
    IntVec y(a.size(), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0)
                mpz_addmul(y[i].get_mpz_t(), a[i][j].get_mpz_t(), x[j].get_mpz_t());
    return y;
}

Int quadratic_form(const IntSquare &gram, const IntVec &x)
{
    Int s = 0;
    IntVec gx = mat_vec(gram, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * gx[i];
    return s;
}

// ---------------------------------------------------------------- HNF

IntSquare hnf_with_modulus(const std::vector<IntVec> &generators, const Int &modulus, std::size_t dim)
{
    if (modulus <= 0)
        throw InputError("HNF modulus must be positive");
    // Working columns. The vectors modulus*e_k with k below the current row
    // stay implicitly available, which makes reduction of rows < i modulo
    // `modulus` a unimodular operation on the generating set.
    std::vector<IntVec> cols;
    cols.reserve(generators.size() + 1);
    for (const auto &g : generators) {
        if (g.size() != dim)
            throw InputError("generator has wrong dimension");
        IntVec v(dim);
        bool nonzero = false;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = mod_floor(g[i], modulus);
            nonzero = nonzero || v[i] != 0;
        }
        if (nonzero)
            cols.push_back(std::move(v));
    }

    std::vector<IntVec> out(dim);
    Int g, u, v, a_over_g, h_over_g;
    for (std::size_t step = 0; step < dim; ++step) {
        const std::size_t i = dim - 1 - step;
        IntVec reservoir(dim, Int(0));
        reservoir[i] = modulus;
        cols.push_back(std::move(reservoir));

        std::size_t pivot = cols.size();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c][i] == 0)
                continue;
            if (pivot == cols.size()) {
                pivot = c;
                continue;
            }
            IntVec &p = cols[pivot];
            IntVec &q = cols[c];
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), p[i].get_mpz_t(), q[i].get_mpz_t());
            mpz_divexact(h_over_g.get_mpz_t(), p[i].get_mpz_t(), g.get_mpz_t());
            mpz_divexact(a_over_g.get_mpz_t(), q[i].get_mpz_t(), g.get_mpz_t());
            for (std::size_t k = 0; k <= i; ++k) {
                Int np = u * p[k] + v * q[k];
                Int nq = h_over_g * q[k] - a_over_g * p[k];
                if (k < i) {
                    np = mod_floor(np, modulus);
                    nq = mod_floor(nq, modulus);
                }
                p[k] = std::move(np);
                q[k] = std::move(nq);
            }
        }
        if (pivot == cols.size())
            throw InvariantError("hnf-full-rank", "no pivot found; modulus does not bound the lattice");
        IntVec col = std::move(cols[pivot]);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pivot));
        if (col[i] < 0)
            for (auto &x : col)
                x = -x;
        for (std::size_t k = 0; k < i; ++k)
            col[k] = mod_floor(col[k], modulus);
        out[i] = std::move(col);
        // Drop columns that became zero.
        std::erase_if(cols, [](const IntVec &c) {
            for (const auto &x : c)
                if (x != 0)
                    return false;
            return true;
        });
    }

    // Reduce row i of the columns to its right into [0, H[i][i]).
    for (std::size_t step = 0; step < dim; ++step) {
        const std::size_t i = dim - 1 - step;
        const Int &h = out[i][i];
        for (std::size_t j = i + 1; j < dim; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), out[j][i].get_mpz_t(), h.get_mpz_t());
            if (q == 0)
                continue;
            for (std::size_t k = 0; k <= i; ++k)
                out[j][k] -= q * out[i][k];
        }
    }

    IntSquare h(dim, IntRow(dim, Int(0)));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i <= j; ++i)
            h[i][j] = out[j][i];
    return h;
}

// ---------------------------------------------------------------- LLL

namespace {

// Nearest integer to a/b, b > 0.
Int round_div(const Int &a, const Int &b)
{
    Int q;
    Int num = 2 * a + b;
    Int den = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

class IntegralLll {
  public:
    explicit IntegralLll(const IntSquare &gram) : n_(gram.size())
    {
        // 1-indexed storage, following the classical presentation.
        g_.assign(n_ + 1, IntRow(n_ + 1, Int(0)));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                g_[i + 1][j + 1] = gram[i][j];
        h_.assign(n_ + 1, IntRow(n_ + 1, Int(0)));
        for (std::size_t i = 1; i <= n_; ++i)
            h_[i][i] = 1;
        lam_.assign(n_ + 1, IntRow(n_ + 1, Int(0)));
        d_.assign(n_ + 1, Int(0));
    }

    LllResult run()
    {
        LllResult res;
        if (n_ == 0)
            return res;
        d_[0] = 1;
        d_[1] = g_[1][1];
        if (d_[1] <= 0)
            throw InputError("Gram matrix is not positive definite");
        std::size_t k = 2, kmax = 1;
        while (k <= n_) {
            if (k > kmax) {
                kmax = k;
                for (std::size_t j = 1; j <= k; ++j) {
                    Int u = g_[k][j];
                    for (std::size_t i = 1; i < j; ++i) {
                        u = d_[i] * u - lam_[k][i] * lam_[j][i];
                        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i - 1].get_mpz_t());
                    }
                    if (j < k)
                        lam_[k][j] = u;
                    else {
                        if (u <= 0)
                            throw InputError("Gram matrix is not positive definite");
                        d_[k] = u;
                    }
                }
                kmax_ = kmax;
            }
            for (;;) {
                redi(k, k - 1);
                Int lhs = 4 * d_[k] * d_[k - 2];
                Int rhs = 3 * d_[k - 1] * d_[k - 1] - 4 * lam_[k][k - 1] * lam_[k][k - 1];
                if (lhs < rhs) {
                    swapi(k);
                    ++res.swaps;
                    k = std::max<std::size_t>(2, k - 1);
                    continue;
                }
                for (std::size_t l = k - 1; l-- > 1;)
                    redi(k, l);
                ++k;
                break;
            }
        }
        res.transform.assign(n_, IntRow(n_));
        res.gram.assign(n_, IntRow(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                res.transform[i][j] = h_[i + 1][j + 1];
                res.gram[i][j] = g_[i + 1][j + 1];
            }
        return res;
    }

  private:
    // b_k <- b_k - q b_l
    void subtract(std::size_t k, std::size_t l, const Int &q)
    {
        for (std::size_t i = 1; i <= n_; ++i)
            h_[i][k] -= q * h_[i][l];
        const Int gkl = g_[k][l];
        const Int gkk = g_[k][k] - 2 * q * gkl + q * q * g_[l][l];
        for (std::size_t i = 1; i <= n_; ++i) {
            if (i == k)
                continue;
            g_[k][i] -= q * g_[l][i];
            g_[i][k] = g_[k][i];
        }
        g_[k][k] = gkk;
    }

    void redi(std::size_t k, std::size_t l)
    {
        if (abs(2 * lam_[k][l]) <= d_[l])
            return;
        Int q = round_div(lam_[k][l], d_[l]);
        subtract(k, l, q);
        lam_[k][l] -= q * d_[l];
        for (std::size_t i = 1; i < l; ++i)
            lam_[k][i] -= q * lam_[l][i];
    }

    void swapi(std::size_t k)
    {
        for (std::size_t i = 1; i <= n_; ++i)
            std::swap(h_[i][k], h_[i][k - 1]);
        std::swap(g_[k], g_[k - 1]);
        for (std::size_t i = 1; i <= n_; ++i)
            std::swap(g_[i][k], g_[i][k - 1]);
        for (std::size_t j = 1; j + 2 <= k; ++j)
            std::swap(lam_[k][j], lam_[k - 1][j]);
        const Int lambda = lam_[k][k - 1];
        Int b = d_[k - 2] * d_[k] + lambda * lambda;
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d_[k - 1].get_mpz_t());
        for (std::size_t i = k + 1; i <= kmax_; ++i) {
            Int t = lam_[i][k];
            Int nk = d_[k] * lam_[i][k - 1] - lambda * t;
            mpz_divexact(nk.get_mpz_t(), nk.get_mpz_t(), d_[k - 1].get_mpz_t());
            lam_[i][k] = nk;
            Int nk1 = b * t + lambda * lam_[i][k];
            mpz_divexact(nk1.get_mpz_t(), nk1.get_mpz_t(), d_[k].get_mpz_t());
            lam_[i][k - 1] = nk1;
        }
        d_[k - 1] = b;
    }

    std::size_t n_;
    std::size_t kmax_ = 1;
    IntSquare g_, h_, lam_;
    IntRow d_;
};

} // namespace

LllResult lll_reduce_gram(const IntSquare &gram) { return IntegralLll(gram).run(); }

bool is_lll_reduced(const IntSquare &gram)
{
    const std::size_t n = gram.size();
    // Rational Gram-Schmidt from the Gram matrix.
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> bstar(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s = gram[i][j];
            for (std::size_t k = 0; k < j; ++k)
                s -= mu[j][k] * mu[i][k] * bstar[k];
            mu[i][j] = s / bstar[j];
        }
        Rat s = gram[i][i];
        for (std::size_t k = 0; k < i; ++k)
            s -= mu[i][k] * mu[i][k] * bstar[k];
        bstar[i] = s;
        if (s <= 0)
            return false;
    }
    const Rat half(1, 2), delta(3, 4);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs(mu[i][j]) > half)
                return false;
    for (std::size_t k = 1; k < n; ++k)
        if (bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1])
            return false;
    return true;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct Enumerator {
    std::size_t n;
    std::vector<std::vector<long double>> q;
    const IntSquare &gram;
    Int bound;
    const std::function<void(const IntVec &, const Int &)> &visit;
    std::size_t node_cap;
    EnumerationStats stats;
    std::vector<long long> x;
    IntVec xi;

    void recurse(std::size_t i, long double remaining)
    {
        if (!stats.complete)
            return;
        long double center = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            center -= q[i][j] * static_cast<long double>(x[j]);
        long double radius = std::sqrt(std::max<long double>(remaining, 0) / q[i][i]);
        long long lo = static_cast<long long>(std::ceil(center - radius));
        long long hi = static_cast<long long>(std::floor(center + radius));
        for (long long v = lo; v <= hi; ++v) {
            if (++stats.nodes > node_cap) {
                stats.complete = false;
                return;
            }
            x[i] = v;
            long double diff = static_cast<long double>(v) - center;
            long double rest = remaining - q[i][i] * diff * diff;
            if (rest < -1e-6L * (1 + remaining))
                continue;
            if (i > 0) {
                recurse(i - 1, rest);
                if (!stats.complete)
                    return;
                continue;
            }
            emit();
        }
        x[i] = 0;
    }

    void emit()
    {
        // Keep x with positive last nonzero coordinate.
        std::size_t top = n;
        for (std::size_t k = n; k-- > 0;)
            if (x[k] != 0) {
                top = k;
                break;
            }
        if (top == n || x[top] < 0)
            return;
        for (std::size_t k = 0; k < n; ++k)
            xi[k] = static_cast<long>(x[k]);
        Int norm = quadratic_form(gram, xi);
        if (norm <= bound) {
            ++stats.emitted;
            visit(xi, norm);
        }
    }
};

} // namespace

EnumerationStats enumerate_short_vectors(const IntSquare &gram, const Int &bound,
                                         const std::function<void(const IntVec &, const Int &)> &visit,
                                         std::size_t node_cap)
{
    const std::size_t n = gram.size();
    Enumerator e{n, {}, gram, bound, visit, node_cap, {}, std::vector<long long>(n, 0), IntVec(n)};
    if (n == 0)
        return e.stats;
    // Cholesky-type decomposition: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    e.q.assign(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            e.q[i][j] = static_cast<long double>(gram[i][j].get_d());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            e.q[j][i] = e.q[i][j];
            e.q[i][j] /= e.q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                e.q[k][l] -= e.q[k][i] * e.q[i][l];
    }
    long double b = static_cast<long double>(bound.get_d());
    e.recurse(n - 1, b * (1 + 1e-9L) + 1e-6L);
    return e.stats;
}

} // namespace weil_atlas
