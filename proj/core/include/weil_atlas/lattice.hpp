#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "weil_atlas/arith.hpp"
#include "weil_atlas/field.hpp"

namespace weil_atlas {

using IntVec = std::vector<Int>;

// Column Hermite normal form of the lattice spanned by `generators` (each of
// length dim). The caller guarantees modulus * Z^dim is contained in the
// lattice; the result is upper triangular with positive diagonal and
// 0 <= H[i][j] < H[i][i] for j > i. H[i][j] is row i, column j.
IntSquare hnf_with_modulus(const std::vector<IntVec> &generators, const Int &modulus, std::size_t dim);

IntSquare transpose(const IntSquare &a);
IntSquare mat_mul(const IntSquare &a, const IntSquare &b);
IntVec mat_vec(const IntSquare &a, const IntVec &x);
Int quadratic_form(const IntSquare &gram, const IntVec &x);

struct LllResult {
    // Column k holds the coefficients of the k-th reduced vector in terms of
    // the input basis; unimodular.
    IntSquare transform;
    IntSquare gram;
    std::size_t swaps = 0;
};

// Exact integral LLL (delta = 3/4) driven only by a positive definite
// integer Gram matrix.
LllResult lll_reduce_gram(const IntSquare &gram);

// Verifies size reduction and the Lovasz condition exactly.
bool is_lll_reduced(const IntSquare &gram);

struct EnumerationStats {
    std::size_t nodes = 0;
    std::size_t emitted = 0;
    bool complete = true;
};

// Calls visit(x, Q(x)) for every nonzero integer vector x with
// x^T gram x <= bound, one representative per pair {x, -x}. Stops early
// (complete = false) once node_cap tree nodes have been visited.
EnumerationStats enumerate_short_vectors(const IntSquare &gram, const Int &bound,
                                         const std::function<void(const IntVec &, const Int &)> &visit,
                                         std::size_t node_cap = 50'000'000);

} // namespace weil_atlas
