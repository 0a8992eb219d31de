#pragma once

#include <string>
#include <vector>

#include "weil_atlas/ideal.hpp"
#include "weil_atlas/weil_number.hpp"

namespace weil_atlas {

enum class EndoVerdict { commutative_cm_field, noncommutative, supersingular };

std::string to_string(EndoVerdict v);

struct EndoReport {
    // Local invariant at each prime of S(p), in [0, 1); zero elsewhere.
    std::vector<Rat> invariants;
    EndoVerdict verdict = EndoVerdict::supersingular;
    unsigned center_degree = 0;
    // 2^(n-1) for the commutative verdict, 0 otherwise.
    unsigned dim = 0;
};

// ord_P(pi) / ord_P(q) mod 1 for every P above p. Throws SplitError if the
// fiber does not match pi's prime.
std::vector<Rat> local_invariants(const WeilNumber &pi, const SplitFiber &fiber);

// Supersingular iff pi^2 / q is a root of unity; otherwise commutative iff
// every invariant vanishes and Q(pi) = K.
EndoReport classify_endo(const WeilNumber &pi, const SplitFiber &fiber);
// For p not completely split: only the supersingular test is available, and
// any other input throws SplitError.
EndoReport classify_endo(const WeilNumber &pi);

} // namespace weil_atlas
