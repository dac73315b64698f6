#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace oulevy {

// Convergence certificate for a nonnegative mode series (sum or sup).
//
// Finite truncations always converge; the divergence heuristic only fires in
// symbolic-sequence mode, where a series is declared divergent once its terms
// are nondecreasing for 8 consecutive comparisons past n = 16, or any term
// exceeds 1e12 (or overflows).  Reported as a witness, not a proof.
struct DivergenceWitness {
    int index = 0;      // 1-based mode index of the witnessing term
    double term = 0.0;  // its value (may be +inf on overflow)
};

struct SeriesVerdict {
    double value = 0.0;  // finite iff converged; +inf otherwise
    bool converged = true;
    int terms_examined = 0;
    std::optional<DivergenceWitness> divergence_witness;
    // For sup-type scans: the per-mode sequence was still increasing at the
    // last examined index, so the reported sup may not have stabilized.
    bool tail_increasing = false;
};

inline constexpr double kTermExplosion = 1e12;
inline constexpr int kRunLength = 8;
inline constexpr int kRunStart = 16;

using TermFn = std::function<double(int)>;  // 1-based mode index -> term >= 0

// Sum of term(n) for n = 1..n_terms.  With heuristic=true the divergence
// rules above apply and evaluation stops at the witness.
SeriesVerdict sum_series(const TermFn& term, int n_terms, bool heuristic);

// Sup of term(n); same divergence rules, plus the tail_increasing flag.
SeriesVerdict sup_series(const TermFn& term, int n_terms, bool heuristic);

}  // namespace oulevy
