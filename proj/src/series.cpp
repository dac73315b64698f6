#include "oulevy/series.hpp"

#include <algorithm>
#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/numerics.hpp"

namespace oulevy {

namespace {

// Shared scan: feeds terms to `absorb`, watching for explosion / monotone runs.
template <typename Absorb>
SeriesVerdict scan(const TermFn& term, int n_terms, bool heuristic, Absorb&& absorb) {
    if (n_terms < 1) throw InputError("series needs at least one term");
    SeriesVerdict v;
    double prev = -1.0;
    int run = 0;
    for (int n = 1; n <= n_terms; ++n) {
        const double t = term(n);
        v.terms_examined = n;
        if (std::isnan(t) || t < 0.0)
            throw InputError("series term must be nonnegative at n=" + std::to_string(n));
        if (heuristic) {
            if (!std::isfinite(t) || t > kTermExplosion) {
                v.converged = false;
                v.divergence_witness = DivergenceWitness{n, t};
                v.value = kInf;
                return v;
            }
            if (n > kRunStart && t > 0.0 && t >= prev) {
                if (++run >= kRunLength) {
                    v.converged = false;
                    v.divergence_witness = DivergenceWitness{n, t};
                    v.value = kInf;
                    return v;
                }
            } else {
                run = 0;
            }
        }
        absorb(v, t);
        v.tail_increasing = (t > prev);
        prev = t;
    }
    return v;
}

}  // namespace

SeriesVerdict sum_series(const TermFn& term, int n_terms, bool heuristic) {
    return scan(term, n_terms, heuristic,
                [](SeriesVerdict& v, double t) { v.value += t; });
}

SeriesVerdict sup_series(const TermFn& term, int n_terms, bool heuristic) {
    return scan(term, n_terms, heuristic,
                [](SeriesVerdict& v, double t) { v.value = std::max(v.value, t); });
}

}  // namespace oulevy
