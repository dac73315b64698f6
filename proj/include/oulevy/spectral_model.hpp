#pragma once

#include <optional>
#include <vector>

#include "oulevy/expr.hpp"

namespace oulevy {

enum class Generator { A, Atilde };

// Closed-form sequences for criterion scans.  The per-mode values are
// evaluated lazily up to n_max, so tail behavior is examined without
// materializing vectors.  xi is the single-jump profile used by the
// representative-norm scans.
struct SymbolicSequences {
    Expr a;
    Expr a_tilde;
    Expr q;
    Expr xi;        // optional; empty when unused
    int n_max = 512;
};

// Paired diagonal generators on a truncated basis: the A-semigroup acts as
// e^{-a_n t} on mode n, the perturbed one as e^{-atilde_n t}, and the noise
// covariance as q_n.  The perturbation K = Atilde - A acts as a_n - atilde_n;
// the criterion series all enter through (atilde_n - a_n)^2.
class SpectralModel {
  public:
    SpectralModel(std::vector<double> a, std::vector<double> a_tilde, std::vector<double> q);

    static SpectralModel from_symbolic(const SymbolicSequences& seq, int dim);

    int dim() const { return static_cast<int>(a_.size()); }
    const std::vector<double>& a() const { return a_; }
    const std::vector<double>& a_tilde() const { return a_tilde_; }
    const std::vector<double>& q() const { return q_; }

    double decay(Generator g, int mode) const {  // 0-based mode
        return g == Generator::A ? a_[mode] : a_tilde_[mode];
    }
    double a_min() const;
    double a_min(Generator g) const;

    // Swap the roles of the two generators.
    SpectralModel swapped() const { return SpectralModel(a_tilde_, a_, q_); }

    void attach_symbolic(SymbolicSequences seq) { symbolic_ = std::move(seq); }
    bool has_symbolic() const { return symbolic_.has_value(); }
    const SymbolicSequences& symbolic() const;

    // Mode count for series scans (n_max in symbolic mode, dim otherwise)
    // and 1-based lazy accessors that fall back to the stored vectors.
    int series_modes() const;
    double a_of(int n) const;
    double a_tilde_of(int n) const;
    double q_of(int n) const;

  private:
    std::vector<double> a_, a_tilde_, q_;
    std::optional<SymbolicSequences> symbolic_;
};

}  // namespace oulevy
