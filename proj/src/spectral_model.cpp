#include "oulevy/spectral_model.hpp"

#include <algorithm>
#include <cmath>

#include "oulevy/errors.hpp"

namespace oulevy {

SpectralModel::SpectralModel(std::vector<double> a, std::vector<double> a_tilde,
                             std::vector<double> q)
    : a_(std::move(a)), a_tilde_(std::move(a_tilde)), q_(std::move(q)) {
    if (a_.empty()) throw InputError("model: dim must be >= 1");
    if (a_tilde_.size() != a_.size() || q_.size() != a_.size())
        throw InputError("model: a, a_tilde, q must share the truncation dimension");
    double trace = 0.0;
    for (size_t n = 0; n < a_.size(); ++n) {
        if (!(a_[n] > 0.0) || !(a_tilde_[n] > 0.0))
            throw InputError("model: eigenvalues must be strictly positive (mode " +
                             std::to_string(n + 1) + ")");
        if (!(q_[n] > 0.0))
            throw InputError("model: covariance eigenvalues must be strictly positive (mode " +
                             std::to_string(n + 1) + ")");
        trace += q_[n];
    }
    if (!std::isfinite(trace))
        throw InputError("model: covariance must be trace class at the truncation");
}

SpectralModel SpectralModel::from_symbolic(const SymbolicSequences& seq, int dim) {
    if (dim < 1) throw InputError("model: dim must be >= 1");
    std::vector<double> a(dim), at(dim), q(dim);
    for (int n = 1; n <= dim; ++n) {
        a[n - 1] = seq.a.eval(n);
        at[n - 1] = seq.a_tilde.eval(n);
        q[n - 1] = seq.q.eval(n);
    }
    SpectralModel m(std::move(a), std::move(at), std::move(q));
    m.attach_symbolic(seq);
    return m;
}

double SpectralModel::a_min() const { return a_min(Generator::A); }

double SpectralModel::a_min(Generator g) const {
    const auto& v = (g == Generator::A) ? a_ : a_tilde_;
    return *std::min_element(v.begin(), v.end());
}

const SymbolicSequences& SpectralModel::symbolic() const {
    if (!symbolic_) throw InputError("model has no symbolic sequences attached");
    return *symbolic_;
}

int SpectralModel::series_modes() const {
    return symbolic_ ? symbolic_->n_max : dim();
}

double SpectralModel::a_of(int n) const {
    if (symbolic_) return symbolic_->a.eval(n);
    return a_.at(n - 1);
}

double SpectralModel::a_tilde_of(int n) const {
    if (symbolic_) return symbolic_->a_tilde.eval(n);
    return a_tilde_.at(n - 1);
}

double SpectralModel::q_of(int n) const {
    if (symbolic_) return symbolic_->q.eval(n);
    return q_.at(n - 1);
}

}  // namespace oulevy
