#pragma once

#include <vector>

#include "synaptic/matrix.hpp"

namespace synaptic {

/// A state on the matrix algebra: a density matrix W (positive, trace one),
/// acting on elements by a -> tr(Wa).
class DensityState {
public:
    explicit DensityState(Hermitian w);

    static DensityState pure(const Eigen::VectorXcd& psi);
    static DensityState maximally_mixed(int n);

    int dim() const { return w_.dim(); }
    const Hermitian& density() const { return w_; }

private:
    Hermitian w_;
};

double apply(const DensityState& s, const Hermitian& a);

/// Pure states spanning the real space of Hermitian functionals in dimension n:
/// |i><i|, (|i>+-|j>)/sqrt2 and (|i>+-i|j>)/sqrt2. Equality of tr(W a) over
/// this family forces equality of matrices, so universally quantified state
/// identities reduce to a finite check.
std::vector<DensityState> spanning_states(int n);

struct NormBound {
    double sample_max;     // max |tr(Wa)| over the supplied states
    double certified_max;  // max |eigenvalue| of a
};

NormBound norm_via_states(const Hermitian& a, const std::vector<DensityState>& sample);

} // namespace synaptic
