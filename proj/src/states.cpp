#include "synaptic/states.hpp"

#include <cmath>
#include <sstream>

namespace synaptic {

DensityState::DensityState(Hermitian w) : w_(std::move(w)) {
    const double tr = w_.mat().trace().real();
    if (std::abs(tr - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "density matrix trace is " << tr << ", expected 1";
        throw NotPositive(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(w_.mat(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tolerances().projection * 10) {
        throw NotPositive("density matrix has a negative eigenvalue");
    }
}

DensityState DensityState::pure(const Eigen::VectorXcd& psi) {
    const double n2 = psi.squaredNorm();
    if (n2 <= 0) throw NotPositive("zero vector cannot define a pure state");
    return DensityState(Hermitian(Matrix(psi * psi.adjoint() / n2)));
}

DensityState DensityState::maximally_mixed(int n) {
    return DensityState(Hermitian(Matrix(Matrix::Identity(n, n) / static_cast<double>(n))));
}

double apply(const DensityState& s, const Hermitian& a) {
    if (s.dim() != a.dim()) throw DimensionMismatch("state/element dimension mismatch");
    return (s.density().mat() * a.mat()).trace().real();
}

std::vector<DensityState> spanning_states(int n) {
    std::vector<DensityState> out;
    const Complex im(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e(i) = 1.0;
        out.push_back(DensityState::pure(e));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (const Complex phase : {Complex(1, 0), Complex(-1, 0), im, -im}) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
                v(i) = 1.0;
                v(j) = phase;
                out.push_back(DensityState::pure(v));
            }
        }
    }
    return out;
}

NormBound norm_via_states(const Hermitian& a, const std::vector<DensityState>& sample) {
    NormBound b{0.0, order_unit_norm(a)};
    for (const auto& s : sample) {
        b.sample_max = std::max(b.sample_max, std::abs(apply(s, a)));
    }
    return b;
}

} // namespace synaptic
