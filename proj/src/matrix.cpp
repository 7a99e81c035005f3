#include "synaptic/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace synaptic {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

namespace {

void require_same_dim(const Hermitian& a, const Hermitian& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
        throw DimensionMismatch(os.str());
    }
}

double norm_scale(const Hermitian& a) {
    return std::max(1.0, frobenius_norm(a.mat()));
}

} // namespace

Hermitian::Hermitian(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionMismatch("matrix must be square and nonempty");
    }
    const double scale = std::max(1.0, frobenius_norm(m));
    const double residual = frobenius_norm(Matrix(m - m.adjoint())) / scale;
    if (residual > tolerances().hermitian) {
        std::ostringstream os;
        os << "matrix is not Hermitian (residual " << residual << ")";
        throw NotHermitian(os.str());
    }
    mat_ = 0.5 * (m + m.adjoint().eval());
}

Hermitian Hermitian::zero(int n) { return Hermitian(Matrix::Zero(n, n)); }

Hermitian Hermitian::identity(int n) { return Hermitian(Matrix::Identity(n, n)); }

Hermitian Hermitian::diagonal(const std::vector<double>& d) {
    const int n = static_cast<int>(d.size());
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return Hermitian(m);
}

Hermitian Hermitian::operator+(const Hermitian& other) const {
    require_same_dim(*this, other);
    return Hermitian(mat_ + other.mat_);
}

Hermitian Hermitian::operator-(const Hermitian& other) const {
    require_same_dim(*this, other);
    return Hermitian(mat_ - other.mat_);
}

Hermitian Hermitian::operator-() const { return Hermitian(-mat_); }

Hermitian Hermitian::scaled(double c) const { return Hermitian(c * mat_); }

double frobenius_norm(const Matrix& m) { return m.norm(); }

double frobenius_distance(const Hermitian& a, const Hermitian& b) {
    require_same_dim(a, b);
    return frobenius_norm(Matrix(a.mat() - b.mat()));
}

bool approx_equal(const Hermitian& a, const Hermitian& b, double tol) {
    return frobenius_distance(a, b) <= tol;
}

double order_unit_norm(const Hermitian& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double commutator_norm(const Hermitian& a, const Hermitian& b) {
    require_same_dim(a, b);
    return frobenius_norm(Matrix(a.mat() * b.mat() - b.mat() * a.mat()));
}

bool commutes(const Hermitian& a, const Hermitian& b) {
    const double scale = std::max(1.0, frobenius_norm(a.mat()) * frobenius_norm(b.mat()));
    return commutator_norm(a, b) <= tolerances().commutation * scale;
}

bool leq(const Hermitian& a, const Hermitian& b) {
    require_same_dim(a, b);
    const Hermitian diff = b - a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff.mat(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) >= -tolerances().projection * norm_scale(diff);
}

bool is_projection(const Hermitian& a) {
    const double residual = frobenius_norm(Matrix(a.mat() * a.mat() - a.mat()));
    return residual <= tolerances().projection * norm_scale(a);
}

bool is_effect(const Hermitian& a) {
    return leq(Hermitian::zero(a.dim()), a) && leq(a, Hermitian::identity(a.dim()));
}

Hermitian jordan_product(const Hermitian& a, const Hermitian& b) {
    require_same_dim(a, b);
    return Hermitian(0.5 * (a.mat() * b.mat() + b.mat() * a.mat()));
}

Hermitian quadratic_map(const Hermitian& a, const Hermitian& b) {
    require_same_dim(a, b);
    return Hermitian(a.mat() * b.mat() * a.mat());
}

EigenSystem eigen_clusters(const Hermitian& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat());
    if (es.info() != Eigen::Success) {
        throw Error("eigendecomposition failed to converge");
    }
    const auto& ev = es.eigenvalues();
    const auto& vec = es.eigenvectors();
    const int n = a.dim();
    const double width = tolerances().eigen_cluster * norm_scale(a);

    EigenSystem out;
    int i = 0;
    while (i < n) {
        int j = i;
        // cluster consecutive eigenvalues closer than the clustering width
        while (j + 1 < n && ev(j + 1) - ev(j) <= width) ++j;
        double mean = 0.0;
        for (int k = i; k <= j; ++k) mean += ev(k);
        mean /= (j - i + 1);
        const auto block = vec.middleCols(i, j - i + 1);
        out.values.push_back(mean);
        out.projections.push_back(Hermitian(block * block.adjoint()));
        i = j + 1;
    }
    return out;
}

SpectralResolution spectral_resolution(const Hermitian& a) {
    const EigenSystem sys = eigen_clusters(a);
    SpectralResolution r;
    r.breakpoints = sys.values;
    Matrix acc = Matrix::Zero(a.dim(), a.dim());
    for (const auto& p : sys.projections) {
        acc += p.mat();
        r.steps.push_back(Hermitian(acc));
    }
    // the last cumulative projection is the identity up to rounding
    r.steps.back() = Hermitian::identity(a.dim());
    return r;
}

Hermitian element_from_resolution(const SpectralResolution& r) {
    const std::size_t k = r.breakpoints.size();
    if (k == 0 || r.steps.size() != k) {
        throw InvalidResolution("resolution must have matching nonempty breakpoints and steps");
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (!(r.breakpoints[i] < r.breakpoints[i + 1])) {
            throw InvalidResolution("breakpoints must be strictly increasing");
        }
    }
    const int n = r.steps.front().dim();
    const double tol = tolerances().projection * 1e3;
    for (std::size_t i = 0; i < k; ++i) {
        if (r.steps[i].dim() != n) throw InvalidResolution("step dimension mismatch");
        if (!is_projection(r.steps[i])) throw InvalidResolution("step is not a projection");
        if (i + 1 < k) {
            // p <= q for projections iff pq = qp = p
            const Matrix pq = r.steps[i].mat() * r.steps[i + 1].mat();
            if (frobenius_norm(Matrix(pq - r.steps[i].mat())) > tol) {
                throw InvalidResolution("steps are not monotone");
            }
        }
    }
    if (frobenius_distance(r.steps.back(), Hermitian::identity(n)) > tol) {
        throw InvalidResolution("top step must be the identity");
    }
    Matrix acc = r.breakpoints[0] * r.steps[0].mat();
    for (std::size_t i = 1; i < k; ++i) {
        acc += r.breakpoints[i] * (r.steps[i].mat() - r.steps[i - 1].mat());
    }
    return Hermitian(acc);
}

Hermitian functional_calculus(const Hermitian& a, const std::function<double(double)>& f) {
    const EigenSystem sys = eigen_clusters(a);
    Matrix acc = Matrix::Zero(a.dim(), a.dim());
    for (std::size_t i = 0; i < sys.values.size(); ++i) {
        const double fx = f(sys.values[i]);
        if (!std::isfinite(fx)) {
            std::ostringstream os;
            os << "function undefined at eigenvalue " << sys.values[i];
            throw DomainError(os.str());
        }
        acc += fx * sys.projections[i].mat();
    }
    return Hermitian(acc);
}

Hermitian square_root(const Hermitian& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tolerances().projection * norm_scale(a)) {
        std::ostringstream os;
        os << "square root of a non-positive element (min eigenvalue "
           << es.eigenvalues()(0) << ")";
        throw NotPositive(os.str());
    }
    return functional_calculus(a, [](double t) { return std::sqrt(std::max(t, 0.0)); });
}

Hermitian abs_value(const Hermitian& b) {
    return functional_calculus(b, [](double t) { return std::abs(t); });
}

Hermitian positive_part(const Hermitian& a) {
    return functional_calculus(a, [](double t) { return std::max(t, 0.0); });
}

Hermitian carrier(const Hermitian& a) {
    const EigenSystem sys = eigen_clusters(a);
    const double cutoff = tolerances().eigen_cluster * norm_scale(a);
    Matrix acc = Matrix::Zero(a.dim(), a.dim());
    for (std::size_t i = 0; i < sys.values.size(); ++i) {
        if (std::abs(sys.values[i]) > cutoff) acc += sys.projections[i].mat();
    }
    return Hermitian(acc);
}

Hermitian spectral_step(const Hermitian& a, double lambda) {
    const Hermitian shifted = a - lambda * Hermitian::identity(a.dim());
    return Hermitian::identity(a.dim()) - carrier(positive_part(shifted));
}

} // namespace synaptic
