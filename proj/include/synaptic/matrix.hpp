#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "synaptic/config.hpp"
#include "synaptic/errors.hpp"

namespace synaptic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// An element of the concrete synaptic algebra: an n x n complex Hermitian
/// matrix. The constructor validates hermiticity and stores the symmetrized
/// matrix, so downstream code can rely on exact self-adjointness.
class Hermitian {
public:
    explicit Hermitian(Matrix m);

    static Hermitian zero(int n);
    static Hermitian identity(int n);
    static Hermitian diagonal(const std::vector<double>& d);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }

    Hermitian operator+(const Hermitian& other) const;
    Hermitian operator-(const Hermitian& other) const;
    Hermitian operator-() const;
    Hermitian scaled(double c) const;

private:
    Matrix mat_;
};

inline Hermitian operator*(double c, const Hermitian& a) { return a.scaled(c); }

/// Spectral decomposition with eigenvalues clustered to distinct breakpoints;
/// projections are the corresponding eigenprojections and sum to the identity.
struct EigenSystem {
    std::vector<double> values;        // strictly increasing
    std::vector<Hermitian> projections;
};

/// Right-continuous step family {p_lambda}: steps[i] projects onto the span of
/// eigenvectors with eigenvalue <= breakpoints[i]; the last step is 1.
struct SpectralResolution {
    std::vector<double> breakpoints;   // strictly increasing
    std::vector<Hermitian> steps;      // cumulative, monotone

    double lower() const { return breakpoints.front(); }
    double upper() const { return breakpoints.back(); }
};

double frobenius_norm(const Matrix& m);
double frobenius_distance(const Hermitian& a, const Hermitian& b);

/// Order unit norm: max |eigenvalue|.
double order_unit_norm(const Hermitian& a);

bool commutes(const Hermitian& a, const Hermitian& b);
double commutator_norm(const Hermitian& a, const Hermitian& b);

/// a <= b in the positive-semidefinite order.
bool leq(const Hermitian& a, const Hermitian& b);

bool is_projection(const Hermitian& a);
bool is_effect(const Hermitian& a);
bool approx_equal(const Hermitian& a, const Hermitian& b, double tol);

Hermitian jordan_product(const Hermitian& a, const Hermitian& b);

/// Quadratic map b -> aba.
Hermitian quadratic_map(const Hermitian& a, const Hermitian& b);

Hermitian square_root(const Hermitian& a);
Hermitian abs_value(const Hermitian& b);
Hermitian positive_part(const Hermitian& a);

/// Smallest projection p with a = ap; projects onto range(a).
Hermitian carrier(const Hermitian& a);

EigenSystem eigen_clusters(const Hermitian& a);

SpectralResolution spectral_resolution(const Hermitian& a);
Hermitian element_from_resolution(const SpectralResolution& r);

/// p_{a,lambda} computed by the carrier route: 1 - carrier((a - lambda)^+).
Hermitian spectral_step(const Hermitian& a, double lambda);

Hermitian functional_calculus(const Hermitian& a, const std::function<double(double)>& f);

} // namespace synaptic
