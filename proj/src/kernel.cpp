#include "synaptic/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace synaptic {

namespace {

constexpr double kRowTol = 1e-8;

bool row_is_probability(const Eigen::MatrixXd& rows, std::size_t x, std::string* cond) {
    for (Eigen::Index y = 0; y < rows.cols(); ++y) {
        const double v = rows(static_cast<Eigen::Index>(x), y);
        if (v < -kRowTol || v > 1.0 + kRowTol) {
            if (cond) *cond = "range";
            return false;
        }
    }
    const double sum = rows.row(static_cast<Eigen::Index>(x)).sum();
    if (std::abs(sum - 1.0) > kRowTol * static_cast<double>(rows.cols() + 1)) {
        if (cond) *cond = "row-sum";
        return false;
    }
    return true;
}

} // namespace

std::vector<KernelIssue> check_kernel(const WeakMarkovKernel& nu) {
    std::vector<KernelIssue> issues;
    if (nu.rows.rows() != static_cast<Eigen::Index>(nu.source.size()) ||
        nu.rows.cols() != static_cast<Eigen::Index>(nu.target.size())) {
        issues.push_back({0, "shape"});
        return issues;
    }
    for (std::size_t x = 0; x < nu.source.size(); ++x) {
        if (nu.null_ideal.count(x)) continue;   // I-a.e.: null rows are unconstrained
        std::string cond;
        if (!row_is_probability(nu.rows, x, &cond)) issues.push_back({x, cond});
    }
    return issues;
}

WeakMarkovKernel validate_kernel(std::vector<std::string> source,
                                 std::vector<std::string> target,
                                 Eigen::MatrixXd rows,
                                 std::set<std::size_t> null_ideal) {
    WeakMarkovKernel nu{std::move(source), std::move(target), std::move(rows),
                        std::move(null_ideal)};
    const auto issues = check_kernel(nu);
    if (!issues.empty()) {
        std::ostringstream os;
        os << "kernel row " << issues.front().row << " violates condition "
           << issues.front().condition;
        throw KernelViolation(issues.front().row, issues.front().condition, os.str());
    }
    return nu;
}

bool kernel_equiv(const WeakMarkovKernel& nu, const WeakMarkovKernel& mu,
                  const std::set<std::size_t>& ideal) {
    if (nu.rows.rows() != mu.rows.rows() || nu.rows.cols() != mu.rows.cols()) {
        throw DimensionMismatch("kernel shapes differ");
    }
    for (Eigen::Index x = 0; x < nu.rows.rows(); ++x) {
        if (ideal.count(static_cast<std::size_t>(x))) continue;
        for (Eigen::Index y = 0; y < nu.rows.cols(); ++y) {
            if (std::abs(nu.rows(x, y) - mu.rows(x, y)) > 1e-12) return false;
        }
    }
    return true;
}

std::vector<double> pushforward(const WeakMarkovKernel& nu, const std::vector<double>& p) {
    if (p.size() != nu.source.size()) {
        throw DimensionMismatch("probability vector length does not match kernel source");
    }
    std::vector<double> out(nu.target.size(), 0.0);
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] == 0.0) continue;
        for (std::size_t y = 0; y < out.size(); ++y) {
            out[y] += nu.rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) * p[x];
        }
    }
    return out;
}

Hermitian integrate(const Observable& xi, const std::vector<double>& f) {
    if (f.size() != xi.size()) {
        throw DimensionMismatch("integrand length does not match outcome count");
    }
    Matrix acc = Matrix::Zero(xi.dim(), xi.dim());
    for (std::size_t x = 0; x < xi.size(); ++x) {
        if (xi.is_null_atom(x)) continue;   // values on null atoms are irrelevant
        if (f[x] < -kRowTol || f[x] > 1.0 + kRowTol) {
            std::ostringstream os;
            os << "integrand value " << f[x] << " at outcome " << xi.label(x)
               << " lies outside [0,1]";
            throw DomainError(os.str());
        }
        acc += f[x] * xi.atom(x).mat();
    }
    return Hermitian(acc);
}

Observable smear(const Observable& xi, const WeakMarkovKernel& nu) {
    if (nu.source != xi.labels()) {
        throw DimensionMismatch("kernel source outcomes do not match the observable");
    }
    for (std::size_t x : nu.null_ideal) {
        if (x >= xi.size() || !xi.is_null_atom(x)) {
            throw IdealMismatch("kernel null ideal contains a non-null outcome");
        }
    }
    // the kernel must satisfy the row conditions off I_xi, not merely off its
    // declared ideal
    for (std::size_t x = 0; x < xi.size(); ++x) {
        if (xi.is_null_atom(x)) continue;
        std::string cond;
        if (!row_is_probability(nu.rows, x, &cond)) {
            std::ostringstream os;
            os << "kernel row " << x << " violates condition " << cond;
            throw KernelViolation(x, cond, os.str());
        }
    }

    std::vector<Hermitian> atoms;
    for (std::size_t y = 0; y < nu.target.size(); ++y) {
        Matrix acc = Matrix::Zero(xi.dim(), xi.dim());
        for (std::size_t x = 0; x < xi.size(); ++x) {
            if (xi.is_null_atom(x)) continue;
            acc += nu.rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) *
                   xi.atom(x).mat();
        }
        atoms.push_back(Hermitian(acc));
    }
    Observable eta(nu.target, atoms);

    // certify the defining state identity m(eta(B)) = sum_x nu(x,B) m(xi({x}))
    // on the spanning family; the spanning family is ordering, so this pins
    // eta uniquely
    const auto states = spanning_states(xi.dim());
    for (const auto& m : states) {
        for (std::size_t y = 0; y < eta.size(); ++y) {
            double rhs = 0.0;
            for (std::size_t x = 0; x < xi.size(); ++x) {
                if (xi.is_null_atom(x)) continue;
                rhs += nu.rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) *
                       apply(m, xi.atom(x));
            }
            if (std::abs(apply(m, eta.atom(y)) - rhs) > 1e-9) {
                throw Error("smearing certification failed");
            }
        }
    }
    return eta;
}

namespace {

double constancy_value(const Hermitian& a, const Hermitian& proj) {
    const double rank = proj.mat().trace().real();
    return (a.mat() * proj.mat()).trace().real() / rank;
}

// a is constant on each projection iff P a P = t P with t the compressed trace.
bool values_on_atoms(const std::vector<Hermitian>& elements,
                     const std::vector<Hermitian>& projs,
                     std::vector<std::vector<double>>* labels) {
    labels->assign(projs.size(), {});
    for (std::size_t x = 0; x < projs.size(); ++x) {
        const Matrix& p = projs[x].mat();
        for (const auto& a : elements) {
            const double t = constancy_value(a, projs[x]);
            const Matrix residual = p * a.mat() * p - t * p;
            const double scale = std::max(1.0, frobenius_norm(a.mat()));
            if (frobenius_norm(residual) > 1e-7 * scale) return false;
            (*labels)[x].push_back(t);
        }
    }
    return true;
}

std::vector<Hermitian> refine_by_deflation(const std::vector<Hermitian>& elements, int n) {
    std::vector<Matrix> projs{Matrix::Identity(n, n)};
    for (const auto& a : elements) {
        std::vector<Matrix> next;
        for (const Matrix& p : projs) {
            // orthonormal basis of range(p)
            Eigen::SelfAdjointEigenSolver<Matrix> pes(p);
            std::vector<Eigen::Index> cols;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (pes.eigenvalues()(i) > 0.5) cols.push_back(i);
            }
            Matrix basis(n, static_cast<Eigen::Index>(cols.size()));
            for (std::size_t i = 0; i < cols.size(); ++i) {
                basis.col(static_cast<Eigen::Index>(i)) = pes.eigenvectors().col(cols[i]);
            }
            const Matrix compressed = basis.adjoint() * a.mat() * basis;
            const Hermitian sub(0.5 * (compressed + compressed.adjoint().eval()));
            const EigenSystem sys = eigen_clusters(sub);
            for (const auto& q : sys.projections) {
                next.push_back(basis * q.mat() * basis.adjoint());
            }
        }
        projs = std::move(next);
    }
    std::vector<Hermitian> out;
    for (const auto& p : projs) out.push_back(Hermitian(p));
    return out;
}

} // namespace

Hermitian LoomisSikorski::represent(const std::vector<double>& f) const {
    if (f.size() != atoms.size()) {
        throw DimensionMismatch("function length does not match atom count");
    }
    Matrix acc = Matrix::Zero(atoms.front().dim(), atoms.front().dim());
    for (std::size_t x = 0; x < atoms.size(); ++x) acc += f[x] * atoms[x].mat();
    return Hermitian(acc);
}

LoomisSikorski finite_loomis_sikorski(const std::vector<Hermitian>& commuting,
                                      std::uint64_t seed) {
    if (commuting.empty()) throw Error("empty commuting family");
    const int n = commuting.front().dim();
    for (std::size_t i = 0; i < commuting.size(); ++i) {
        if (commuting[i].dim() != n) throw DimensionMismatch("family dimension mismatch");
        for (std::size_t j = i + 1; j < commuting.size(); ++j) {
            if (!commutes(commuting[i], commuting[j])) {
                std::ostringstream os;
                os << "elements " << i << " and " << j << " do not commute (norm "
                   << commutator_norm(commuting[i], commuting[j]) << ")";
                throw NonCommutingInput(os.str());
            }
        }
    }

    LoomisSikorski out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        // a random combination generically separates the joint eigenspaces;
        // an unlucky coefficient collision only merges them, which the
        // constancy check detects
        Matrix combo = Matrix::Zero(n, n);
        for (const auto& a : commuting) {
            combo += gauss(rng) * a.mat() / std::max(1.0, frobenius_norm(a.mat()));
        }
        const EigenSystem sys = eigen_clusters(Hermitian(combo));
        if (values_on_atoms(commuting, sys.projections, &out.labels)) {
            out.atoms = sys.projections;
            break;
        }
        out.labels.clear();
    }
    if (out.atoms.empty()) {
        out.atoms = refine_by_deflation(commuting, n);
        if (!values_on_atoms(commuting, out.atoms, &out.labels)) {
            throw Error("simultaneous diagonalization failed");
        }
    }

    // canonical atom order: lexicographic in the value tuples
    std::vector<std::size_t> order(out.atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return out.labels[a] < out.labels[b];
    });
    LoomisSikorski sorted;
    for (std::size_t i : order) {
        sorted.labels.push_back(out.labels[i]);
        sorted.atoms.push_back(out.atoms[i]);
    }
    return sorted;
}

Decomposition decompose_commuting(const Observable& eta, std::uint64_t seed) {
    if (const auto w = noncommuting_witness(eta)) {
        std::ostringstream os;
        os << "atoms " << w->first << " (" << eta.label(w->first) << ") and " << w->second
           << " (" << eta.label(w->second) << ") do not commute (commutator norm "
           << w->norm << ")";
        throw NonCommutingRange(w->first, w->second, w->norm, os.str());
    }

    const LoomisSikorski rep = finite_loomis_sikorski(eta.atoms(), seed);
    const std::size_t k = rep.atoms.size();

    std::vector<std::string> sharp_labels;
    for (std::size_t x = 0; x < k; ++x) sharp_labels.push_back("x" + std::to_string(x));
    Observable sharp(sharp_labels, rep.atoms);

    // nu(x,{y}) is the eigenvalue of eta({y}) on joint eigenspace x
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(k),
                         static_cast<Eigen::Index>(eta.size()));
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < eta.size(); ++y) {
            double v = rep.labels[x][y];
            if (v < -1e-7 || v > 1.0 + 1e-7) {
                throw Error("effect eigenvalue escaped [0,1]");
            }
            rows(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                std::clamp(v, 0.0, 1.0);
        }
    }
    WeakMarkovKernel nu = validate_kernel(sharp_labels, eta.labels(), std::move(rows));

    // round trip: the smearing must reproduce eta
    const Observable back = smear(sharp, nu);
    for (std::size_t y = 0; y < eta.size(); ++y) {
        if (frobenius_distance(back.atom(y), eta.atom(y)) > 1e-9 * std::max(1.0, double(eta.dim()))) {
            throw Error("decomposition round trip failed");
        }
    }
    return Decomposition{std::move(sharp), std::move(nu)};
}

} // namespace synaptic
