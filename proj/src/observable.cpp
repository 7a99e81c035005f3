#include "synaptic/observable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace synaptic {

namespace {

void check_partition_of_unity(const std::vector<Hermitian>& atoms) {
    if (atoms.empty()) throw Error("observable needs at least one outcome");
    const int n = atoms.front().dim();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& e : atoms) {
        if (e.dim() != n) throw DimensionMismatch("observable atoms differ in dimension");
        if (!is_effect(e)) throw NotPositive("observable atom is not an effect");
        sum += e.mat();
    }
    const double residual = frobenius_norm(Matrix(sum - Matrix::Identity(n, n)));
    if (residual > 1e-7 * std::max(1.0, static_cast<double>(n))) {
        std::ostringstream os;
        os << "atoms do not sum to the identity (residual " << residual << ")";
        throw Error(os.str());
    }
}

// Cluster real values within width; returns sorted distinct representatives
// and the group index of each input.
std::pair<std::vector<double>, std::vector<std::size_t>>
cluster_values(const std::vector<double>& vals, double width) {
    std::vector<std::size_t> order(vals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

    std::vector<double> reps;
    std::vector<std::size_t> group(vals.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        double sum = vals[order[i]];
        while (j + 1 < order.size() && vals[order[j + 1]] - vals[order[j]] <= width) {
            ++j;
            sum += vals[order[j]];
        }
        const double rep = sum / static_cast<double>(j - i + 1);
        for (std::size_t k = i; k <= j; ++k) group[order[k]] = reps.size();
        reps.push_back(rep);
        i = j + 1;
    }
    return {reps, group};
}

} // namespace

Observable::Observable(std::vector<std::string> labels, std::vector<Hermitian> atoms)
    : labels_(std::move(labels)), atoms_(std::move(atoms)) {
    if (labels_.size() != atoms_.size()) {
        throw Error("label/atom count mismatch");
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw Error("duplicate outcome labels");
    check_partition_of_unity(atoms_);
}

std::size_t Observable::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("unknown outcome label: " + label);
    return static_cast<std::size_t>(it - labels_.begin());
}

bool Observable::is_null_atom(std::size_t i) const {
    return frobenius_norm(atoms_[i].mat()) <= tolerances().projection;
}

std::vector<std::size_t> Observable::null_atoms() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (is_null_atom(i)) out.push_back(i);
    }
    return out;
}

RealObservable::RealObservable(std::vector<double> values, std::vector<Hermitian> atoms) {
    if (values.size() != atoms.size()) throw Error("value/atom count mismatch");
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (!(values[order[i]] < values[order[i + 1]])) {
            throw Error("real observable outcome values must be distinct");
        }
    }
    for (std::size_t i : order) {
        values_.push_back(values[i]);
        atoms_.push_back(atoms[i]);
    }
    check_partition_of_unity(atoms_);
}

Observable RealObservable::to_observable() const {
    std::vector<std::string> labels;
    for (double v : values_) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        labels.push_back(os.str());
    }
    return Observable(labels, atoms_);
}

Hermitian evaluate(const Observable& xi, const std::vector<std::string>& subset) {
    std::set<std::string> seen;
    Matrix sum = Matrix::Zero(xi.dim(), xi.dim());
    for (const auto& label : subset) {
        if (!seen.insert(label).second) continue;
        sum += xi.atom(xi.index_of(label)).mat();
    }
    return Hermitian(sum);
}

bool is_sharp(const Observable& xi) {
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (!is_projection(xi.atom(i))) return false;
    }
    return true;
}

bool is_sharp(const RealObservable& xi) {
    for (const auto& e : xi.atoms()) {
        if (!is_projection(e)) return false;
    }
    return true;
}

std::optional<CommutatorWitness> noncommuting_witness(const Observable& xi) {
    for (std::size_t i = 0; i < xi.size(); ++i) {
        for (std::size_t j = i + 1; j < xi.size(); ++j) {
            if (!commutes(xi.atom(i), xi.atom(j))) {
                return CommutatorWitness{i, j, commutator_norm(xi.atom(i), xi.atom(j))};
            }
        }
    }
    return std::nullopt;
}

bool has_commuting_range(const Observable& xi) {
    return !noncommuting_witness(xi).has_value();
}

Observable f_function(const Observable& xi,
                      const std::function<std::string(const std::string&)>& f) {
    std::vector<std::string> out_labels;
    std::map<std::string, Matrix> groups;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const std::string y = f(xi.label(i));
        auto it = groups.find(y);
        if (it == groups.end()) {
            out_labels.push_back(y);
            groups.emplace(y, xi.atom(i).mat());
        } else {
            it->second += xi.atom(i).mat();
        }
    }
    std::vector<Hermitian> atoms;
    for (const auto& y : out_labels) atoms.push_back(Hermitian(groups.at(y)));
    return Observable(out_labels, atoms);
}

RealObservable observable_of_element(const Hermitian& a) {
    const EigenSystem sys = eigen_clusters(a);
    return RealObservable(sys.values, sys.projections);
}

Hermitian element_of_observable(const RealObservable& xi) {
    for (const auto& e : xi.atoms()) {
        if (!is_projection(e)) throw NotSharp("observable atom is not a projection");
    }
    for (std::size_t i = 0; i < xi.size(); ++i) {
        for (std::size_t j = i + 1; j < xi.size(); ++j) {
            const double overlap = frobenius_norm(Matrix(xi.atom(i).mat() * xi.atom(j).mat()));
            if (overlap > 1e-7) {
                throw OverlappingAtoms("observable atoms are not pairwise orthogonal");
            }
        }
    }
    Matrix acc = Matrix::Zero(xi.dim(), xi.dim());
    for (std::size_t i = 0; i < xi.size(); ++i) acc += xi.value(i) * xi.atom(i).mat();
    return Hermitian(acc);
}

JointObservable joint_spectral_measure(const std::vector<RealObservable>& parts) {
    if (parts.empty()) throw Error("joint spectral measure needs at least one observable");
    const int n = parts.front().dim();
    for (const auto& p : parts) {
        if (p.dim() != n) throw DimensionMismatch("observables act on different dimensions");
        if (!is_sharp(p)) throw NotSharp("joint spectral measure requires sharp observables");
    }
    // all atoms across all observables must pairwise commute
    std::vector<const Hermitian*> flat;
    for (const auto& p : parts) {
        for (const auto& e : p.atoms()) flat.push_back(&e);
    }
    for (std::size_t i = 0; i < flat.size(); ++i) {
        for (std::size_t j = i + 1; j < flat.size(); ++j) {
            if (!commutes(*flat[i], *flat[j])) {
                throw NonCommutingRange(i, j, commutator_norm(*flat[i], *flat[j]),
                                        "observable ranges do not pairwise commute");
            }
        }
    }

    JointObservable out;
    std::vector<std::pair<std::vector<double>, Matrix>> current;
    current.emplace_back(std::vector<double>{}, Matrix(Matrix::Identity(n, n)));
    for (const auto& p : parts) {
        std::vector<std::pair<std::vector<double>, Matrix>> next;
        for (const auto& [tuple, proj] : current) {
            for (std::size_t k = 0; k < p.size(); ++k) {
                Matrix prod = proj * p.atom(k).mat();
                prod = 0.5 * (prod + prod.adjoint().eval());
                if (prod.trace().real() < 0.5) continue;  // zero joint atom, dropped
                auto t = tuple;
                t.push_back(p.value(k));
                next.emplace_back(std::move(t), std::move(prod));
            }
        }
        current = std::move(next);
    }
    for (auto& [tuple, proj] : current) {
        out.points.push_back(tuple);
        out.atoms.push_back(Hermitian(proj));
    }
    return out;
}

RealObservable g_function(const JointObservable& joint,
                          const std::function<double(const std::vector<double>&)>& G) {
    std::vector<double> vals;
    double scale = 1.0;
    for (const auto& t : joint.points) {
        const double v = G(t);
        if (!std::isfinite(v)) throw DomainError("G undefined at an occurring tuple");
        vals.push_back(v);
        scale = std::max(scale, std::abs(v));
    }
    const auto [reps, group] = cluster_values(vals, tolerances().eigen_cluster * scale);
    const int n = joint.atoms.front().dim();
    std::vector<Matrix> acc(reps.size(), Matrix::Zero(n, n));
    for (std::size_t i = 0; i < vals.size(); ++i) acc[group[i]] += joint.atoms[i].mat();
    std::vector<Hermitian> atoms;
    for (const auto& m : acc) atoms.push_back(Hermitian(m));
    return RealObservable(reps, atoms);
}

RealObservable marginal(const JointObservable& joint, std::size_t i) {
    return g_function(joint, [i](const std::vector<double>& t) { return t.at(i); });
}

std::vector<double> distribution(const DensityState& s, const Observable& xi) {
    std::vector<double> out;
    for (std::size_t i = 0; i < xi.size(); ++i) out.push_back(apply(s, xi.atom(i)));
    return out;
}

std::vector<double> distribution(const DensityState& s, const RealObservable& xi) {
    std::vector<double> out;
    for (std::size_t i = 0; i < xi.size(); ++i) out.push_back(apply(s, xi.atom(i)));
    return out;
}

double expectation(const DensityState& s, const RealObservable& xi) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) sum += xi.value(i) * apply(s, xi.atom(i));
    return sum;
}

} // namespace synaptic
