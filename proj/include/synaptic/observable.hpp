#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "synaptic/matrix.hpp"
#include "synaptic/states.hpp"

namespace synaptic {

/// An effect-valued measure on a finite outcome set: one effect per outcome,
/// finitely additive, total mass the identity. Set evaluations are derived by
/// summing atoms.
class Observable {
public:
    Observable(std::vector<std::string> labels, std::vector<Hermitian> atoms);

    std::size_t size() const { return atoms_.size(); }
    int dim() const { return atoms_.front().dim(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const Hermitian& atom(std::size_t i) const { return atoms_[i]; }
    const std::vector<Hermitian>& atoms() const { return atoms_; }

    std::size_t index_of(const std::string& label) const;

    /// xi({x}) = 0, i.e. x belongs to every set of the null ideal I_xi.
    bool is_null_atom(std::size_t i) const;
    std::vector<std::size_t> null_atoms() const;

private:
    std::vector<std::string> labels_;
    std::vector<Hermitian> atoms_;
};

/// An observable whose outcomes carry distinct real values, kept ascending.
class RealObservable {
public:
    RealObservable(std::vector<double> values, std::vector<Hermitian> atoms);

    std::size_t size() const { return atoms_.size(); }
    int dim() const { return atoms_.front().dim(); }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t i) const { return values_[i]; }
    const Hermitian& atom(std::size_t i) const { return atoms_[i]; }
    const std::vector<Hermitian>& atoms() const { return atoms_; }

    Observable to_observable() const;

private:
    std::vector<double> values_;
    std::vector<Hermitian> atoms_;
};

/// Joint observable on R^n-labeled atoms: one point tuple per atom.
struct JointObservable {
    std::vector<std::vector<double>> points;
    std::vector<Hermitian> atoms;
};

Hermitian evaluate(const Observable& xi, const std::vector<std::string>& subset);

bool is_sharp(const Observable& xi);
bool is_sharp(const RealObservable& xi);

struct CommutatorWitness {
    std::size_t first;
    std::size_t second;
    double norm;
};

bool has_commuting_range(const Observable& xi);
std::optional<CommutatorWitness> noncommuting_witness(const Observable& xi);

Observable f_function(const Observable& xi,
                      const std::function<std::string(const std::string&)>& f);

/// The sharp real observable of an element: outcomes are the distinct
/// eigenvalues, atoms the eigenprojections.
RealObservable observable_of_element(const Hermitian& a);

/// Inverse correspondence: requires orthogonal projection atoms.
Hermitian element_of_observable(const RealObservable& xi);

JointObservable joint_spectral_measure(const std::vector<RealObservable>& parts);

RealObservable g_function(const JointObservable& joint,
                          const std::function<double(const std::vector<double>&)>& G);

/// Marginal i of a joint observable, as a real observable.
RealObservable marginal(const JointObservable& joint, std::size_t i);

std::vector<double> distribution(const DensityState& s, const Observable& xi);
std::vector<double> distribution(const DensityState& s, const RealObservable& xi);
double expectation(const DensityState& s, const RealObservable& xi);

} // namespace synaptic
