#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "synaptic/observable.hpp"

namespace synaptic {

/// Row-stochastic kernel from a source outcome set to a target one, with the
/// probability-vector conditions required only off a declared set of null
/// source outcomes. An empty null ideal makes it an ordinary Markov kernel.
struct WeakMarkovKernel {
    std::vector<std::string> source;
    std::vector<std::string> target;
    Eigen::MatrixXd rows;                 // |source| x |target|
    std::set<std::size_t> null_ideal;     // source indices exempt from the row conditions
};

struct KernelIssue {
    std::size_t row;
    std::string condition;   // "range" or "row-sum"
};

/// Row conditions checked off the null ideal; returns every violation found.
std::vector<KernelIssue> check_kernel(const WeakMarkovKernel& nu);

/// Throwing form of check_kernel.
WeakMarkovKernel validate_kernel(std::vector<std::string> source,
                                 std::vector<std::string> target,
                                 Eigen::MatrixXd rows,
                                 std::set<std::size_t> null_ideal = {});

/// nu ~ mu modulo the given ideal: rows agree entrywise off it.
bool kernel_equiv(const WeakMarkovKernel& nu, const WeakMarkovKernel& mu,
                  const std::set<std::size_t>& ideal);

/// (nu P)(y) = sum_x nu(x,{y}) P(x).
std::vector<double> pushforward(const WeakMarkovKernel& nu, const std::vector<double>& p);

/// xi(f) = sum_x f(x) xi({x}); f entries must lie in [0,1] off the null atoms.
Hermitian integrate(const Observable& xi, const std::vector<double>& f);

/// The unique fuzzy version of xi under nu: atom(y) = xi(nu(.,{y})). The
/// defining state identity is certified on the spanning state family before
/// the result is returned.
Observable smear(const Observable& xi, const WeakMarkovKernel& nu);

/// Finite function-model representation of the commutative algebra generated
/// by a commuting family: atoms are the maximal common eigenprojections,
/// labels the value tuples of the inputs on them, and represent() realizes
/// any real function on the atoms as an element.
struct LoomisSikorski {
    std::vector<std::vector<double>> labels;  // labels[x][i]: value of input i on atom x
    std::vector<Hermitian> atoms;

    Hermitian represent(const std::vector<double>& f) const;
};

LoomisSikorski finite_loomis_sikorski(const std::vector<Hermitian>& commuting,
                                      std::uint64_t seed = 0);

struct Decomposition {
    Observable sharp;
    WeakMarkovKernel kernel;
};

/// Writes a commuting-range observable as a smearing of the joint-eigenspace
/// projection-valued observable; refuses non-commuting ranges with a witness.
Decomposition decompose_commuting(const Observable& eta, std::uint64_t seed = 0);

} // namespace synaptic
