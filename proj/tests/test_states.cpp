#include <doctest.h>

#include <cmath>

#include "synaptic/observable.hpp"
#include "synaptic/states.hpp"
#include "test_util.hpp"

using namespace synaptic;
using testutil::random_hermitian;

TEST_CASE("density state validation") {
    CHECK_THROWS_AS(DensityState(Hermitian::diagonal({0.5, 0.7})), NotPositive);
    CHECK_THROWS_AS(DensityState(Hermitian::diagonal({1.5, -0.5})), NotPositive);
    CHECK_NOTHROW(DensityState::maximally_mixed(3));
}

TEST_CASE("apply") {
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
    e0(0) = 1.0;
    const auto s = DensityState::pure(e0);
    CHECK(apply(s, Hermitian::diagonal({1, 2})) == doctest::Approx(1.0));
    CHECK(apply(s, Hermitian::identity(2)) == doctest::Approx(1.0));

    std::mt19937_64 rng(40);
    const auto a = random_hermitian(2, rng);
    CHECK(apply(DensityState::maximally_mixed(2), a) ==
          doctest::Approx(a.mat().trace().real() / 2));
    CHECK_THROWS_AS(apply(s, Hermitian::identity(3)), DimensionMismatch);

    // linearity
    const auto b = random_hermitian(2, rng);
    const auto mix = DensityState::maximally_mixed(2);
    CHECK(apply(mix, 0.3 * a + 1.7 * b) ==
          doctest::Approx(0.3 * apply(mix, a) + 1.7 * apply(mix, b)).epsilon(1e-12));

    // positivity
    const Hermitian sq(Matrix(a.mat() * a.mat()));
    CHECK(apply(mix, sq) >= 0.0);
}

TEST_CASE("spanning states are ordering") {
    std::mt19937_64 rng(41);
    const auto states = spanning_states(3);
    CHECK(states.size() == 3 + 4 * 3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_hermitian(3, rng);
        const auto b = random_hermitian(3, rng);
        bool all_leq = true;
        for (const auto& s : states) {
            if (apply(s, a) > apply(s, b) + 1e-10) all_leq = false;
        }
        CHECK(all_leq == leq(a, b));
        // forward direction on a genuinely ordered pair
        const auto c = a + Hermitian(Matrix(b.mat() * b.mat()));
        for (const auto& s : states) CHECK(apply(s, a) <= apply(s, c) + 1e-10);
    }
}

TEST_CASE("spanning states separate") {
    std::mt19937_64 rng(42);
    const auto states = spanning_states(3);
    const auto a = random_hermitian(3, rng);
    const auto b = random_hermitian(3, rng);
    bool identical = true;
    for (const auto& s : states) {
        if (std::abs(apply(s, a) - apply(s, b)) > 1e-10) identical = false;
    }
    CHECK_FALSE(identical);
}

TEST_CASE("distribution") {
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
    e0(0) = 1.0;
    const auto s = DensityState::pure(e0);

    const Observable trivial({"only"}, {Hermitian::identity(2)});
    const auto dt = distribution(s, trivial);
    REQUIRE(dt.size() == 1);
    CHECK(dt[0] == doctest::Approx(1.0).epsilon(1e-12));

    const Observable pvm({"0", "1"},
                         {Hermitian::diagonal({1, 0}), Hermitian::diagonal({0, 1})});
    const auto d = distribution(s, pvm);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(0.0));

    std::mt19937_64 rng(43);
    const auto xi = testutil::random_commuting_povm(3, 2, 3, rng);
    const auto mix = DensityState::maximally_mixed(3);
    double sum = 0.0;
    for (double p : distribution(mix, xi)) {
        CHECK(p >= -1e-12);
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("expectation") {
    const auto xi_c = observable_of_element(Hermitian::diagonal({2.5, 2.5}));
    CHECK(expectation(DensityState::maximally_mixed(2), xi_c) == doctest::Approx(2.5));

    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
    e0(0) = 1.0;
    CHECK(expectation(DensityState::pure(e0), observable_of_element(Hermitian::diagonal({1, 2}))) ==
          doctest::Approx(1.0));

    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_hermitian(4, rng);
        for (const auto& s : spanning_states(4)) {
            CHECK(expectation(s, observable_of_element(a)) ==
                  doctest::Approx(apply(s, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("norm via states") {
    const auto a = Hermitian::diagonal({-3, 2});
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
    e0(0) = 1.0;
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
    e1(1) = 1.0;
    const auto b = norm_via_states(a, {DensityState::pure(e0), DensityState::pure(e1)});
    CHECK(b.certified_max == doctest::Approx(3.0));
    CHECK(b.sample_max == doctest::Approx(3.0));

    const auto z = norm_via_states(Hermitian::zero(2), {});
    CHECK(z.certified_max == 0.0);
    CHECK(z.sample_max == 0.0);

    std::mt19937_64 rng(45);
    std::normal_distribution<double> g(0.0, 1.0);
    const auto x = random_hermitian(2, rng);
    std::vector<DensityState> sample;
    for (int i = 0; i < 1000; ++i) {
        Eigen::VectorXcd v(2);
        v(0) = Complex(g(rng), g(rng));
        v(1) = Complex(g(rng), g(rng));
        sample.push_back(DensityState::pure(v));
    }
    const auto nb = norm_via_states(x, sample);
    CHECK(nb.sample_max <= nb.certified_max + 1e-12);
    // statistical: in dim 2 a thousand random pure states get close
    CHECK(nb.sample_max >= 0.95 * nb.certified_max);
}

TEST_CASE("distributions determine the observable") {
    std::mt19937_64 rng(46);
    const auto xi1 = testutil::random_commuting_povm(3, 2, 3, rng);
    const auto xi2 = testutil::random_commuting_povm(3, 2, 3, rng);
    const auto states = spanning_states(3);
    bool same = true;
    for (const auto& s : states) {
        const auto d1 = distribution(s, xi1);
        const auto d2 = distribution(s, xi2);
        for (std::size_t i = 0; i < d1.size(); ++i) {
            if (std::abs(d1[i] - d2[i]) > 1e-10) same = false;
        }
    }
    // distinct random observables disagree on some spanning state
    CHECK_FALSE(same);

    // any atom perturbation is visible to some spanning state
    Matrix delta = Matrix::Zero(3, 3);
    delta(0, 1) = Complex(1e-3, 2e-3);
    delta(1, 0) = std::conj(delta(0, 1));
    double seen = 0.0;
    for (const auto& s : states) {
        seen = std::max(seen, std::abs(apply(s, Hermitian(delta))));
    }
    CHECK(seen > 1e-4);
}

TEST_CASE("expectation of an f-function matches the pushforward integral") {
    std::mt19937_64 rng(47);
    const auto a = random_hermitian(4, rng);
    const auto xi = observable_of_element(a);
    for (const auto& s : spanning_states(4)) {
        // s(f(xi)) = sum f(t) s_xi(t)
        const auto fxi = observable_of_element(functional_calculus(a, [](double t) {
            return t * t + 1;
        }));
        double direct = expectation(s, fxi);
        double via_dist = 0.0;
        const auto d = distribution(s, xi);
        for (std::size_t i = 0; i < xi.size(); ++i) {
            via_dist += (xi.value(i) * xi.value(i) + 1) * d[i];
        }
        CHECK(direct == doctest::Approx(via_dist).epsilon(1e-9));
    }
}
