#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spintangle/errors.hpp"
#include "spintangle/oracle.hpp"
#include "spintangle/spin_algebra.hpp"
#include "support.hpp"

using namespace spintangle;
using std::numbers::pi;

TEST_CASE("spin quantum number accepts half-integers only") {
    CHECK(SpinQuantumNumber(0.5).dim() == 2);
    CHECK(SpinQuantumNumber(3.5).twice() == 7);
    CHECK_THROWS_AS(SpinQuantumNumber(0.0), InvalidParameter);
    CHECK_THROWS_AS(SpinQuantumNumber(-1.0), InvalidParameter);
    CHECK_THROWS_AS(SpinQuantumNumber(1.25), InvalidParameter);
    CHECK_THROWS_AS(SpinQuantumNumber::from_twice(0), InvalidParameter);
}

TEST_CASE("spin state validates length and norm") {
    const SpinQuantumNumber j(1.0);
    CHECK_THROWS_AS(SpinState(j, ComplexVector::Ones(2)), InvalidParameter);
    CHECK_THROWS_AS(SpinState(j, ComplexVector::Ones(3)), InvalidState);
    CHECK(SpinState::normalized(j, ComplexVector::Ones(3)).amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("angular momentum operators, small spins") {
    SUBCASE("j = 1/2 is Pauli / 2") {
        const auto ops = angular_momentum_ops(SpinQuantumNumber(0.5));
        CHECK(ops.jz(0, 0).real() == 0.5);
        CHECK(ops.jz(1, 1).real() == -0.5);
        CHECK(std::abs(ops.jx(0, 1) - Complex(0.5)) < 1e-15);
        CHECK(std::abs(ops.jx(1, 0) - Complex(0.5)) < 1e-15);
        CHECK(std::abs(ops.jy(0, 1) - Complex(0, -0.5)) < 1e-15);
    }
    SUBCASE("j = 1 raising entries are sqrt 2") {
        const auto ops = angular_momentum_ops(SpinQuantumNumber(1.0));
        const ComplexMatrix jplus = ops.jx + Complex(0, 1) * ops.jy;
        CHECK(std::abs(jplus(0, 1) - std::sqrt(2.0)) < 1e-14);
        CHECK(std::abs(jplus(1, 2) - std::sqrt(2.0)) < 1e-14);
        CHECK(ops.jz.diagonal().real().isApprox(Eigen::Vector3d(1, 0, -1)));
    }
}

TEST_CASE("angular momentum algebra holds for a range of j") {
    for (int twice : {1, 2, 3, 8, 15, 40}) {
        CAPTURE(twice);
        const SpinQuantumNumber j = SpinQuantumNumber::from_twice(twice);
        const auto ops = angular_momentum_ops(j);
        const ComplexMatrix comm = ops.jx * ops.jy - ops.jy * ops.jx - Complex(0, 1) * ops.jz;
        CHECK(comm.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, j.value()));
        const ComplexMatrix casimir = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz -
                                      j.value() * (j.value() + 1) * ComplexMatrix::Identity(j.dim(), j.dim());
        CHECK(casimir.cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((ops.jx - ops.jx.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((ops.jy - ops.jy.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
    const auto ops = angular_momentum_ops(SpinQuantumNumber(4.0));
    CHECK((ops.jx * ops.jy - ops.jy * ops.jx - Complex(0, 1) * ops.jz).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("spin coherent state closed form") {
    SUBCASE("north pole is the highest-weight state") {
        const auto s = scs_state(SpinQuantumNumber(3.0), BlochAngles::make(0.0, 1.234));
        CHECK(std::abs(s[0] - Complex(1.0)) < 1e-15);
        CHECK(s.amplitudes().tail(6).norm() == 0.0);
    }
    SUBCASE("spin 1/2 is the single-qubit state") {
        const double theta = 1.1, phi = -2.3;
        const auto s = scs_state(SpinQuantumNumber(0.5), BlochAngles::make(theta, phi));
        CHECK(std::abs(s[0] - std::cos(theta / 2)) < 1e-15);
        CHECK(std::abs(s[1] - std::polar(std::sin(theta / 2), phi)) < 1e-15);
    }
    SUBCASE("j = 2 on the equator has a binomial profile") {
        const auto s = scs_state(SpinQuantumNumber(2.0), BlochAngles::make(pi / 2, 0.0));
        const double expected[] = {0.25, 0.5, std::sqrt(6.0) / 4, 0.5, 0.25};
        for (int n = 0; n < 5; ++n) CHECK(std::abs(s[n] - expected[n]) < 1e-15);
    }
    SUBCASE("log-space branch is normalized and continuous with direct branch") {
        for (double j : {30.0, 30.5, 200.0, 500.0}) {
            const auto s = scs_state(SpinQuantumNumber(j), BlochAngles::make(2.1, 0.9));
            CHECK(std::abs(s.amplitudes().squaredNorm() - 1.0) < 1e-12);
        }
        const auto south = scs_state(SpinQuantumNumber(100.0), BlochAngles::make(pi, 0.0));
        CHECK(std::abs(south[200]) == doctest::Approx(1.0));
    }
}

TEST_CASE("closed-form SCS matches the matrix exponential up to global phase") {
    for (double jv : {0.5, 1.0, 5.0, 25.0}) {
        const SpinQuantumNumber j(jv);
        for (double theta : {0.0, 0.4, 1.3, 2.2, 3.0, pi}) {
            for (double phi : {-3.0, -1.0, 0.0, 0.7, 2.5}) {
                const BlochAngles a = BlochAngles::make(theta, phi);
                const double err = testing::phase_aligned_distance(scs_state(j, a).amplitudes(),
                                                                   oracle::scs_by_exponential(j, a));
                CAPTURE(jv);
                CAPTURE(theta);
                CAPTURE(phi);
                CHECK(err <= 1e-10);
            }
        }
    }
}

TEST_CASE("expectation values") {
    const SpinQuantumNumber j(2.0);
    CHECK((expectation_J(SpinState::dicke(j, 0)) - Vec3(0, 0, 2)).norm() < 1e-15);

    ComplexVector cat = ComplexVector::Zero(5);
    cat[0] = cat[4] = 1.0 / std::sqrt(2.0);
    CHECK(expectation_J(SpinState(j, cat)).norm() < 1e-15);

    for (double jv : {0.5, 3.0, 12.5, 200.0}) {
        const BlochAngles a = BlochAngles::make(2.1, 0.9);
        const Vec3 v = expectation_J(scs_state(SpinQuantumNumber(jv), a));
        CHECK((v - jv * a.unit_vector()).norm() <= 1e-8);
    }
}

TEST_CASE("expectation agrees with dense operators on random states") {
    std::mt19937_64 rng(7);
    const SpinQuantumNumber j(3.5);
    const auto ops = angular_momentum_ops(j);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing::random_state(j, rng);
        const auto& psi = s.amplitudes();
        const Vec3 dense(psi.dot(ops.jx * psi).real(), psi.dot(ops.jy * psi).real(), psi.dot(ops.jz * psi).real());
        CHECK((expectation_J(s) - dense).norm() < 1e-12);
        CHECK(expectation_J(s).norm() <= j.value() + 1e-10);
    }
}

TEST_CASE("bloch_from_expectation") {
    const SpinQuantumNumber j(4.0);
    const auto north = bloch_from_expectation({0, 0, 4}, j);
    REQUIRE(north);
    CHECK(north->theta == 0.0);
    CHECK(north->phi == 0.0);
    const auto east = bloch_from_expectation({4, 0, 0}, j);
    REQUIRE(east);
    CHECK(east->theta == doctest::Approx(pi / 2));
    CHECK(east->phi == 0.0);
    CHECK_FALSE(bloch_from_expectation({0, 0, 0}, j));
    CHECK_FALSE(bloch_from_expectation({1e-9, 0, 0}, j));
    CHECK_THROWS_AS(bloch_from_expectation({5, 0, 0}, j), InvalidParameter);
}

TEST_CASE("bloch_from_expectation inverts expectation_J of coherent states") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> theta_dist(0.05, pi - 0.05), phi_dist(-pi, pi);
    for (int trial = 0; trial < 200; ++trial) {
        const BlochAngles a = BlochAngles::make(theta_dist(rng), phi_dist(rng));
        const SpinQuantumNumber j = SpinQuantumNumber::from_twice(1 + trial % 60);
        const auto back = bloch_from_expectation(expectation_J(scs_state(j, a)), j);
        REQUIRE(back);
        CHECK(std::abs(back->theta - a.theta) <= 1e-8);
        CHECK(std::abs(std::remainder(back->phi - a.phi, 2 * pi)) <= 1e-8);
    }
}

TEST_CASE("state overlap") {
    const SpinQuantumNumber j(4.0);
    std::mt19937_64 rng(3);
    const auto s = testing::random_state(j, rng);
    CHECK(std::abs(state_overlap(s, s) - 1.0) < 1e-14);

    const auto north = scs_state(j, BlochAngles::make(0, 0));
    CHECK(std::abs(state_overlap(north, scs_state(j, BlochAngles::make(pi, 0)))) < 1e-120);
    CHECK(std::abs(state_overlap(north, scs_state(j, BlochAngles::make(pi / 2, 0)))) ==
          doctest::Approx(0.0625).epsilon(1e-14));
    CHECK_THROWS_AS(state_overlap(s, scs_state(SpinQuantumNumber(3.0), {})), InvalidParameter);
}

TEST_CASE("BlochAngles normalizes its ranges") {
    CHECK(BlochAngles::make(1.0, pi).phi == doctest::Approx(-pi));
    CHECK(BlochAngles::make(1.0, 0.9).phi == 0.9);
    CHECK(BlochAngles::make(1.0, 2 * pi + 0.5).phi == doctest::Approx(0.5));
    CHECK(BlochAngles::make(pi, 2.0).phi == 0.0);
    CHECK_THROWS_AS(BlochAngles::make(-0.1, 0.0), InvalidParameter);
    CHECK_THROWS_AS(BlochAngles::make(4.0, 0.0), InvalidParameter);
    CHECK(BlochAngles::make(2.1, 0.9).unit_vector().norm() == doctest::Approx(1.0));
}
