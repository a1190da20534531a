#pragma once

#include <cmath>
#include <random>

#include "spintangle/spin_algebra.hpp"

namespace spintangle::testing {

// Haar-ish random state: independent complex Gaussian amplitudes.
inline SpinState random_state(SpinQuantumNumber j, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    ComplexVector v(j.dim());
    for (auto& a : v) a = {gauss(rng), gauss(rng)};
    return SpinState::normalized(j, std::move(v));
}

// Max |a_i - e^{i chi} b_i| after removing the relative global phase.
inline double phase_aligned_distance(const ComplexVector& a, const ComplexVector& b) {
    const Complex inner = b.dot(a);
    const Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex(1.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace spintangle::testing
