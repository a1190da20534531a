#pragma once

// Brute-force reference implementations over the full 2^N qubit space.
// Used by the test suites to check the symmetric-subspace machinery.

#include "spintangle/spin_algebra.hpp"

namespace spintangle::oracle {

inline constexpr int kMaxQubits = 12;

struct FullState {
    int n_qubits = 0;
    ComplexVector amplitudes;  // qubit 0 is the most significant bit
};

// Spreads Dicke amplitude c_n evenly over the C(N,n) bitstrings of weight n.
FullState dicke_to_full(const SpinState& state);

// N-fold tensor power of a single-qubit state (a, b) = a|0> + b|1>.
FullState tensor_power(const ComplexVector& qubit, int n_qubits);

// Partial trace over the last N - q qubits; keeps qubits 0..q-1.
ComplexMatrix brute_partial_trace(const FullState& full, int q);

struct SymmetricProjection {
    ComplexMatrix rho;        // (q+1)x(q+1), Dicke basis of the q qubits
    double residual = 0.0;    // trace weight outside the symmetric sector
};

// Projects a 2^q x 2^q matrix onto the q-qubit symmetric subspace.
SymmetricProjection symmetric_project(const ComplexMatrix& dm);

// exp[i theta (J_x sin phi - J_y cos phi)] |j,j> via Hermitian eigendecomposition.
ComplexVector scs_by_exponential(SpinQuantumNumber j, const BlochAngles& angles);

}  // namespace spintangle::oracle
