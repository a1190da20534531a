#include "spintangle/oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "spintangle/errors.hpp"

namespace spintangle::oracle {

FullState dicke_to_full(const SpinState& state) {
    const int N = state.j().twice();
    if (N > kMaxQubits) {
        throw CapacityError("oracle supports at most " + std::to_string(kMaxQubits) + " qubits, got " +
                            std::to_string(N));
    }
    FullState full{N, ComplexVector::Zero(std::size_t{1} << N)};
    for (std::size_t bits = 0; bits < static_cast<std::size_t>(full.amplitudes.size()); ++bits) {
        const int weight = std::popcount(bits);
        full.amplitudes[bits] = state[weight] / std::sqrt(binomial(N, weight));
    }
    return full;
}

FullState tensor_power(const ComplexVector& qubit, int n_qubits) {
    if (qubit.size() != 2) throw InvalidParameter("qubit state must have two amplitudes");
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw CapacityError("qubit count out of oracle range");
    ComplexVector v = qubit;
    for (int k = 1; k < n_qubits; ++k) {
        ComplexVector next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            next[2 * i] = v[i] * qubit[0];
            next[2 * i + 1] = v[i] * qubit[1];
        }
        v = std::move(next);
    }
    return {n_qubits, std::move(v)};
}

ComplexMatrix brute_partial_trace(const FullState& full, int q) {
    const int N = full.n_qubits;
    if (q < 1 || q > N - 1) throw InvalidParameter("partition size out of range");
    const std::size_t kept = std::size_t{1} << q;
    const std::size_t traced = std::size_t{1} << (N - q);
    // Row-major view: row index = kept bits (most significant), column = traced bits.
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
        full.amplitudes.data(), static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(traced));
    return psi * psi.adjoint();
}

SymmetricProjection symmetric_project(const ComplexMatrix& dm) {
    const auto size = static_cast<std::size_t>(dm.rows());
    if (dm.rows() != dm.cols() || !std::has_single_bit(size)) {
        throw InvalidParameter("matrix is not 2^q x 2^q");
    }
    const int q = std::countr_zero(size);
    ComplexMatrix basis = ComplexMatrix::Zero(dm.rows(), q + 1);
    for (std::size_t bits = 0; bits < size; ++bits) {
        const int weight = std::popcount(bits);
        basis(static_cast<Eigen::Index>(bits), weight) = 1.0 / std::sqrt(binomial(q, weight));
    }
    SymmetricProjection out;
    out.rho = basis.adjoint() * dm * basis;
    out.residual = (dm.trace() - out.rho.trace()).real();
    return out;
}

ComplexVector scs_by_exponential(SpinQuantumNumber j, const BlochAngles& angles) {
    const AngularMomentumOps ops = angular_momentum_ops(j);
    const ComplexMatrix generator =
        angles.theta * (ops.jx * std::sin(angles.phi) - ops.jy * std::cos(angles.phi));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(generator);
    if (solver.info() != Eigen::Success) throw NumericalViolation("generator eigensolve failed");
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const ComplexMatrix& v = solver.eigenvectors();
    ComplexVector phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) phases[k] = std::polar(1.0, lambda[k]);
    // exp(iG) |j,j> = V e^{i Lambda} V^dagger e_0
    return v * phases.asDiagonal() * v.row(0).adjoint();
}

}  // namespace spintangle::oracle
