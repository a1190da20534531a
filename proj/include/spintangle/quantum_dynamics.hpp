#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "spintangle/classical_top.hpp"
#include "spintangle/spin_algebra.hpp"

namespace spintangle {

// Kicked-top parameters with period tau = 1.
struct KickedTopParams {
    SpinQuantumNumber j;
    double kappa = 3.0;
    double p = 1.5707963267948966;

    ClassicalParams classical() const { return {kappa, p}; }
};

// One-period propagator U = exp(-i kappa/(2j) J_z^2) exp(-i p J_y).
//
// Stored factored: the torsion is a diagonal phase and the rotation
// exp(-i p J_y) is a real orthogonal matrix in the |j,m> basis, so a kick
// costs one real (2j+1)x(2j+1) by (2j+1)x2 product.
class FloquetUnitary {
public:
    explicit FloquetUnitary(const KickedTopParams& params);

    const KickedTopParams& params() const noexcept { return params_; }
    int dim() const noexcept { return params_.j.dim(); }

    // Dense U, assembled on demand.
    ComplexMatrix matrix() const;
    const Eigen::MatrixXd& rotation() const noexcept { return rotation_; }
    const ComplexVector& torsion_phases() const noexcept { return torsion_phases_; }

    SpinState apply(const SpinState& state) const;

private:
    KickedTopParams params_;
    ComplexVector torsion_phases_;
    Eigen::MatrixXd rotation_;
};

FloquetUnitary build_unitary(const KickedTopParams& params);

// [psi, U psi, ..., U^n psi]
std::vector<SpinState> evolve(const SpinState& state, const FloquetUnitary& unitary, int n_kicks);

// Streaming form of evolve: visit(k, U^k psi) for k = 0..n_kicks without
// keeping the sequence in memory.
void propagate(const SpinState& state, const FloquetUnitary& unitary, int n_kicks,
               const std::function<void(int, const SpinState&)>& visit);

}  // namespace spintangle
