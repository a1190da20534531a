#pragma once

#include <optional>
#include <span>

#include "spintangle/classical_top.hpp"
#include "spintangle/spin_algebra.hpp"

namespace spintangle {

// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
public:
    // Validates hermiticity (1e-12) and trace (1e-10). Positivity is checked
    // where eigenvalues are computed anyway (entropy).
    explicit DensityMatrix(ComplexMatrix rho);
    static DensityMatrix pure(const ComplexVector& psi);

    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return rho_; }
    Eigen::VectorXd eigenvalues() const;

private:
    ComplexMatrix rho_;
};

// Reduced state of q qubits of a symmetric N = 2j qubit state, expressed in
// the (q+1)-dimensional Dicke basis of the kept qubits. Requires 1 <= q <= 2j-1.
DensityMatrix reduced_state(const SpinState& state, int q);

// Entropy in bits. Eigenvalues in [-1e-10, 1e-12) contribute nothing; more
// negative ones raise InvalidState.
double von_neumann_entropy(const DensityMatrix& rho);

// Half the trace norm of rho - sigma, clipped to [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// h(D) in bits with h(0) = h(1) = 0.
double binary_entropy(double D);

// D log2(d-1) + h(D), the Fannes-Audenaert entropy continuity bound.
double fa_rhs(double D, int d);

struct LooseBound {
    double value = 0.0;
    double distance = 0.0;  // full-state trace distance
    bool valid = false;     // distance <= 1 - 1/d, where fa_rhs is monotone
};

// Bound from the full-state trace distance to a pure reference state. Cheap
// (one overlap), and dominates the reduced-state bound whenever it is valid.
LooseBound loose_bound(const SpinState& state, const SpinState& reference, int d);

struct BoundRecord {
    int kick = 0;
    int q = 0;
    double entropy = 0.0;                        // S_q, bits
    std::optional<double> d_expectation;         // D_re, to the SCS at <J>
    std::optional<double> d_classical;           // D_re', to the SCS at the classical point
    double bound = 0.0;                          // fa_rhs(min(D_re, D_re'), q+1)
    std::optional<LooseBound> loose;
    Vec3 expectation = Vec3::Zero();
    std::optional<SpherePoint> classical_point;
    bool degenerate_direction = false;

    double slack() const { return bound - entropy; }
};

// Entropy of q qubits and its upper bounds at one kick. The classical point
// is optional; without it only the expectation-value reference is used.
BoundRecord bound_record(const SpinState& state, int q,
                         const std::optional<SpherePoint>& classical_point, int kick);

// Largest |<SCS_a|SCS_b>| over distinct pairs of orbit points.
double orbit_overlap_criterion(std::span<const BlochAngles> orbit, SpinQuantumNumber j);

}  // namespace spintangle
