#pragma once

#include <complex>
#include <compare>
#include <optional>

#include <Eigen/Dense>

namespace spintangle {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

// Spin quantum number j, stored as the integer 2j (= number of qubits N).
class SpinQuantumNumber {
public:
    // Accepts any positive half-integer, e.g. 0.5, 2, 3.5.
    explicit SpinQuantumNumber(double j);
    static SpinQuantumNumber from_twice(int twice_j);

    double value() const noexcept { return 0.5 * twice_; }
    int twice() const noexcept { return twice_; }
    int dim() const noexcept { return twice_ + 1; }

    auto operator<=>(const SpinQuantumNumber&) const = default;

private:
    SpinQuantumNumber() = default;
    int twice_ = 1;
};

// Pure state of a spin j, amplitudes indexed by the excitation number
// n = j - m, so index 0 is |j,j> and index 2j is |j,-j>.
class SpinState {
public:
    SpinState(SpinQuantumNumber j, ComplexVector amplitudes);

    // Rescales `amplitudes` to unit norm before validating.
    static SpinState normalized(SpinQuantumNumber j, ComplexVector amplitudes);
    static SpinState dicke(SpinQuantumNumber j, int excitations);

    SpinQuantumNumber j() const noexcept { return j_; }
    int dim() const noexcept { return j_.dim(); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    const Complex& operator[](int n) const { return amplitudes_[n]; }

private:
    SpinQuantumNumber j_;
    ComplexVector amplitudes_;
};

struct AngularMomentumOps {
    SpinQuantumNumber j;
    ComplexMatrix jx;
    ComplexMatrix jy;
    ComplexMatrix jz;
};

// theta in [0, pi], phi in [-pi, pi). At the poles phi is pinned to 0.
struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;

    // Validates theta and wraps phi into [-pi, pi).
    static BlochAngles make(double theta, double phi);
    // Direction of a nonzero vector; the norm is irrelevant.
    static BlochAngles from_direction(const Vec3& v);

    Vec3 unit_vector() const;
};

// Dense J_x, J_y, J_z in the |j,m> basis (hbar = 1).
AngularMomentumOps angular_momentum_ops(SpinQuantumNumber j);

// Spin coherent state |j, theta, phi> from its closed-form Dicke expansion.
// The amplitude on n = 0 is real and non-negative.
SpinState scs_state(SpinQuantumNumber j, const BlochAngles& angles);

// (<J_x>, <J_y>, <J_z>), evaluated in O(2j) from the ladder structure.
Vec3 expectation_J(const SpinState& state);

// Direction of an expectation vector. Returns nullopt when |v| < 1e-9 j,
// where the direction is undefined.
std::optional<BlochAngles> bloch_from_expectation(const Vec3& v, SpinQuantumNumber j);

// <a|b>
Complex state_overlap(const SpinState& a, const SpinState& b);

// log C(n, k) and the exact double-valued C(n, k) for small n.
double log_binomial(int n, int k);
double binomial(int n, int k);

}  // namespace spintangle
