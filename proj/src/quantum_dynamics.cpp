#include "spintangle/quantum_dynamics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "spintangle/errors.hpp"

namespace spintangle {
namespace {

// exp(-i p J_y) as a real matrix. J_y = Z J_x Z^dagger with Z = exp(-i pi/2 J_z),
// and J_x is real symmetric tridiagonal, so only a tridiagonal eigensolve is needed.
Eigen::MatrixXd rotation_about_y(SpinQuantumNumber j, double p) {
    const int dim = j.dim();
    const double jv = j.value();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(std::max(dim - 1, 0));
    for (int n = 1; n < dim; ++n) {
        const double m = jv - n;
        sub[n - 1] = 0.5 * std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalViolation("J_x eigendecomposition failed");

    const Eigen::MatrixXd& v = solver.eigenvectors();
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    Eigen::VectorXcd phases(dim);
    for (int k = 0; k < dim; ++k) phases[k] = std::polar(1.0, -p * lambda[k]);
    const ComplexMatrix exp_jx = v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();

    Eigen::MatrixXd out(dim, dim);
    double max_imag = 0.0;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            // Z_aa conj(Z_bb) = exp(-i pi/2 (m_a - m_b)) with m_a - m_b = b - a.
            const Complex z = std::polar(1.0, -0.5 * std::numbers::pi * (b - a));
            const Complex entry = z * exp_jx(a, b);
            out(a, b) = entry.real();
            max_imag = std::max(max_imag, std::abs(entry.imag()));
        }
    }
    if (max_imag > 1e-9) throw NumericalViolation("exp(-i p J_y) is not real in the |j,m> basis");
    return out;
}

}  // namespace

FloquetUnitary::FloquetUnitary(const KickedTopParams& params) : params_(params) {
    if (!std::isfinite(params.kappa) || !std::isfinite(params.p)) {
        throw InvalidParameter("kick parameters must be finite");
    }
    const int dim = params.j.dim();
    const double jv = params.j.value();
    torsion_phases_.resize(dim);
    for (int n = 0; n < dim; ++n) {
        const double m = jv - n;
        torsion_phases_[n] = std::polar(1.0, -params.kappa * m * m / (2.0 * jv));
    }
    rotation_ = rotation_about_y(params.j, params.p);
}

ComplexMatrix FloquetUnitary::matrix() const {
    return torsion_phases_.asDiagonal() * rotation_.cast<Complex>();
}

SpinState FloquetUnitary::apply(const SpinState& state) const {
    if (state.j() != params_.j) throw InvalidParameter("state and unitary have different j");
    const ComplexVector& psi = state.amplitudes();
    Eigen::Matrix<double, Eigen::Dynamic, 2> parts(dim(), 2);
    parts.col(0) = psi.real();
    parts.col(1) = psi.imag();
    const Eigen::Matrix<double, Eigen::Dynamic, 2> rotated = rotation_ * parts;
    ComplexVector out(dim());
    for (int n = 0; n < dim(); ++n) out[n] = torsion_phases_[n] * Complex(rotated(n, 0), rotated(n, 1));
    return SpinState(params_.j, std::move(out));
}

FloquetUnitary build_unitary(const KickedTopParams& params) { return FloquetUnitary(params); }

void propagate(const SpinState& state, const FloquetUnitary& unitary, int n_kicks,
               const std::function<void(int, const SpinState&)>& visit) {
    if (n_kicks < 0) throw InvalidParameter("kick count must be non-negative");
    if (state.j() != unitary.params().j) throw InvalidParameter("state and unitary have different j");
    SpinState current = state;
    visit(0, current);
    for (int k = 1; k <= n_kicks; ++k) {
        current = unitary.apply(current);
        visit(k, current);
    }
}

std::vector<SpinState> evolve(const SpinState& state, const FloquetUnitary& unitary, int n_kicks) {
    std::vector<SpinState> out;
    if (n_kicks >= 0) out.reserve(static_cast<std::size_t>(n_kicks) + 1);
    propagate(state, unitary, n_kicks, [&](int, const SpinState& s) { out.push_back(s); });
    return out;
}

}  // namespace spintangle
