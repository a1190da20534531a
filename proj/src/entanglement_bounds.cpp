#include "spintangle/entanglement_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spintangle/errors.hpp"

namespace spintangle {
namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-10;
constexpr double kNegativeEigenTolerance = 1e-10;
constexpr double kZeroEigenvalue = 1e-12;
constexpr int kDirectBinomialLimit = 60;

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalViolation("Hermitian eigensolve failed");
    return solver.eigenvalues();
}

// sqrt(C(q,r) C(N-q,s) / C(N,r+s)) for r in [0,q], s in [0,N-q].
Eigen::MatrixXd dicke_split_weights(int N, int q) {
    Eigen::MatrixXd w(q + 1, N - q + 1);
    if (N <= kDirectBinomialLimit) {
        for (int r = 0; r <= q; ++r)
            for (int s = 0; s <= N - q; ++s)
                w(r, s) = std::sqrt(binomial(q, r) * binomial(N - q, s) / binomial(N, r + s));
        return w;
    }
    std::vector<double> log_fact(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) log_fact[k] = std::lgamma(k + 1.0);
    auto log_c = [&](int n, int k) { return log_fact[n] - log_fact[k] - log_fact[n - k]; };
    for (int r = 0; r <= q; ++r)
        for (int s = 0; s <= N - q; ++s)
            w(r, s) = std::exp(0.5 * (log_c(q, r) + log_c(N - q, s) - log_c(N, r + s)));
    return w;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1) throw InvalidState("density matrix must be square");
    const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermitianTolerance)) {
        throw InvalidState("density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
    }
    const Complex tr = rho_.trace();
    if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
        throw InvalidState("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    return DensityMatrix(psi * psi.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(rho_); }

DensityMatrix reduced_state(const SpinState& state, int q) {
    const int N = state.j().twice();
    if (q < 1 || q > N - 1) {
        throw InvalidParameter("partition size q = " + std::to_string(q) + " outside [1, " +
                               std::to_string(N - 1) + "]");
    }
    const Eigen::MatrixXd w = dicke_split_weights(N, q);
    const ComplexVector& c = state.amplitudes();
    ComplexMatrix a(q + 1, N - q + 1);
    for (int r = 0; r <= q; ++r)
        for (int s = 0; s <= N - q; ++s) a(r, s) = c[r + s] * w(r, s);
    ComplexMatrix rho = a * a.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda < -kNegativeEigenTolerance) {
            throw InvalidState("density matrix has eigenvalue " + std::to_string(lambda));
        }
        if (lambda > kZeroEigenvalue) s -= lambda * std::log2(lambda);
    }
    return std::max(s, 0.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw InvalidParameter("trace distance of matrices of different size");
    const double d = 0.5 * hermitian_eigenvalues(rho.matrix() - sigma.matrix()).cwiseAbs().sum();
    return std::clamp(d, 0.0, 1.0);
}

double binary_entropy(double D) {
    if (D <= 0.0 || D >= 1.0) return 0.0;
    return -D * std::log2(D) - (1.0 - D) * std::log2(1.0 - D);
}

double fa_rhs(double D, int d) {
    if (d < 2) throw InvalidParameter("dimension must be at least 2");
    if (!(D >= -1e-12 && D <= 1.0 + 1e-12)) {
        throw InvalidParameter("trace distance " + std::to_string(D) + " outside [0, 1]");
    }
    D = std::clamp(D, 0.0, 1.0);
    return D * std::log2(d - 1.0) + binary_entropy(D);
}

LooseBound loose_bound(const SpinState& state, const SpinState& reference, int d) {
    const double fidelity = std::norm(state_overlap(state, reference));
    LooseBound out;
    out.distance = std::sqrt(std::clamp(1.0 - fidelity, 0.0, 1.0));
    out.value = fa_rhs(out.distance, d);
    out.valid = out.distance <= 1.0 - 1.0 / d;
    return out;
}

BoundRecord bound_record(const SpinState& state, int q,
                         const std::optional<SpherePoint>& classical_point, int kick) {
    const DensityMatrix rho = reduced_state(state, q);
    const int d = q + 1;
    const SpinQuantumNumber kept = SpinQuantumNumber::from_twice(q);

    BoundRecord rec;
    rec.kick = kick;
    rec.q = q;
    rec.entropy = von_neumann_entropy(rho);
    rec.expectation = expectation_J(state);
    rec.classical_point = classical_point;

    // Pick the reference with the smaller full-state distance for the loose bound.
    auto consider_loose = [&](const BlochAngles& angles) {
        const LooseBound candidate = loose_bound(state, scs_state(state.j(), angles), d);
        if (!rec.loose || candidate.distance < rec.loose->distance) rec.loose = candidate;
    };
    auto reduced_distance = [&](const BlochAngles& angles) {
        return trace_distance(rho, DensityMatrix::pure(scs_state(kept, angles).amplitudes()));
    };

    if (const auto direction = bloch_from_expectation(rec.expectation, state.j())) {
        rec.d_expectation = reduced_distance(*direction);
        consider_loose(*direction);
    } else {
        rec.degenerate_direction = true;
    }
    if (classical_point) {
        const BlochAngles angles = classical_point->angles();
        rec.d_classical = reduced_distance(angles);
        consider_loose(angles);
    }

    if (rec.d_expectation || rec.d_classical) {
        const double D = std::min(rec.d_expectation.value_or(1.0), rec.d_classical.value_or(1.0));
        rec.bound = fa_rhs(D, d);
    } else {
        // No reference state: fall back to the entropy cap.
        rec.bound = std::log2(static_cast<double>(d));
    }
    return rec;
}

double orbit_overlap_criterion(std::span<const BlochAngles> orbit, SpinQuantumNumber j) {
    if (orbit.size() < 2) throw InvalidParameter("overlap criterion needs at least two orbit points");
    std::vector<SpinState> states;
    states.reserve(orbit.size());
    for (const auto& angles : orbit) states.push_back(scs_state(j, angles));
    double worst = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a)
        for (std::size_t b = a + 1; b < states.size(); ++b)
            worst = std::max(worst, std::abs(state_overlap(states[a], states[b])));
    return worst;
}

}  // namespace spintangle
