#include "spintangle/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spintangle/errors.hpp"

namespace spintangle {
namespace {

constexpr double kNormTolerance = 1e-10;
// Above this qubit count binomial weights are evaluated in log space.
constexpr int kDirectBinomialLimit = 60;

}  // namespace

SpinQuantumNumber::SpinQuantumNumber(double j) {
    if (!std::isfinite(j)) throw InvalidParameter("spin j must be finite");
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-12 || rounded < 1.0 || rounded > 1e7) {
        throw InvalidParameter("spin j must be a positive half-integer, got " + std::to_string(j));
    }
    twice_ = static_cast<int>(rounded);
}

SpinQuantumNumber SpinQuantumNumber::from_twice(int twice_j) {
    if (twice_j < 1) throw InvalidParameter("2j must be a positive integer");
    SpinQuantumNumber j;
    j.twice_ = twice_j;
    return j;
}

SpinState::SpinState(SpinQuantumNumber j, ComplexVector amplitudes)
    : j_(j), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != j_.dim()) {
        throw InvalidParameter("state length " + std::to_string(amplitudes_.size()) +
                               " does not match 2j+1 = " + std::to_string(j_.dim()));
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
        throw InvalidState("state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    }
}

SpinState SpinState::normalized(SpinQuantumNumber j, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidParameter("cannot normalize a zero vector");
    amplitudes /= norm;
    return SpinState(j, std::move(amplitudes));
}

SpinState SpinState::dicke(SpinQuantumNumber j, int excitations) {
    if (excitations < 0 || excitations > j.twice()) {
        throw InvalidParameter("Dicke excitation number out of range");
    }
    ComplexVector v = ComplexVector::Zero(j.dim());
    v[excitations] = 1.0;
    return SpinState(j, std::move(v));
}

BlochAngles BlochAngles::make(double theta, double phi) {
    using std::numbers::pi;
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw InvalidParameter("angles must be finite");
    if (theta < -1e-12 || theta > pi + 1e-12) {
        throw InvalidParameter("theta must lie in [0, pi], got " + std::to_string(theta));
    }
    theta = std::clamp(theta, 0.0, pi);
    if (theta == 0.0 || theta == pi) return {theta, 0.0};
    if (phi < -pi || phi >= pi) {
        phi = std::fmod(phi + pi, 2.0 * pi);
        if (phi < 0.0) phi += 2.0 * pi;
        phi -= pi;
        if (phi >= pi) phi -= 2.0 * pi;
    }
    return {theta, phi};
}

BlochAngles BlochAngles::from_direction(const Vec3& v) {
    const double r = v.norm();
    if (!(r > 0.0)) throw InvalidParameter("direction of a zero vector is undefined");
    const double cos_theta = std::clamp(v.z() / r, -1.0, 1.0);
    return make(std::acos(cos_theta), std::atan2(v.y(), v.x()));
}

Vec3 BlochAngles::unit_vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw InvalidParameter("binomial index out of range");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) throw InvalidParameter("binomial index out of range");
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

AngularMomentumOps angular_momentum_ops(SpinQuantumNumber j) {
    const int dim = j.dim();
    const double jv = j.value();
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; m+1 sits one index above m.
    ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        const double m = jv - n;
        jz(n, n) = m;
        if (n > 0) jplus(n - 1, n) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jminus = jplus.adjoint();
    const Complex i{0.0, 1.0};
    return {j, 0.5 * (jplus + jminus), (jplus - jminus) / (2.0 * i), jz};
}

SpinState scs_state(SpinQuantumNumber j, const BlochAngles& angles) {
    const int N = j.twice();
    const double c = std::cos(0.5 * angles.theta);
    const double s = std::sin(0.5 * angles.theta);
    ComplexVector amps(N + 1);
    if (N <= kDirectBinomialLimit) {
        for (int n = 0; n <= N; ++n) {
            const double mag = std::sqrt(binomial(N, n)) * std::pow(c, N - n) * std::pow(s, n);
            amps[n] = std::polar(mag, n * angles.phi);
        }
    } else {
        const double log_c = std::log(c);
        const double log_s = std::log(s);
        for (int n = 0; n <= N; ++n) {
            double mag = 0.0;
            const bool vanishes = (c == 0.0 && n < N) || (s == 0.0 && n > 0);
            if (!vanishes) {
                double log_mag = 0.5 * log_binomial(N, n);
                if (n < N) log_mag += (N - n) * log_c;
                if (n > 0) log_mag += n * log_s;
                mag = std::exp(log_mag);
            }
            amps[n] = std::polar(mag, n * angles.phi);
        }
    }
    return SpinState(j, std::move(amps));
}

Vec3 expectation_J(const SpinState& state) {
    const auto& c = state.amplitudes();
    const double jv = state.j().value();
    double jz = 0.0;
    Complex jplus{0.0, 0.0};
    for (int n = 0; n < state.dim(); ++n) {
        const double m = jv - n;
        jz += m * std::norm(c[n]);
        if (n > 0) jplus += std::conj(c[n - 1]) * c[n] * std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
    }
    return {jplus.real(), jplus.imag(), jz};
}

std::optional<BlochAngles> bloch_from_expectation(const Vec3& v, SpinQuantumNumber j) {
    const double r = v.norm();
    if (!std::isfinite(r) || r > j.value() * (1.0 + 1e-9)) {
        throw InvalidParameter("expectation vector longer than j");
    }
    if (r < 1e-9 * j.value()) return std::nullopt;
    return BlochAngles::from_direction(v);
}

Complex state_overlap(const SpinState& a, const SpinState& b) {
    if (a.j() != b.j()) throw InvalidParameter("overlap of states with different j");
    return a.amplitudes().dot(b.amplitudes());
}

}  // namespace spintangle
