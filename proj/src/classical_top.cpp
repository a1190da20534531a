#include "spintangle/classical_top.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "spintangle/errors.hpp"
#include "spintangle/parallel.hpp"

namespace spintangle {
namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kClosureTolerance = 1e-9;
constexpr double kStabilityTolerance = 1e-8;

void require_unit(const SpherePoint& pt) {
    const double r = pt.vec().norm();
    if (!(std::abs(r - 1.0) <= kUnitTolerance)) {
        throw InvalidParameter("point is not on the unit sphere (|v| = " + std::to_string(r) + ")");
    }
}

Eigen::Matrix3d rotation_about_y(double p) {
    const double c = std::cos(p);
    const double s = std::sin(p);
    Eigen::Matrix3d r;
    r << c, 0.0, s,
         0.0, 1.0, 0.0,
         -s, 0.0, c;
    return r;
}

Vec3 apply_map(const Vec3& v, const ClassicalParams& params) {
    const Vec3 r = rotation_about_y(params.p) * v;
    const double angle = params.kappa * r.z();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {r.x() * c - r.y() * s, r.x() * s + r.y() * c, r.z()};
}

Eigen::Matrix<double, 3, 2> basis_matrix(const SpherePoint& pt) {
    const TangentBasis b = tangent_basis(pt);
    Eigen::Matrix<double, 3, 2> m;
    m.col(0) = b.e1;
    m.col(1) = b.e2;
    return m;
}

}  // namespace

SpherePoint SpherePoint::checked(double x, double y, double z) {
    SpherePoint pt{x, y, z};
    require_unit(pt);
    return pt;
}

SpherePoint SpherePoint::from_angles(const BlochAngles& angles) {
    const Vec3 v = angles.unit_vector();
    return {v.x(), v.y(), v.z()};
}

SpherePoint kick_map(const SpherePoint& pt, const ClassicalParams& params) {
    require_unit(pt);
    const Vec3 v = apply_map(pt.vec(), params);
    return {v.x(), v.y(), v.z()};
}

std::vector<SpherePoint> trajectory(const SpherePoint& pt, const ClassicalParams& params, int n) {
    if (n < 0) throw InvalidParameter("trajectory length must be non-negative");
    std::vector<SpherePoint> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(pt);
    for (int k = 0; k < n; ++k) out.push_back(kick_map(out.back(), params));
    return out;
}

Eigen::Matrix3d map_derivative(const SpherePoint& pt, const ClassicalParams& params) {
    const Eigen::Matrix3d rot = rotation_about_y(params.p);
    const Vec3 r = rot * pt.vec();
    const double angle = params.kappa * r.z();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::Matrix3d torsion;
    torsion << c, -s, -params.kappa * (r.x() * s + r.y() * c),
               s, c, params.kappa * (r.x() * c - r.y() * s),
               0.0, 0.0, 1.0;
    return torsion * rot;
}

TangentBasis tangent_basis(const SpherePoint& pt) {
    const Vec3 x = pt.vec().normalized();
    Vec3 axis = Vec3::Zero();
    int smallest = 0;
    x.cwiseAbs().minCoeff(&smallest);
    axis[smallest] = 1.0;
    const Vec3 e1 = (axis - axis.dot(x) * x).normalized();
    return {e1, x.cross(e1)};
}

Eigen::Matrix2d jacobian(const SpherePoint& pt, const ClassicalParams& params) {
    require_unit(pt);
    const SpherePoint image = kick_map(pt, params);
    return basis_matrix(image).transpose() * map_derivative(pt, params) * basis_matrix(pt);
}

OrbitReport orbit_stability(std::span<const SpherePoint> points, const ClassicalParams& params) {
    if (points.empty()) throw InvalidOrbit("orbit has no points");
    const auto period = static_cast<int>(points.size());
    OrbitReport report;
    report.period = period;
    report.points.assign(points.begin(), points.end());
    report.monodromy = Eigen::Matrix2d::Identity();
    for (int i = 0; i < period; ++i) {
        const SpherePoint image = kick_map(points[i], params);
        const SpherePoint& expected = points[(i + 1) % period];
        const double miss = (image.vec() - expected.vec()).norm();
        if (miss > kClosureTolerance) {
            throw InvalidOrbit("orbit does not close at point " + std::to_string(i) +
                               " (miss " + std::to_string(miss) + ")");
        }
        report.monodromy = jacobian(points[i], params) * report.monodromy;
    }
    const double tr = report.monodromy.trace();
    const double det = report.monodromy.determinant();
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    report.eigenvalue_magnitudes = {std::abs(0.5 * (tr + disc)), std::abs(0.5 * (tr - disc))};
    report.stable = true;
    for (double m : report.eigenvalue_magnitudes) {
        if (m > 1.0 + kStabilityTolerance) report.stable = false;
    }
    return report;
}

double stability_threshold(std::span<const SpherePoint> points, double p, double kappa_lo,
                           double kappa_hi, double tolerance) {
    auto stable_at = [&](double kappa) { return orbit_stability(points, {kappa, p}).stable; };
    const bool lo_stable = stable_at(kappa_lo);
    if (lo_stable == stable_at(kappa_hi)) {
        throw InvalidParameter("stability does not change across the bracket");
    }
    while (kappa_hi - kappa_lo > tolerance) {
        const double mid = 0.5 * (kappa_lo + kappa_hi);
        (stable_at(mid) == lo_stable ? kappa_lo : kappa_hi) = mid;
    }
    return 0.5 * (kappa_lo + kappa_hi);
}

double lyapunov_estimate(const SpherePoint& pt, const ClassicalParams& params, int n) {
    if (n < 100) throw InvalidParameter("Lyapunov estimate needs at least 100 kicks");
    require_unit(pt);
    SpherePoint x = pt;
    Vec3 v = tangent_basis(pt).e1;
    double log_growth = 0.0;
    for (int k = 0; k < n; ++k) {
        v = map_derivative(x, params) * v;
        x = kick_map(x, params);
        const Vec3 normal = x.vec();
        v -= v.dot(normal) * normal;
        const double len = v.norm();
        log_growth += std::log(len);
        v /= len;
    }
    return log_growth / n;
}

const char* to_string(OrbitClass c) {
    return c == OrbitClass::chaotic ? "chaotic" : "regular";
}

GridSpec GridSpec::uniform(int n_theta, int n_phi) {
    using std::numbers::pi;
    if (n_theta < 1 || n_phi < 1) throw InvalidParameter("grid needs at least one point per axis");
    GridSpec grid;
    grid.initial_conditions.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        for (int k = 0; k < n_phi; ++k) {
            grid.initial_conditions.push_back(
                BlochAngles::make(pi * (i + 0.5) / n_theta, -pi + 2.0 * pi * (k + 0.5) / n_phi));
        }
    }
    return grid;
}

std::vector<PortraitRow> phase_portrait(const GridSpec& grid, const ClassicalParams& params,
                                        int n_steps, const PortraitOptions& options) {
    if (grid.initial_conditions.empty()) throw InvalidParameter("grid has no initial conditions");
    if (n_steps < 0) throw InvalidParameter("step count must be non-negative");
    const std::size_t n_ic = grid.initial_conditions.size();
    std::vector<std::vector<PortraitRow>> per_ic(n_ic);
    parallel_for(n_ic, options.workers, [&](std::size_t i) {
        const BlochAngles& ic = grid.initial_conditions[i];
        const SpherePoint start = SpherePoint::from_angles(ic);
        const double lambda = lyapunov_estimate(start, params, options.lyapunov_kicks);
        const OrbitClass cls = lambda > kChaosThreshold ? OrbitClass::chaotic : OrbitClass::regular;
        const auto path = trajectory(start, params, n_steps);
        auto& rows = per_ic[i];
        rows.reserve(path.size());
        for (std::size_t step = 0; step < path.size(); ++step) {
            rows.push_back({static_cast<int>(i), ic, static_cast<int>(step), path[step], lambda, cls});
        }
    });
    std::vector<PortraitRow> rows;
    rows.reserve(n_ic * (static_cast<std::size_t>(n_steps) + 1));
    for (auto& chunk : per_ic) rows.insert(rows.end(), chunk.begin(), chunk.end());
    return rows;
}

SpherePoint fixed_point_fp1() { return {0.0, 1.0, 0.0}; }

std::vector<SpherePoint> period4_orbit() {
    return {{1.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
}

}  // namespace spintangle
