#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spintangle/spin_algebra.hpp"

namespace spintangle {

// Point on the unit sphere, (J_x/j, J_y/j, J_z/j) in the classical limit.
struct SpherePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    // Throws InvalidParameter unless |(x,y,z)| = 1 within 1e-9.
    static SpherePoint checked(double x, double y, double z);
    static SpherePoint from_angles(const BlochAngles& angles);

    Vec3 vec() const { return {x, y, z}; }
    BlochAngles angles() const { return BlochAngles::from_direction(vec()); }
};

struct ClassicalParams {
    double kappa = 3.0;
    double p = 1.5707963267948966;
};

// One kick: rotation by p about y, then torsion about z by kappa * Z'.
SpherePoint kick_map(const SpherePoint& pt, const ClassicalParams& params);

// [pt, F(pt), ..., F^n(pt)]
std::vector<SpherePoint> trajectory(const SpherePoint& pt, const ClassicalParams& params, int n);

// Derivative of the map extended to R^3 (the extension preserves |v|).
Eigen::Matrix3d map_derivative(const SpherePoint& pt, const ClassicalParams& params);

// Right-handed orthonormal pair (e1, e2) with e1 x e2 = pt.
struct TangentBasis {
    Vec3 e1;
    Vec3 e2;
};
TangentBasis tangent_basis(const SpherePoint& pt);

// Tangent map from the plane at pt to the plane at F(pt), in the bases
// returned by tangent_basis.
Eigen::Matrix2d jacobian(const SpherePoint& pt, const ClassicalParams& params);

struct OrbitReport {
    int period = 0;
    std::vector<SpherePoint> points;
    Eigen::Matrix2d monodromy;
    std::vector<double> eigenvalue_magnitudes;
    bool stable = false;
};

// Throws InvalidOrbit when F(points[i]) misses points[i+1 mod period] by more than 1e-9.
OrbitReport orbit_stability(std::span<const SpherePoint> points, const ClassicalParams& params);

// Bisects the kick strength in [kappa_lo, kappa_hi] at which the orbit's
// stability flips. The endpoints must have opposite stability.
double stability_threshold(std::span<const SpherePoint> points, double p, double kappa_lo,
                           double kappa_hi, double tolerance = 1e-6);

// Largest Lyapunov exponent per kick (natural log), from renormalized
// tangent-vector growth over n kicks. Requires n >= 100.
double lyapunov_estimate(const SpherePoint& pt, const ClassicalParams& params, int n);

// Exponents above this over >= 5000 kicks are classified chaotic.
inline constexpr double kChaosThreshold = 0.01;

enum class OrbitClass { regular, chaotic };
const char* to_string(OrbitClass c);

struct GridSpec {
    std::vector<BlochAngles> initial_conditions;

    // Cell-centred grid over theta in (0, pi) and phi in (-pi, pi).
    static GridSpec uniform(int n_theta, int n_phi);
};

struct PortraitOptions {
    int lyapunov_kicks = 5000;
    unsigned workers = 1;
};

struct PortraitRow {
    int ic_index = 0;
    BlochAngles initial;
    int step = 0;
    SpherePoint point;
    double lyapunov = 0.0;
    OrbitClass orbit_class = OrbitClass::regular;
};

// One row per (initial condition, step), sorted by ic_index then step.
std::vector<PortraitRow> phase_portrait(const GridSpec& grid, const ClassicalParams& params,
                                        int n_steps, const PortraitOptions& options = {});

// Named orbits of the map at p = pi/2.
SpherePoint fixed_point_fp1();
std::vector<SpherePoint> period4_orbit();

}  // namespace spintangle
