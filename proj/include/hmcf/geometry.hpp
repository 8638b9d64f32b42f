#pragma once

#include <span>
#include <vector>

#include "hmcf/angular_grid.hpp"

namespace hmcf {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Support-function values S and velocities W = S_tau on a grid at time tau.
/// This is the full PDE state.
struct SupportState {
    AngularGrid grid;
    std::vector<double> s;
    std::vector<double> w;
    double tau = 0.0;
};

/// Derived curve data: positions, curvature, length and normal speed
/// sigma_tilde = -S_tau.
struct CurveGeometry {
    std::vector<Vec2> points;
    std::vector<double> curvature;
    double length = 0.0;
    std::vector<double> sigma_tilde;
};

/// 4th-order central finite difference with periodic wraparound,
/// order 1 or 2. Exact on constants.
std::vector<double> differentiate_periodic(const AngularGrid& grid,
                                           std::span<const double> values,
                                           int order);

/// Validity floor for S_thth + S; states at or below it are degenerate.
double convexity_floor(std::span<const double> s);

/// Radius of curvature S_thth + S (no positivity check).
std::vector<double> curvature_radius(const SupportState& state);

/// k_i = 1/(S_thth + S)(theta_i). Throws ConvexityError when the state
/// is not strictly convex.
std::vector<double> curvature_from_support(const SupportState& state);

/// Curve points (S cos - S_th sin, S sin + S_th cos) at each node.
std::vector<Vec2> reconstruct_curve(const SupportState& state);

/// Arclength via the periodic trapezoid rule applied to S.
double curve_length(const SupportState& state);

/// Periodic trapezoid quadrature: dtheta * sum(values).
double periodic_quadrature(const AngularGrid& grid,
                           std::span<const double> values);

/// Support values of a circle about the origin-based support convention.
/// Requires radius > |center| so the origin stays interior.
std::vector<double> support_of_circle(const AngularGrid& grid, double radius,
                                      Vec2 center);

/// Assemble points, curvature, length and sigma_tilde in one pass.
CurveGeometry curve_geometry(const SupportState& state);

/// Periodic total variation sum_i |v_{i+1} - v_i|.
double total_variation(std::span<const double> values);

}  // namespace hmcf
