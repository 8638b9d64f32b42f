#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hmcf/radial_ode.hpp"

namespace hmcf {

/// Radially symmetric solution X(x,t) = r(t) * (unit n-sphere embedding)
/// of the hypersurface flow. The radial factor obeys r_tt = -n/r + c1(t) r.
struct SphereFamily {
    int dim_n = 1;
    RadialProblem problem;     // c0 = dim_n, cbar = c1
    RadialTrajectory radial;
};

/// On a round sphere every tensor is a scalar multiple of the unit round
/// metric ghat; only the coefficients are stored.
struct SphereTensors {
    int n = 1;
    double r = 0.0, r_t = 0.0, r_tt = 0.0;
    double g = 0.0;          // g_ij = g * ghat_ij = r^2
    double h = 0.0;          // h_ij = h * ghat_ij = r
    double H = 0.0;          // mean curvature n/r
    double normA2 = 0.0;     // |A|^2 = n/r^2
    double mixed = 0.0;      // (X_ti, X_tj) = mixed * ghat_ij = r_t^2
    double nu = 0.0;         // (n_vec, X_ti), zero on concentric spheres
    double dGamma_dt = 0.0;  // Christoffels are scale invariant
};

SphereFamily sphere_flow(int n, double r0, double r1,
                         const ForcingSchedule& c1,
                         const RadialOptions& opts = {});

SphereTensors sphere_tensors(const SphereFamily& family, double t);

/// Axial component c1 * rho of the flow equation under a cylinder ansatz;
/// a nonzero value certifies that no cylinder solution exists.
double cylinder_residual(double rho, double c1_value);

struct TermLog {
    std::string name;
    double value = 0.0;
};

struct IdentityResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    std::vector<TermLog> terms;
};

/// Metric wave identity: d^2 g_ij/dt^2 against
/// -2 H h_ij + 2 c1 g_ij + 2 (X_ti, X_tj), in ghat coefficients.
IdentityResidual verify_metric_evolution(const SphereFamily& family, double t);

/// Same identity with the left side formed by a centered second difference
/// of r(t)^2 at spacing delta; residual decays at second order in delta.
double verify_metric_evolution_fd(const SphereFamily& family, double t,
                                  double delta);

/// Normal-vector wave identity; every term vanishes on concentric spheres,
/// and the returned residual is the largest term magnitude.
IdentityResidual verify_normal_evolution(const SphereFamily& family, double t);

/// Second-fundamental-form wave identity, with the Laplacian of h_ij
/// assembled from the Simons-type identity (zero on spheres).
IdentityResidual verify_second_form_evolution(const SphereFamily& family,
                                              double t);

double verify_second_form_evolution_fd(const SphereFamily& family, double t,
                                       double delta);

/// Scalar wave identities for H and |A|^2, evaluated term by term so a
/// discrepancy is attributable to a single contraction.
std::pair<IdentityResidual, IdentityResidual> verify_scalar_evolutions(
    const SphereFamily& family, double t);

/// Difference of the H (resp. |A|^2) right side between the forced and the
/// unforced identity at fixed tensors: exactly -c1 H (resp. -2 c1 |A|^2).
std::pair<double, double> scalar_forcing_difference(const SphereFamily& family,
                                                    double t);

}  // namespace hmcf
