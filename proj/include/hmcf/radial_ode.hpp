#pragma once

#include <optional>
#include <vector>

#include "hmcf/forcing.hpp"

namespace hmcf {

/// Reduced radial problem r_tt = -c0/r + cbar(t) r, r(0)=r0>0, r_t(0)=r1.
struct RadialProblem {
    double c0 = 1.0;
    ForcingSchedule cbar;
    double r0 = 1.0;
    double r1 = 0.0;
};

struct RadialSample {
    double t = 0.0;
    double r = 0.0;
    double rt = 0.0;
};

struct RadialOptions {
    double dt_max = 5e-3;
    double horizon = 100.0;     // safety cap; collapse normally fires first
    double eps_r_rel = 1e-6;    // stop radius as a fraction of r0
};

/// Sampled radial solution with dense cubic-Hermite queries, collapse time
/// (stop time plus the quadrature tail through the singularity) and the
/// peak radius attained.
struct RadialTrajectory {
    RadialProblem problem;
    std::vector<RadialSample> samples;
    std::optional<double> collapse_time;
    double peak_radius = 0.0;
    std::optional<double> peak_time;  // set when r_t changes sign (r1 > 0)

    double end_time() const { return samples.empty() ? 0.0 : samples.back().t; }
    double value_at(double t) const;     // r(t)
    double velocity_at(double t) const;  // r_t(t)
};

/// Right side -c0/r + cbar(t) r. Throws std::domain_error for r <= 0.
double radial_rhs(double r, double t, const RadialProblem& problem);

/// RK4 with dt = min(dt_max, 0.05 r / (|r_t| + sqrt(c0))), stopping at
/// r < eps_r and appending the tail-time quadrature.
RadialTrajectory integrate_radial(const RadialProblem& problem,
                                  const RadialOptions& opts = {});

/// sqrt(pi/(2 c0)) r0; stated only for r1 = 0 and cbar <= 0.
double collapse_upper_bound(const RadialProblem& problem);

struct EnvelopeReport {
    bool passed = true;
    int first_violation = -1;     // sample index, -1 if none
    double worst_violation = 0.0;  // largest slack overshoot
};

/// Two-sided energy envelope
///   c0 ln(r0/r) <= r_t^2/2 <= c0 ln(r0/r) + (c_plus/2)(r0^2 - r^2)
/// checked at every stored sample. Stated for r1 = 0, cbar <= 0.
EnvelopeReport energy_envelope_check(const RadialTrajectory& traj,
                                     const RadialProblem& problem);

struct CollapseBounds {
    double lower = 0.0;      // sqrt(pi/(2c0)) r0 - A r0 / sqrt(2c0)
    double upper = 0.0;      // sqrt(pi/(2c0)) r0
    double a_integral = 0.0; // the solution-dependent A, by trapezoid
    bool contains = false;   // lower <= t0 <= upper within slack
};

/// Two-sided collapse-time bound with the solution-dependent correction
/// integral A computed a posteriori along the trajectory. Requires r1 = 0,
/// cbar <= 0 and a collapsed trajectory.
CollapseBounds check_collapse_bounds(const RadialTrajectory& traj,
                                     const RadialProblem& problem);

}  // namespace hmcf
