#include "hmcf/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hmcf/errors.hpp"

namespace hmcf {

namespace {

void validate(const RadialProblem& p) {
    if (!(p.c0 > 0.0))
        throw std::invalid_argument("RadialProblem: c0 must be positive");
    if (!(p.r0 > 0.0))
        throw std::invalid_argument("RadialProblem: r0 must be positive");
    if (!std::isfinite(p.r1))
        throw std::invalid_argument("RadialProblem: r1 must be finite");
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double xi = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// Time left from radius r_stop to zero along the energy envelope
//   r_t = -sqrt(2 c0 ln(r0/r) + r1^2),
// exact for cbar == 0 and an upper-bound correction otherwise.
double tail_time(const RadialProblem& p, double r_stop) {
    if (r_stop <= 0.0) return 0.0;
    std::vector<double> x, w;
    gauss_legendre(64, x, w);
    double sum = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double r = 0.5 * r_stop * (x[i] + 1.0);
        const double speed2 = 2.0 * p.c0 * std::log(p.r0 / r) + p.r1 * p.r1;
        sum += w[i] / std::sqrt(speed2);
    }
    return 0.5 * r_stop * sum;
}

double hermite(double ya, double da, double yb, double db, double h, double u) {
    const double u2 = u * u, u3 = u2 * u;
    return ya * (2.0 * u3 - 3.0 * u2 + 1.0) + h * da * (u3 - 2.0 * u2 + u) +
           yb * (-2.0 * u3 + 3.0 * u2) + h * db * (u3 - u2);
}

}  // namespace

double radial_rhs(double r, double t, const RadialProblem& problem) {
    if (!(r > 0.0))
        throw std::domain_error("radial_rhs: r must be positive, got " +
                                std::to_string(r));
    return -problem.c0 / r + problem.cbar(t) * r;
}

RadialTrajectory integrate_radial(const RadialProblem& problem,
                                  const RadialOptions& opts) {
    validate(problem);
    if (!(opts.dt_max > 0.0))
        throw std::invalid_argument("integrate_radial: dt_max must be positive");

    const double eps_r = opts.eps_r_rel * problem.r0;
    const double sqrt_c0 = std::sqrt(problem.c0);

    RadialTrajectory traj;
    traj.problem = problem;
    traj.peak_radius = problem.r0;

    double t = 0.0, r = problem.r0, v = problem.r1;
    traj.samples.push_back({t, r, v});

    const auto accel = [&](double rr, double tt) {
        if (!(rr > 0.0))
            throw IntegrationError(
                "integrate_radial: stage radius became non-positive");
        return -problem.c0 / rr + problem.cbar(tt) * rr;
    };

    while (t < opts.horizon && r >= eps_r) {
        double dt = std::min(opts.dt_max, 0.05 * r / (std::abs(v) + sqrt_c0));
        dt = std::min(dt, opts.horizon - t);

        // classical RK4 on (r, r_t)
        const double k1r = v, k1v = accel(r, t);
        const double k2r = v + 0.5 * dt * k1v,
                     k2v = accel(r + 0.5 * dt * k1r, t + 0.5 * dt);
        const double k3r = v + 0.5 * dt * k2v,
                     k3v = accel(r + 0.5 * dt * k2r, t + 0.5 * dt);
        const double k4r = v + dt * k3v, k4v = accel(r + dt * k3r, t + dt);
        r += dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t += dt;

        if (!std::isfinite(r) || !std::isfinite(v))
            throw IntegrationError("integrate_radial: non-finite state at t=" +
                                   std::to_string(t));
        traj.samples.push_back({t, r, v});
        traj.peak_radius = std::max(traj.peak_radius, r);
    }

    if (r < eps_r) traj.collapse_time = t + tail_time(problem, r);

    // locate the r_t sign change for expanding initial data
    if (problem.r1 > 0.0) {
        for (size_t j = 0; j + 1 < traj.samples.size(); ++j) {
            const RadialSample& a = traj.samples[j];
            const RadialSample& b = traj.samples[j + 1];
            if (!(a.rt > 0.0 && b.rt <= 0.0)) continue;
            const double h = b.t - a.t;
            const double aa = radial_rhs(a.r, a.t, problem);
            const double ab = radial_rhs(b.r, b.t, problem);
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (hermite(a.rt, aa, b.rt, ab, h, mid) > 0.0 ? lo : hi) = mid;
            }
            const double u = 0.5 * (lo + hi);
            traj.peak_time = a.t + u * h;
            traj.peak_radius =
                std::max(traj.peak_radius, hermite(a.r, a.rt, b.r, b.rt, h, u));
            break;
        }
    }
    return traj;
}

double RadialTrajectory::value_at(double t) const {
    if (samples.empty()) throw std::domain_error("RadialTrajectory: empty");
    if (t < samples.front().t - 1e-12 || t > samples.back().t + 1e-12)
        throw std::domain_error("RadialTrajectory: t=" + std::to_string(t) +
                                " outside sampled range");
    t = std::clamp(t, samples.front().t, samples.back().t);
    const auto it = std::lower_bound(
        samples.begin(), samples.end(), t,
        [](const RadialSample& s, double tt) { return s.t < tt; });
    const size_t j = std::min<size_t>(
        std::max<size_t>(1, static_cast<size_t>(it - samples.begin())),
        samples.size() - 1);
    const RadialSample& a = samples[j - 1];
    const RadialSample& b = samples[j];
    const double h = b.t - a.t;
    return hermite(a.r, a.rt, b.r, b.rt, h, (t - a.t) / h);
}

double RadialTrajectory::velocity_at(double t) const {
    if (samples.empty()) throw std::domain_error("RadialTrajectory: empty");
    if (t < samples.front().t - 1e-12 || t > samples.back().t + 1e-12)
        throw std::domain_error("RadialTrajectory: t=" + std::to_string(t) +
                                " outside sampled range");
    t = std::clamp(t, samples.front().t, samples.back().t);
    const auto it = std::lower_bound(
        samples.begin(), samples.end(), t,
        [](const RadialSample& s, double tt) { return s.t < tt; });
    const size_t j = std::min<size_t>(
        std::max<size_t>(1, static_cast<size_t>(it - samples.begin())),
        samples.size() - 1);
    const RadialSample& a = samples[j - 1];
    const RadialSample& b = samples[j];
    const double h = b.t - a.t;
    const double aa = radial_rhs(a.r, a.t, problem);
    const double ab = radial_rhs(b.r, b.t, problem);
    return hermite(a.rt, aa, b.rt, ab, h, (t - a.t) / h);
}

double collapse_upper_bound(const RadialProblem& problem) {
    validate(problem);
    if (problem.r1 != 0.0)
        throw NotApplicableError(
            "collapse_upper_bound: stated only for r1 = 0, got r1 = " +
            std::to_string(problem.r1));
    if (!problem.cbar.non_positive())
        throw NotApplicableError(
            "collapse_upper_bound: stated only for cbar <= 0");
    return std::sqrt(3.14159265358979323846 / (2.0 * problem.c0)) * problem.r0;
}

CollapseBounds check_collapse_bounds(const RadialTrajectory& traj,
                                     const RadialProblem& problem) {
    if (problem.r1 != 0.0)
        throw NotApplicableError("check_collapse_bounds: stated only for r1 = 0");
    if (!problem.cbar.non_positive())
        throw NotApplicableError("check_collapse_bounds: stated only for cbar <= 0");
    if (!traj.collapse_time)
        throw NotApplicableError("check_collapse_bounds: trajectory did not collapse");

    const double r0 = problem.r0;
    const auto integrand = [&](double r) {
        if (r >= r0 * (1.0 - 1e-12)) return std::sqrt(2.0);  // r -> r0 limit
        return std::sqrt((r0 * r0 - r * r) / std::log(r0 / r)) / r0;
    };
    double integral = 0.0;
    for (size_t j = 1; j < traj.samples.size(); ++j) {
        const RadialSample& a = traj.samples[j - 1];
        const RadialSample& b = traj.samples[j];
        integral += 0.5 * (integrand(a.r) + integrand(b.r)) * (b.t - a.t);
    }

    CollapseBounds bounds;
    bounds.a_integral = std::sqrt(problem.cbar.bound()) * integral;
    bounds.upper = std::sqrt(3.14159265358979323846 / (2.0 * problem.c0)) * r0;
    bounds.lower =
        bounds.upper - bounds.a_integral * r0 / std::sqrt(2.0 * problem.c0);
    const double slack = 1e-9 + 1e-6 * bounds.upper;
    bounds.contains = bounds.lower - slack <= *traj.collapse_time &&
                      *traj.collapse_time <= bounds.upper + slack;
    return bounds;
}

EnvelopeReport energy_envelope_check(const RadialTrajectory& traj,
                                     const RadialProblem& problem) {
    EnvelopeReport report;
    report.worst_violation = -std::numeric_limits<double>::infinity();
    const double c_plus = problem.cbar.bound();
    for (size_t j = 0; j < traj.samples.size(); ++j) {
        const RadialSample& s = traj.samples[j];
        if (!(s.r > 0.0)) break;
        const double lower = problem.c0 * std::log(problem.r0 / s.r);
        const double upper =
            lower + 0.5 * c_plus * (problem.r0 * problem.r0 - s.r * s.r);
        const double energy = 0.5 * s.rt * s.rt;
        const double slack_lo = 1e-8 + 1e-6 * std::abs(lower);
        const double slack_up = 1e-8 + 1e-6 * std::abs(upper);
        const double overshoot =
            std::max((lower - energy) - slack_lo, (energy - upper) - slack_up);
        report.worst_violation = std::max(report.worst_violation, overshoot);
        if (overshoot > 0.0 && report.first_violation < 0)
            report.first_violation = static_cast<int>(j);
    }
    report.passed = report.first_violation < 0;
    return report;
}

}  // namespace hmcf
