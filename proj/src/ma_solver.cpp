#include "hmcf/ma_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "hmcf/errors.hpp"

namespace hmcf {

MaCoefficients ma_coefficients(const SupportState& state,
                               const ForcingSchedule& forcing) {
    const int n = state.grid.n_nodes;
    const double c = forcing(state.tau);
    MaCoefficients mc;
    mc.A.resize(n);
    mc.B.resize(n);
    mc.C.assign(n, 0.0);
    mc.D.resize(n);
    mc.E.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
        const double s = state.s[i];
        mc.A[i] = 1.0 - c * s * s;
        mc.B[i] = s;
        mc.D[i] = -c * s;
    }
    return mc;
}

std::vector<double> discriminant(const SupportState& state,
                                 const ForcingSchedule& forcing) {
    const MaCoefficients mc = ma_coefficients(state, forcing);
    const int n = state.grid.n_nodes;
    std::vector<double> delta2(n);
    for (int i = 0; i < n; ++i)
        delta2[i] =
            mc.C[i] * mc.C[i] - 4.0 * mc.B[i] * mc.D[i] + 4.0 * mc.A[i] * mc.E[i];
    return delta2;
}

HyperbolicityCheck check_tau_hyperbolic(const SupportState& state,
                                        const ForcingSchedule& forcing) {
    HyperbolicityCheck hc;
    const std::vector<double> delta2 = discriminant(state, forcing);
    const std::vector<double> roc = curvature_radius(state);
    const double eps = convexity_floor(state.s);
    const int n = state.grid.n_nodes;

    hc.min_discriminant = delta2[0];
    hc.min_abs_radius = std::abs(roc[0]);
    hc.worst_node = 0;
    for (int i = 0; i < n; ++i) {
        hc.min_discriminant = std::min(hc.min_discriminant, delta2[i]);
        const double a = std::abs(roc[i]);
        if (a < hc.min_abs_radius) {
            hc.min_abs_radius = a;
            hc.worst_node = i;
        }
    }
    hc.worst_theta = state.grid.theta[hc.worst_node];
    hc.hyperbolic = hc.min_discriminant > 0.0 && hc.min_abs_radius > eps;
    return hc;
}

std::vector<double> pde_rhs(const SupportState& state,
                            const ForcingSchedule& forcing) {
    const int n = state.grid.n_nodes;
    std::vector<double> roc = curvature_radius(state);
    const double eps = convexity_floor(state.s);
    int worst = 0;
    for (int i = 1; i < n; ++i)
        if (roc[i] < roc[worst]) worst = i;
    if (roc[worst] <= eps)
        throw ConvexityError(worst, state.grid.theta[worst], roc[worst],
                             state.tau);

    const std::vector<double> w_th =
        differentiate_periodic(state.grid, state.w, 1);
    const double c = forcing(state.tau);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = (w_th[i] * w_th[i] - 1.0) / roc[i] + c * state.s[i];
    return out;
}

double cfl_dt(const SupportState& state, double cfl, double dt_max) {
    if (!(cfl > 0.0) || cfl > 1.0)
        throw std::invalid_argument("cfl_dt: cfl must lie in (0, 1], got " +
                                    std::to_string(cfl));
    const std::vector<double> k = curvature_from_support(state);
    const std::vector<double> w_th =
        differentiate_periodic(state.grid, state.w, 1);
    double speed = 0.0;
    for (int i = 0; i < state.grid.n_nodes; ++i)
        speed = std::max(speed, k[i] * (1.0 + std::abs(w_th[i])));
    return std::min(cfl * state.grid.dtheta / speed, dt_max);
}

SupportState step(const SupportState& state, double dt,
                  const ForcingSchedule& forcing) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be positive");
    const int n = state.grid.n_nodes;

    // stages of classical RK4 on (S, W); pde_rhs revalidates convexity
    // at each stage state
    SupportState stage = state;
    const std::vector<double>& s0 = state.s;
    const std::vector<double>& w0 = state.w;

    const std::vector<double> a1 = pde_rhs(state, forcing);
    const std::vector<double>& v1 = w0;

    for (int i = 0; i < n; ++i) {
        stage.s[i] = s0[i] + 0.5 * dt * v1[i];
        stage.w[i] = w0[i] + 0.5 * dt * a1[i];
    }
    stage.tau = state.tau + 0.5 * dt;
    const std::vector<double> a2 = pde_rhs(stage, forcing);
    const std::vector<double> v2 = stage.w;

    for (int i = 0; i < n; ++i) {
        stage.s[i] = s0[i] + 0.5 * dt * v2[i];
        stage.w[i] = w0[i] + 0.5 * dt * a2[i];
    }
    const std::vector<double> a3 = pde_rhs(stage, forcing);
    const std::vector<double> v3 = stage.w;

    for (int i = 0; i < n; ++i) {
        stage.s[i] = s0[i] + dt * v3[i];
        stage.w[i] = w0[i] + dt * a3[i];
    }
    stage.tau = state.tau + dt;
    const std::vector<double> a4 = pde_rhs(stage, forcing);
    const std::vector<double> v4 = stage.w;

    SupportState next = state;
    next.tau = state.tau + dt;
    for (int i = 0; i < n; ++i) {
        next.s[i] =
            s0[i] + dt / 6.0 * (v1[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
        next.w[i] =
            w0[i] + dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
    }
    return next;
}

const char* to_string(StopTag tag) {
    switch (tag) {
        case StopTag::HorizonReached: return "HorizonReached";
        case StopTag::Collapsed: return "Collapsed";
        case StopTag::CurvatureBlowup: return "CurvatureBlowup";
        case StopTag::ShockSuspected: return "ShockSuspected";
        case StopTag::HyperbolicityLost: return "HyperbolicityLost";
    }
    return "Unknown";
}

StopTag stop_tag_from_string(const std::string& name) {
    if (name == "HorizonReached") return StopTag::HorizonReached;
    if (name == "Collapsed") return StopTag::Collapsed;
    if (name == "CurvatureBlowup") return StopTag::CurvatureBlowup;
    if (name == "ShockSuspected") return StopTag::ShockSuspected;
    if (name == "HyperbolicityLost") return StopTag::HyperbolicityLost;
    throw std::invalid_argument("unknown StopTag name: " + name);
}

namespace {

struct StepDiagnostics {
    double min_s = 0.0;
    double max_k = 0.0;
    double min_k = 0.0;
    double tv_k = 0.0;
    double length = 0.0;
    bool finite = true;
};

StepDiagnostics diagnose(const SupportState& state) {
    StepDiagnostics d;
    const std::vector<double> k = curvature_from_support(state);
    d.min_s = state.s[0];
    d.min_k = k[0];
    d.max_k = k[0];
    for (int i = 0; i < state.grid.n_nodes; ++i) {
        d.min_s = std::min(d.min_s, state.s[i]);
        d.min_k = std::min(d.min_k, k[i]);
        d.max_k = std::max(d.max_k, k[i]);
        if (!std::isfinite(state.s[i]) || !std::isfinite(state.w[i]) ||
            !std::isfinite(k[i]))
            d.finite = false;
    }
    d.tv_k = total_variation(k);
    d.length = curve_length(state);
    return d;
}

}  // namespace

FlowTrajectory evolve(const AngularGrid& grid, std::span<const double> h,
                      std::span<const double> f, const ForcingSchedule& forcing,
                      const EvolveOptions& opts) {
    const int n = grid.n_nodes;
    if (static_cast<int>(h.size()) != n || static_cast<int>(f.size()) != n)
        throw std::invalid_argument(
            "evolve: h and f must match the grid length");
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(h[i]) || !std::isfinite(f[i]))
            throw std::invalid_argument("evolve: non-finite initial data");
    if (!(opts.horizon > 0.0))
        throw std::invalid_argument("evolve: horizon must be positive");
    if (!(opts.cfl > 0.0) || opts.cfl > 1.0)
        throw std::invalid_argument("evolve: cfl must lie in (0, 1]");
    if (!(opts.dt_max > 0.0))
        throw std::invalid_argument("evolve: dt_max must be positive");
    if (opts.stride < 1)
        throw std::invalid_argument("evolve: stride must be >= 1");

    FlowTrajectory traj;
    traj.grid = grid;
    traj.forcing = forcing;

    SupportState state;
    state.grid = grid;
    state.s.assign(h.begin(), h.end());
    state.w.resize(n);
    for (int i = 0; i < n; ++i) state.w[i] = -f[i];
    state.tau = 0.0;

    double h_max = h[0];
    for (int i = 0; i < n; ++i) h_max = std::max(h_max, h[i]);

    // Initial data that already violates strict convexity is classified as
    // curvature blow-up at tau = 0 rather than rejected, so pathological
    // inputs still come back with a stop reason.
    const std::vector<double> roc0 = curvature_radius(state);
    double min_roc0 = roc0[0];
    for (double v : roc0) min_roc0 = std::min(min_roc0, v);
    if (min_roc0 <= convexity_floor(state.s)) {
        traj.stop = {StopTag::CurvatureBlowup, 0.0,
                     *std::min_element(state.s.begin(), state.s.end()), 0.0,
                     0.0};
        return traj;
    }

    const double eps_collapse =
        opts.eps_collapse > 0.0 ? opts.eps_collapse : 1e-4 * h_max;
    const double k_max = opts.k_max > 0.0 ? opts.k_max : 1e3 / min_roc0;

    StepDiagnostics d0 = diagnose(state);
    const double tv0 = d0.tv_k;
    traj.snapshots.push_back(state);
    traj.diagnostics.push_back({d0.length, d0.min_k, d0.max_k, d0.min_s});

    // Curvature passing k_max is provisional: a curve shrinking to a point
    // blows up its curvature as well, and the collapse classification wins
    // if min S subsequently crosses eps_collapse.
    std::optional<double> pending_blowup;
    std::optional<StopReason> stop;
    long accepted = 0;

    const auto record = [&](const SupportState& st, const StepDiagnostics& d) {
        if (!traj.snapshots.empty() && traj.snapshots.back().tau >= st.tau)
            return;
        traj.snapshots.push_back(st);
        traj.diagnostics.push_back({d.length, d.min_k, d.max_k, d.min_s});
    };

    StepDiagnostics d = d0;
    while (!stop) {
        if (state.tau >= opts.horizon * (1.0 - 1e-14)) {
            stop = StopReason{StopTag::HorizonReached, state.tau, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }

        double dt;
        bool on_output_boundary = false;
        double boundary = 0.0;
        try {
            dt = cfl_dt(state, opts.cfl, opts.dt_max);
        } catch (const ConvexityError& e) {
            stop = StopReason{StopTag::CurvatureBlowup, e.tau(), d.min_s,
                              d.max_k, d.tv_k};
            break;
        }
        dt = std::min(dt, opts.horizon - state.tau);
        if (dt <= 1e-15 * std::max(1.0, state.tau)) {
            stop = StopReason{StopTag::HorizonReached, state.tau, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }
        if (opts.out_dt > 0.0) {
            const double next_out =
                (std::floor(state.tau / opts.out_dt + 1e-9) + 1.0) * opts.out_dt;
            if (next_out - state.tau <= dt * (1.0 + 1e-12)) {
                dt = next_out - state.tau;
                on_output_boundary = true;
                boundary = next_out;
            }
        }

        try {
            state = step(state, dt, forcing);
        } catch (const ConvexityError& e) {
            const double t_fail =
                pending_blowup ? *pending_blowup : e.tau();
            stop = StopReason{StopTag::CurvatureBlowup, t_fail, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }
        if (on_output_boundary) state.tau = boundary;  // exact shared times
        ++accepted;

        try {
            d = diagnose(state);
        } catch (const ConvexityError& e) {
            const double t_fail = pending_blowup ? *pending_blowup : e.tau();
            stop = StopReason{StopTag::CurvatureBlowup, t_fail, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }

        if (!d.finite) {
            stop = StopReason{StopTag::ShockSuspected, state.tau, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }
        if (d.min_s < eps_collapse) {
            record(state, d);
            stop = StopReason{StopTag::Collapsed, state.tau, d.min_s, d.max_k,
                              d.tv_k};
            break;
        }
        // absolute guard keeps roundoff-level anisotropy from reading as a
        // shock on near-circular data
        if (d.tv_k > opts.tv_factor * tv0 && d.tv_k > 1e-3 * d.max_k) {
            record(state, d);
            stop = StopReason{StopTag::ShockSuspected, state.tau, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }
        if (!pending_blowup && d.max_k > k_max) pending_blowup = state.tau;

        double min_delta2 = 4.0;
        for (double v : discriminant(state, forcing))
            min_delta2 = std::min(min_delta2, v);
        if (min_delta2 <= 0.0) {
            record(state, d);
            stop = StopReason{StopTag::HyperbolicityLost, state.tau, d.min_s,
                              d.max_k, d.tv_k};
            break;
        }

        if (opts.out_dt > 0.0 ? on_output_boundary
                              : (accepted % opts.stride == 0))
            record(state, d);
    }

    if (pending_blowup && stop->tag != StopTag::Collapsed) {
        stop->tag = StopTag::CurvatureBlowup;
        stop->tau_stop = *pending_blowup;
    }
    record(state, d);
    traj.stop = *stop;
    return traj;
}

}  // namespace hmcf
