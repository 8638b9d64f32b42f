#include "hmcf/sphere_flow.hpp"

#include <cmath>
#include <stdexcept>

namespace hmcf {

SphereFamily sphere_flow(int n, double r0, double r1,
                         const ForcingSchedule& c1, const RadialOptions& opts) {
    if (n < 1)
        throw std::invalid_argument("sphere_flow: dimension must be >= 1");
    if (!(r0 > 0.0))
        throw std::invalid_argument("sphere_flow: r0 must be positive");
    if (!c1.non_positive())
        throw std::invalid_argument("sphere_flow: c1 must be non-positive");
    SphereFamily family;
    family.dim_n = n;
    family.problem = RadialProblem{static_cast<double>(n), c1, r0, r1};
    family.radial = integrate_radial(family.problem, opts);
    return family;
}

SphereTensors sphere_tensors(const SphereFamily& family, double t) {
    SphereTensors st;
    st.n = family.dim_n;
    st.r = family.radial.value_at(t);
    st.r_t = family.radial.velocity_at(t);
    st.r_tt = radial_rhs(st.r, t, family.problem);
    st.g = st.r * st.r;
    st.h = st.r;
    st.H = family.dim_n / st.r;
    st.normA2 = family.dim_n / (st.r * st.r);
    st.mixed = st.r_t * st.r_t;
    st.nu = 0.0;
    st.dGamma_dt = 0.0;
    return st;
}

double cylinder_residual(double rho, double c1_value) {
    return c1_value * rho;
}

IdentityResidual verify_metric_evolution(const SphereFamily& family, double t) {
    const SphereTensors st = sphere_tensors(family, t);
    const double c1 = family.problem.cbar(t);
    IdentityResidual res;
    res.lhs = 2.0 * (st.r * st.r_tt + st.r_t * st.r_t);
    res.terms = {
        {"-2Hh", -2.0 * st.H * st.h},
        {"2c1.g", 2.0 * c1 * st.g},
        {"2(Xt_i,Xt_j)", 2.0 * st.mixed},
    };
    res.rhs = 0.0;
    for (const TermLog& term : res.terms) res.rhs += term.value;
    res.residual = std::abs(res.lhs - res.rhs);
    return res;
}

double verify_metric_evolution_fd(const SphereFamily& family, double t,
                                  double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("verify_metric_evolution_fd: delta > 0");
    const double g_minus = std::pow(family.radial.value_at(t - delta), 2);
    const double g_0 = std::pow(family.radial.value_at(t), 2);
    const double g_plus = std::pow(family.radial.value_at(t + delta), 2);
    const double lhs_fd = (g_plus - 2.0 * g_0 + g_minus) / (delta * delta);
    const IdentityResidual analytic = verify_metric_evolution(family, t);
    return std::abs(lhs_fd - analytic.rhs);
}

IdentityResidual verify_normal_evolution(const SphereFamily& family, double t) {
    const SphereTensors st = sphere_tensors(family, t);
    // H = n/r is spatially constant and the mixed time-space derivatives of
    // the embedding are purely tangential, so nu = (n_vec, Xt_i) = 0 and both
    // contributions vanish; the normals of concentric spheres are static.
    const double grad_H = 0.0;
    // scale of the tangential bracket 2g^{kl}(X_j,Xt_l)X_k + g^{kl}(X_l,Xt_j)X_k - Xt_j
    const double bracket = 3.0 * st.r * st.r_t / st.g - st.r_t;
    IdentityResidual res;
    res.lhs = 0.0;  // d^2 n_vec / dt^2
    res.terms = {
        {"-g^{ij} grad_i H X_j", -grad_H / st.g},
        {"nu-weighted tangential bracket", st.nu * bracket},
    };
    res.rhs = 0.0;
    double worst = 0.0;
    for (const TermLog& term : res.terms) {
        res.rhs += term.value;
        worst = std::max(worst, std::abs(term.value));
    }
    res.residual = worst;
    return res;
}

IdentityResidual verify_second_form_evolution(const SphereFamily& family,
                                              double t) {
    const SphereTensors st = sphere_tensors(family, t);
    const double c1 = family.problem.cbar(t);
    // Laplacian of h_ij assembled from the Simons-type identity:
    // hess_H + H (h g^-1 h) - |A|^2 h, which vanishes on round spheres.
    const double hess_H = 0.0;
    const double laplacian_h =
        hess_H + st.H * st.h * st.h / st.g - st.normA2 * st.h;
    IdentityResidual res;
    res.lhs = st.r_tt;
    res.terms = {
        {"laplacian_h", laplacian_h},
        {"-2H h g^-1 h", -2.0 * st.H * st.h * st.h / st.g},
        {"|A|^2 h", st.normA2 * st.h},
        {"g^{kl} h nu_k nu_l", st.h * st.nu * st.nu / st.g},
        {"-2 dGamma/dt nu", -2.0 * st.dGamma_dt * st.nu},
        {"c1.h", c1 * st.h},
    };
    res.rhs = 0.0;
    for (const TermLog& term : res.terms) res.rhs += term.value;
    res.residual = std::abs(res.lhs - res.rhs);
    return res;
}

double verify_second_form_evolution_fd(const SphereFamily& family, double t,
                                       double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("verify_second_form_evolution_fd: delta > 0");
    const double h_minus = family.radial.value_at(t - delta);
    const double h_0 = family.radial.value_at(t);
    const double h_plus = family.radial.value_at(t + delta);
    const double lhs_fd = (h_plus - 2.0 * h_0 + h_minus) / (delta * delta);
    const IdentityResidual analytic = verify_second_form_evolution(family, t);
    return std::abs(lhs_fd - analytic.rhs);
}

namespace {

// Right side of the scalar mean-curvature wave identity in ghat-invariant
// form. The time-space cross term carries an h_ij contraction (the printed
// source drops it); every other contraction follows the expansion of
// d^2 H/dt^2 = d^2(g^{ij} h_ij)/dt^2 through the metric and second-form
// wave identities.
std::vector<TermLog> mean_curvature_rhs_terms(const SphereTensors& st,
                                              double c1) {
    const int n = st.n;
    const double g = st.g, h = st.h;
    const double gdot = 2.0 * st.r * st.r_t;  // d(r^2)/dt
    const double hdot = st.r_t;               // d(r)/dt
    return {
        {"laplacian_H", 0.0},
        {"H|A|^2", st.H * st.normA2},
        {"-2 g^{ik}g^{jl} h_ij (Xt_k,Xt_l)", -2.0 * n * h * st.mixed / (g * g)},
        {"H g^{kl} nu_k nu_l", st.H * st.nu * st.nu / g},
        {"-2 g^{ij} dGamma/dt nu", -2.0 * st.dGamma_dt * st.nu},
        {"2 (g^-1 gdot g^-1 gdot g^-1)(h)", 2.0 * n * h * gdot * gdot / (g * g * g)},
        {"-2 g^{ik}g^{jl} gdot_kl hdot_ij", -2.0 * n * gdot * hdot / (g * g)},
        {"-c1 H", -c1 * st.H},
    };
}

// Right side of the |A|^2 wave identity. The quadratic mixed-derivative
// term enters with the full Euclidean product (Xt_m, Xt_n), not its normal
// component; that is what the expansion of d^2 g^{ij}/dt^2 produces.
std::vector<TermLog> norm_a2_rhs_terms(const SphereTensors& st, double c1) {
    const int n = st.n;
    const double g = st.g, h = st.h;
    const double gdot = 2.0 * st.r * st.r_t;
    const double hdot = st.r_t;
    return {
        {"laplacian_|A|^2", 0.0},
        {"-2|grad A|^2", 0.0},
        {"2|A|^4", 2.0 * st.normA2 * st.normA2},
        {"2|A|^2 g^{pq} nu_p nu_q", 2.0 * st.normA2 * st.nu * st.nu / g},
        {"2 g^{ij}g^{kl} hdot_ik hdot_jl", 2.0 * n * hdot * hdot / (g * g)},
        {"-8 g g g h gdot hdot", -8.0 * n * h * gdot * hdot / (g * g * g)},
        {"-4 g g g h h (Xt_m,Xt_n)",
         -4.0 * n * h * h * st.mixed / (g * g * g)},
        {"4 (g^-1 gdot g^-1 gdot g^-1)(h g^-1 h)",
         4.0 * n * gdot * gdot * h * h / (g * g * g * g)},
        {"2 (g^-1 gdot g^-1)(g^-1 gdot g^-1) h h",
         2.0 * n * gdot * gdot * h * h / (g * g * g * g)},
        {"-4 g g h dGamma/dt nu", -4.0 * st.dGamma_dt * st.nu},
        {"-2c1 |A|^2", -2.0 * c1 * st.normA2},
    };
}

double sum_terms(const std::vector<TermLog>& terms) {
    double rhs = 0.0;
    for (const TermLog& term : terms) rhs += term.value;
    return rhs;
}

}  // namespace

std::pair<IdentityResidual, IdentityResidual> verify_scalar_evolutions(
    const SphereFamily& family, double t) {
    const SphereTensors st = sphere_tensors(family, t);
    const double c1 = family.problem.cbar(t);
    const int n = st.n;
    const double r = st.r, rt = st.r_t, rtt = st.r_tt;

    IdentityResidual res_h;
    res_h.lhs = n * (2.0 * rt * rt - r * rtt) / (r * r * r);
    res_h.terms = mean_curvature_rhs_terms(st, c1);
    res_h.rhs = sum_terms(res_h.terms);
    res_h.residual = std::abs(res_h.lhs - res_h.rhs);

    IdentityResidual res_a;
    res_a.lhs = n * (6.0 * rt * rt - 2.0 * r * rtt) / (r * r * r * r);
    res_a.terms = norm_a2_rhs_terms(st, c1);
    res_a.rhs = sum_terms(res_a.terms);
    res_a.residual = std::abs(res_a.lhs - res_a.rhs);

    return {res_h, res_a};
}

std::pair<double, double> scalar_forcing_difference(const SphereFamily& family,
                                                    double t) {
    const SphereTensors st = sphere_tensors(family, t);
    const double c1 = family.problem.cbar(t);
    const double forced_h = sum_terms(mean_curvature_rhs_terms(st, c1));
    const double unforced_h = sum_terms(mean_curvature_rhs_terms(st, 0.0));
    const double forced_a = sum_terms(norm_a2_rhs_terms(st, c1));
    const double unforced_a = sum_terms(norm_a2_rhs_terms(st, 0.0));
    return {forced_h - unforced_h, forced_a - unforced_a};
}

}  // namespace hmcf
