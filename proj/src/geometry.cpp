#include "hmcf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmcf/errors.hpp"

namespace hmcf {

std::vector<double> differentiate_periodic(const AngularGrid& grid,
                                           std::span<const double> values,
                                           int order) {
    const int n = grid.n_nodes;
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument(
            "differentiate_periodic: values length " +
            std::to_string(values.size()) + " does not match grid n_nodes " +
            std::to_string(n));
    if (order != 1 && order != 2)
        throw std::invalid_argument("differentiate_periodic: order must be 1 or 2");

    std::vector<double> out(n);
    if (order == 1) {
        const double scale = 1.0 / (12.0 * grid.dtheta);
        for (int i = 0; i < n; ++i) {
            const double fm2 = values[(i - 2 + n) % n];
            const double fm1 = values[(i - 1 + n) % n];
            const double fp1 = values[(i + 1) % n];
            const double fp2 = values[(i + 2) % n];
            out[i] = (8.0 * (fp1 - fm1) - (fp2 - fm2)) * scale;
        }
    } else {
        const double scale = 1.0 / (12.0 * grid.dtheta * grid.dtheta);
        for (int i = 0; i < n; ++i) {
            const double fm2 = values[(i - 2 + n) % n];
            const double fm1 = values[(i - 1 + n) % n];
            const double f0 = values[i];
            const double fp1 = values[(i + 1) % n];
            const double fp2 = values[(i + 2) % n];
            // grouped so that constant input cancels exactly
            out[i] = (16.0 * (fm1 + fp1) - (fm2 + fp2) - 30.0 * f0) * scale;
        }
    }
    return out;
}

double convexity_floor(std::span<const double> s) {
    double s_max = 0.0;
    for (double v : s) s_max = std::max(s_max, v);
    return 1e-8 * s_max;
}

std::vector<double> curvature_radius(const SupportState& state) {
    std::vector<double> roc = differentiate_periodic(state.grid, state.s, 2);
    for (int i = 0; i < state.grid.n_nodes; ++i) roc[i] += state.s[i];
    return roc;
}

std::vector<double> curvature_from_support(const SupportState& state) {
    std::vector<double> roc = curvature_radius(state);
    const double eps = convexity_floor(state.s);
    int worst = 0;
    for (int i = 1; i < state.grid.n_nodes; ++i)
        if (roc[i] < roc[worst]) worst = i;
    if (roc[worst] <= eps)
        throw ConvexityError(worst, state.grid.theta[worst], roc[worst],
                             state.tau);
    for (double& v : roc) v = 1.0 / v;
    return roc;
}

std::vector<Vec2> reconstruct_curve(const SupportState& state) {
    const int n = state.grid.n_nodes;
    std::vector<double> s_th = differentiate_periodic(state.grid, state.s, 1);
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double c = std::cos(state.grid.theta[i]);
        const double si = std::sin(state.grid.theta[i]);
        pts[i].x = state.s[i] * c - s_th[i] * si;
        pts[i].y = state.s[i] * si + s_th[i] * c;
    }
    return pts;
}

double periodic_quadrature(const AngularGrid& grid,
                           std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * grid.dtheta;
}

double curve_length(const SupportState& state) {
    return periodic_quadrature(state.grid, state.s);
}

std::vector<double> support_of_circle(const AngularGrid& grid, double radius,
                                      Vec2 center) {
    const double offset = std::hypot(center.x, center.y);
    if (!(radius > offset))
        throw std::invalid_argument(
            "support_of_circle: radius " + std::to_string(radius) +
            " must exceed |center| " + std::to_string(offset) +
            " so the origin is interior");
    std::vector<double> s(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i)
        s[i] = radius + center.x * std::cos(grid.theta[i]) +
               center.y * std::sin(grid.theta[i]);
    return s;
}

CurveGeometry curve_geometry(const SupportState& state) {
    CurveGeometry geo;
    geo.points = reconstruct_curve(state);
    geo.curvature = curvature_from_support(state);
    geo.length = curve_length(state);
    geo.sigma_tilde.resize(state.grid.n_nodes);
    for (int i = 0; i < state.grid.n_nodes; ++i)
        geo.sigma_tilde[i] = -state.w[i];
    return geo;
}

double total_variation(std::span<const double> values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) return 0.0;
    double tv = 0.0;
    for (int i = 0; i < n; ++i)
        tv += std::abs(values[(i + 1) % n] - values[i]);
    return tv;
}

}  // namespace hmcf
