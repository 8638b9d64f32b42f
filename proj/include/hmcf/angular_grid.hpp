#pragma once

#include <stdexcept>
#include <vector>

namespace hmcf {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Uniform periodic discretization of the normal angle theta in [0, 2pi).
struct AngularGrid {
    int n_nodes = 0;
    double dtheta = 0.0;
    std::vector<double> theta;

    static AngularGrid uniform(int n_nodes) {
        if (n_nodes < 16 || n_nodes % 2 != 0)
            throw std::invalid_argument(
                "AngularGrid: n_nodes must be even and >= 16, got " +
                std::to_string(n_nodes));
        AngularGrid g;
        g.n_nodes = n_nodes;
        g.dtheta = two_pi / n_nodes;
        g.theta.resize(n_nodes);
        for (int i = 0; i < n_nodes; ++i)
            g.theta[i] = (two_pi * i) / n_nodes;
        return g;
    }

    bool operator==(const AngularGrid& other) const {
        return n_nodes == other.n_nodes;
    }
};

}  // namespace hmcf
