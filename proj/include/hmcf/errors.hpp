#pragma once

#include <stdexcept>
#include <string>

namespace hmcf {

/// Strict convexity (S_thetatheta + S > eps) failed at a grid node.
/// Carries the offending node so callers can report where the curve
/// degenerated.
class ConvexityError : public std::runtime_error {
public:
    ConvexityError(int node, double theta, double value, double tau)
        : std::runtime_error("convexity lost at theta=" + std::to_string(theta) +
                             " (node " + std::to_string(node) +
                             "): S_thth+S=" + std::to_string(value) +
                             " at tau=" + std::to_string(tau)),
          node_(node), theta_(theta), value_(value), tau_(tau) {}

    int node() const { return node_; }
    double theta() const { return theta_; }
    double value() const { return value_; }
    double tau() const { return tau_; }

private:
    int node_;
    double theta_;
    double value_;
    double tau_;
};

/// A bound or check was requested outside the hypotheses it is stated for.
class NotApplicableError : public std::invalid_argument {
public:
    explicit NotApplicableError(const std::string& what)
        : std::invalid_argument(what) {}
};

/// The time integrator produced a non-finite state.
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace hmcf
