#pragma once

#include <string>
#include <vector>

namespace hmcf {

/// Bounded continuous forcing coefficient c(t) (also used for cbar and c1).
/// Either a constant or a tabulated sample set with linear interpolation
/// inside the table and constant extrapolation outside it.
class ForcingSchedule {
public:
    ForcingSchedule() = default;  // constant zero

    static ForcingSchedule constant(double c);
    static ForcingSchedule table(std::vector<double> times,
                                 std::vector<double> values);

    double operator()(double t) const;

    /// c_plus = sup_t |c(t)|, attained on the samples for piecewise-linear c.
    double bound() const { return bound_; }

    /// True when c(t) <= 0 for all t (required by the comparison bounds).
    bool non_positive() const;

    bool is_constant() const { return times_.empty(); }
    double constant_value() const { return constant_; }
    const std::vector<double>& sample_times() const { return times_; }
    const std::vector<double>& sample_values() const { return values_; }

    bool operator==(const ForcingSchedule& other) const;

    /// Round-trippable spec string: "const:<v>" or "table-inline:t:c,..."
    std::string spec_string() const;

private:
    double constant_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
    double bound_ = 0.0;
};

}  // namespace hmcf
