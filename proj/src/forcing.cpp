#include "hmcf/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hmcf {

ForcingSchedule ForcingSchedule::constant(double c) {
    if (!std::isfinite(c))
        throw std::invalid_argument("ForcingSchedule: constant must be finite");
    ForcingSchedule f;
    f.constant_ = c;
    f.bound_ = std::abs(c);
    return f;
}

ForcingSchedule ForcingSchedule::table(std::vector<double> times,
                                       std::vector<double> values) {
    if (times.empty() || times.size() != values.size())
        throw std::invalid_argument(
            "ForcingSchedule: table needs equal, nonzero sample counts");
    for (size_t j = 0; j < times.size(); ++j) {
        if (!std::isfinite(times[j]) || !std::isfinite(values[j]))
            throw std::invalid_argument("ForcingSchedule: non-finite sample");
        if (j > 0 && !(times[j] > times[j - 1]))
            throw std::invalid_argument(
                "ForcingSchedule: sample times must be strictly increasing");
    }
    ForcingSchedule f;
    f.times_ = std::move(times);
    f.values_ = std::move(values);
    f.bound_ = 0.0;
    for (double v : f.values_) f.bound_ = std::max(f.bound_, std::abs(v));
    return f;
}

double ForcingSchedule::operator()(double t) const {
    if (times_.empty()) return constant_;
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const size_t j = static_cast<size_t>(it - times_.begin());
    const double t0 = times_[j - 1], t1 = times_[j];
    const double a = (t - t0) / (t1 - t0);
    return (1.0 - a) * values_[j - 1] + a * values_[j];
}

bool ForcingSchedule::non_positive() const {
    if (times_.empty()) return constant_ <= 0.0;
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v <= 0.0; });
}

bool ForcingSchedule::operator==(const ForcingSchedule& other) const {
    return constant_ == other.constant_ && times_ == other.times_ &&
           values_ == other.values_;
}

std::string ForcingSchedule::spec_string() const {
    char buf[64];
    if (times_.empty()) {
        std::snprintf(buf, sizeof buf, "const:%.17g", constant_);
        return buf;
    }
    std::string out = "table-inline:";
    for (size_t j = 0; j < times_.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g:%.17g", times_[j], values_[j]);
        if (j) out += ',';
        out += buf;
    }
    return out;
}

}  // namespace hmcf
