#include "zmc/report.hpp"

#include <cmath>

namespace zmc {

void VerificationReport::finalize() {
    pass = points_checked >= 1 && max_abs_err <= tolerance;
    for (const auto& c : checks) pass = pass && c.pass;
}

void ErrorAccumulator::add(double err, std::vector<double> coords, std::complex<double> lhs,
                           std::complex<double> rhs) {
    ++count_;
    // NaN is treated as an infinitely bad point.
    const double e = std::isnan(err) ? INFINITY : err;
    sum_ += e;
    if (!has_worst_ || e > max_) {
        max_ = e;
        worst_ = WorstPoint{std::move(coords), lhs, rhs};
        has_worst_ = true;
    }
}

void ErrorAccumulator::merge(const ErrorAccumulator& other) {
    if (other.count_ == 0) return;
    count_ += other.count_;
    sum_ += other.sum_;
    if (!has_worst_ || other.max_ > max_) {
        max_ = other.max_;
        worst_ = other.worst_;
        has_worst_ = true;
    }
}

void ErrorAccumulator::fill(VerificationReport& r) const {
    r.points_checked = count_;
    r.max_abs_err = max_;
    r.mean_abs_err = mean();
    r.worst_point = worst_;
}

}  // namespace zmc
