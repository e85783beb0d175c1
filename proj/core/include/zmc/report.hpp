#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zmc/grid.hpp"

namespace zmc {

using ParamValue = std::variant<double, std::int64_t, std::string, std::vector<double>>;

/// Location and both sides of the largest discrepancy in a sweep.
struct WorstPoint {
    std::vector<double> coords;  ///< (x, y) or (Re x, Im x, Re y, Im y) for complex probes
    std::complex<double> lhs{};
    std::complex<double> rhs{};
};

/// A named secondary check carried by a report.
struct SubCheck {
    std::string name;
    double max_abs_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Machine-readable outcome of an identity, residual or foliation sweep.
/// pass holds iff max_abs_err <= tolerance and every sub-check passes.
struct VerificationReport {
    std::string subject;
    std::map<std::string, ParamValue> parameters;
    std::optional<GridSpec> grid;
    std::string policy;
    std::int64_t points_checked = 0;
    double max_abs_err = 0.0;
    double mean_abs_err = 0.0;
    WorstPoint worst_point;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<SubCheck> checks;

    void finalize();
};

/// Running max/mean of absolute errors. Merging partial accumulators in a
/// fixed order gives results independent of thread scheduling.
class ErrorAccumulator {
public:
    void add(double err, std::vector<double> coords, std::complex<double> lhs, std::complex<double> rhs);
    void merge(const ErrorAccumulator& other);

    std::int64_t count() const noexcept { return count_; }
    double max() const noexcept { return max_; }
    double mean() const noexcept { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }
    const WorstPoint& worst() const noexcept { return worst_; }

    /// Copy count/max/mean/worst into a report.
    void fill(VerificationReport& r) const;

private:
    std::int64_t count_ = 0;
    double max_ = 0.0;
    double sum_ = 0.0;
    bool has_worst_ = false;
    WorstPoint worst_;
};

}  // namespace zmc
