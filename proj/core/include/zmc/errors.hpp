#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zmc {

/// Base of every error raised by the library. `kind()` is a stable name
/// used in CLI diagnostics and reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ZMC_DEFINE_ERROR(Name)                                             \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    }

// expr
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error("SyntaxError", what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};
ZMC_DEFINE_ERROR(UnknownIdentifier);
ZMC_DEFINE_ERROR(EvalDomainError);

// catalog
ZMC_DEFINE_ERROR(UnknownSurface);
ZMC_DEFINE_ERROR(UnknownIdentity);
ZMC_DEFINE_ERROR(ParamDomainError);
ZMC_DEFINE_ERROR(SingularArgument);

// grids and sweeps
ZMC_DEFINE_ERROR(EmptyGrid);

class DomainViolation : public Error {
public:
    using Point = std::pair<double, double>;

    DomainViolation(const std::string& what, std::vector<Point> points)
        : Error("DomainViolation", describe(what, points)), points_(std::move(points)) {}

    const std::vector<Point>& points() const noexcept { return points_; }

private:
    static std::string describe(const std::string& what, const std::vector<Point>& pts);
    std::vector<Point> points_;
};

// zmc (pde)
ZMC_DEFINE_ERROR(DegenerateMetric);
ZMC_DEFINE_ERROR(ExactUnavailable);

// reps
ZMC_DEFINE_ERROR(SingularPath);
ZMC_DEFINE_ERROR(NoConvergence);
ZMC_DEFINE_ERROR(ZeroWeight);
ZMC_DEFINE_ERROR(WeightSumError);
ZMC_DEFINE_ERROR(NewtonDiverged);
ZMC_DEFINE_ERROR(JacobianSingular);

// foliation
ZMC_DEFINE_ERROR(ExcludedPoint);

// meshio
ZMC_DEFINE_ERROR(IoError);

#undef ZMC_DEFINE_ERROR

}  // namespace zmc
