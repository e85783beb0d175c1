#include "zmc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "zmc/errors.hpp"

namespace zmc {

namespace {

using Rule = boost::math::quadrature::gauss<double, 32>;

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

CVec3 operator+(CVec3 a, const CVec3& b) {
    for (std::size_t k = 0; k < 3; ++k) a[k] += b[k];
    return a;
}

CVec3 operator*(cplx s, CVec3 a) {
    for (auto& x : a) x *= s;
    return a;
}

double distance(const CVec3& a, const CVec3& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < 3; ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

double magnitude(const CVec3& a) {
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

CVec3 checked(const std::function<CVec3(cplx)>& f, cplx w) {
    CVec3 v;
    try {
        v = f(w);
    } catch (const EvalDomainError& e) {
        throw SingularPath(std::string("integrand undefined on the path: ") + e.what());
    }
    for (const auto& x : v) {
        if (!finite(x)) {
            throw SingularPath("integrand is not finite at w = (" + std::to_string(w.real()) + ", " +
                               std::to_string(w.imag()) + ")");
        }
    }
    return v;
}

CVec3 composite(const std::function<CVec3(cplx)>& f, cplx a, cplx b, int segments) {
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const cplx step = (b - a) / static_cast<double>(segments);
    CVec3 total{};
    // Segment ends are probed too, so poles on dyadic points of the path
    // are caught even when symmetric nodes would cancel them.
    checked(f, b);
    for (int s = 0; s < segments; ++s) {
        checked(f, a + static_cast<double>(s) * step);
        const cplx mid = a + (static_cast<double>(s) + 0.5) * step;
        const cplx half = 0.5 * step;
        CVec3 seg{};
        for (std::size_t k = 0; k < x.size(); ++k) {
            seg = seg + cplx(w[k], 0.0) * (checked(f, mid + x[k] * half) + checked(f, mid - x[k] * half));
        }
        total = total + half * seg;
    }
    return total;
}

}  // namespace

CVec3 integrate_path(const std::function<CVec3(cplx)>& f, cplx a, cplx b, const QuadratureOptions& opt) {
    if (a == b) return CVec3{};
    CVec3 prev = composite(f, a, b, 1);
    for (int segments = 2; segments <= opt.max_segments; segments *= 2) {
        const CVec3 next = composite(f, a, b, segments);
        if (distance(next, prev) < opt.tolerance * std::max(1.0, magnitude(next))) return next;
        prev = next;
    }
    throw NoConvergence("quadrature did not converge within " + std::to_string(opt.max_segments) + " segments");
}

cplx integrate_path(const std::function<cplx(cplx)>& f, cplx a, cplx b, const QuadratureOptions& opt) {
    return integrate_path([&f](cplx w) { return CVec3{f(w), cplx{}, cplx{}}; }, a, b, opt)[0];
}

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt) {
    return integrate_path([&f](cplx t) { return cplx(f(t.real()), 0.0); }, cplx(a, 0.0), cplx(b, 0.0), opt).real();
}

}  // namespace zmc
