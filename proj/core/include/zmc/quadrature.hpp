#pragma once

// Composite 32-node Gauss-Legendre quadrature on straight segments, with
// segment doubling until successive refinements agree.

#include <array>
#include <complex>
#include <functional>

namespace zmc {

using cplx = std::complex<double>;
using CVec3 = std::array<cplx, 3>;

struct QuadratureOptions {
    double tolerance = 1e-10;  ///< on the change between successive refinements
    int max_segments = 1024;
};

/// Integral of a vector integrand along the straight path a -> b in the
/// complex plane. Throws SingularPath when the integrand is not finite at
/// a node and NoConvergence when the segment cap is reached.
CVec3 integrate_path(const std::function<CVec3(cplx)>& f, cplx a, cplx b, const QuadratureOptions& opt = {});

/// Integral of a scalar function along the straight path a -> b.
cplx integrate_path(const std::function<cplx(cplx)>& f, cplx a, cplx b, const QuadratureOptions& opt = {});

/// Real integral over [a, b] (b < a allowed).
double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt = {});

}  // namespace zmc
