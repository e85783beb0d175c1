#pragma once

// Graph ZMC equations on derivative jets, and a signature-aware mean
// curvature numerator for parametrized surfaces.

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "zmc/catalog.hpp"
#include "zmc/grid.hpp"
#include "zmc/jet.hpp"
#include "zmc/report.hpp"

namespace zmc {

enum class GraphEquation { minimal, maximal, bi_soliton };

std::string_view to_string(GraphEquation eq);
/// Accepts "minimal", "maximal", "bi" and "bi-soliton".
GraphEquation parse_graph_equation(std::string_view name);

/// Left-hand side of the selected graph equation, coefficients as printed:
///   minimal:    (1 + zx^2) zyy - 2 zx zy zxy + (1 + zy^2) zxx
///   maximal:    (1 - zx^2) zyy + 2 zx zy zxy + (1 - zy^2) zxx
///   bi-soliton: (1 - zy^2) zxx + 2 zx zy zxy - (1 + zx^2) zyy
template <typename T>
T graph_residual(GraphEquation eq, const BasicGraphJet<T>& j) {
    const T one(1.0);
    const T two(2.0);
    switch (eq) {
        case GraphEquation::minimal:
            return (one + j.z_x * j.z_x) * j.z_yy - two * j.z_x * j.z_y * j.z_xy + (one + j.z_y * j.z_y) * j.z_xx;
        case GraphEquation::maximal:
            return (one - j.z_x * j.z_x) * j.z_yy + two * j.z_x * j.z_y * j.z_xy + (one - j.z_y * j.z_y) * j.z_xx;
        case GraphEquation::bi_soliton:
            return (one - j.z_y * j.z_y) * j.z_xx + two * j.z_x * j.z_y * j.z_xy - (one + j.z_x * j.z_x) * j.z_yy;
    }
    return T{};
}

enum class JetMethod { exact, central_diff };

/// Derivative jet of a graph surface. The exact method uses the surface's
/// analytic jet (ExactUnavailable if it has none); central_diff uses 5-point
/// stencils with step h. Throws DomainViolation when (x, y), or any stencil
/// point, is outside the surface's domain with the given margin.
GraphJet graph_jet(const HeightSurface& surface, double x, double y, JetMethod method = JetMethod::exact,
                   double h = 1e-4, double margin = 0.0);

/// Residual sweep of one graph equation over a lattice.
VerificationReport residual_sweep(const HeightSurface& surface, GraphEquation eq, const GridSpec& grid,
                                  JetMethod method = JetMethod::exact, double tolerance = 1e-10);

// ---------------------------------------------------------------------------
// Parametric check

using Vec3 = Eigen::Vector3d;

/// Ambient metric diag(e1, e2, e3).
struct SignatureMetric {
    std::array<int, 3> signs{1, 1, 1};

    static SignatureMetric euclid() { return {{1, 1, 1}}; }
    static SignatureMetric l3() { return {{1, 1, -1}}; }   ///< dx^2 + dy^2 - dz^2
    static SignatureMetric l3p() { return {{1, -1, 1}}; }  ///< dx^2 - dy^2 + dz^2
    static SignatureMetric l3x() { return {{-1, 1, 1}}; }  ///< -dx^2 + dy^2 + dz^2

    double dot(const Vec3& a, const Vec3& b) const {
        return signs[0] * a[0] * b[0] + signs[1] * a[1] * b[1] + signs[2] * a[2] * b[2];
    }
    std::string name() const;
};

/// Accepts "euclid", "l3", "l3p" and "l3x".
SignatureMetric parse_metric(std::string_view name);

/// First and second partial derivatives of X(u, v).
struct SurfaceJet3 {
    Vec3 X;
    Vec3 X_u;
    Vec3 X_v;
    Vec3 X_uu;
    Vec3 X_uv;
    Vec3 X_vv;
};

using ParametricSampler = std::function<Vec3(double, double)>;
using ParametricJet = std::function<SurfaceJet3(double, double)>;

/// A parametrized surface; `jet` is optional and, when present, is used
/// in place of finite differences.
struct ParametricSource {
    std::string name;
    ParametricSampler point;
    ParametricJet jet;
};

/// 5-point central differences of a sampler; the mixed partial uses the
/// tensor product of the first-derivative stencil.
SurfaceJet3 finite_difference_jet(const ParametricSampler& X, double u, double v, double h = 1e-4);

/// E<X_vv,N> - 2F<X_uv,N> + G<X_uu,N> with E, F, G and <,> taken in the
/// metric and N = diag(e)(X_u x X_v), divided by (|E|+|F|+|G|)|N|.
/// Throws DegenerateMetric when |EG - F^2| < 1e-12 (|E|+|F|+|G|)^2.
double parametric_zmc_numerator(const SurfaceJet3& jet, const SignatureMetric& metric);
double parametric_zmc_numerator(const ParametricSampler& X, const SignatureMetric& metric, double u, double v,
                                double h = 1e-4);

/// Sweep |numerator| over a (u, v) lattice.
VerificationReport parametric_sweep(const ParametricSource& source, const SignatureMetric& metric,
                                    const GridSpec& grid, double h = 1e-4, double tolerance = 1e-6);

/// Jet of the local graph z = Z(x, y) of a parametrized surface, by the
/// implicit function theorem. Throws DegenerateMetric when (u, v) -> (x, y)
/// is singular.
GraphJet graph_jet_from_parametric(const SurfaceJet3& jet);

/// The graph lift (x, y) -> (x, y, Z(x, y)) with exact derivatives.
ParametricSource graph_lift(const HeightSurface& surface);

}  // namespace zmc
