#pragma once

// Integral representations of ZMC surfaces: Weierstrass-Enneper (minimal,
// maximal and the reduced single-function form), the timelike minimal
// representation, and Barbishov-Charnikov for Born-Infeld solitons.

#include <string_view>
#include <vector>

#include "zmc/expr.hpp"
#include "zmc/grid.hpp"
#include "zmc/pde.hpp"
#include "zmc/quadrature.hpp"

namespace zmc {

enum class WEMode { minimal, maximal, reduced_R };

std::string_view to_string(WEMode m);
/// Accepts "minimal", "maximal" and "reduced-R".
WEMode parse_we_mode(std::string_view name);

/// Weierstrass-Enneper data. In reduced_R mode `f` is R and g is taken to be
/// the identity w -> w whatever `g` holds.
struct WEData {
    AnalyticExpr f = AnalyticExpr::constant(1.0);
    AnalyticExpr g = AnalyticExpr::identity();
    cplx zeta0{};
    Vec3 offset = Vec3::Zero();
    WEMode mode = WEMode::minimal;
};

/// The integrand triple phi(w); X = X0 + Re of its integral from zeta0.
///   minimal / reduced-R: ((1 - g^2) f, i (1 + g^2) f, 2 f g)
///   maximal:             ((1 + g^2) f, i (1 - g^2) f, -2 f g)
CVec3 we_integrand(const WEData& data, cplx w);
/// d phi / dw, from symbolic derivatives of f and g.
CVec3 we_integrand_derivative(const WEData& data, cplx w);

/// Point of the surface at zeta; straight-path quadrature from zeta0.
Vec3 we_point(const WEData& data, cplx zeta, const QuadratureOptions& opt = {});

/// cos(theta) (Re I + X0) + sin(theta) (Im I + X0), I the integral of phi.
Vec3 associated_family_point(const WEData& data, cplx zeta, double theta, const QuadratureOptions& opt = {});

/// Exact parametric jet in (u, v) = (Re zeta, Im zeta) of the associated
/// family member theta (theta = 0 is the surface itself).
SurfaceJet3 we_jet(const WEData& data, cplx zeta, double theta = 0.0, const QuadratureOptions& opt = {});

/// (u, v) -> we point with exact jets, for parametric sweeps and meshes.
ParametricSource we_source(const WEData& data, double theta = 0.0);

/// Split f (R in reduced form) into weighted copies lambda_i f with zero
/// offsets. Throws ZeroWeight for a zero weight and WeightSumError when the
/// weights do not sum to 1 within 1e-12.
std::vector<WEData> split_weierstrass(const WEData& data, const std::vector<double>& weights);

/// Split by explicit expressions R_i. The sum and the non-vanishing of each
/// part are only checked by sampling the (Re, Im) rectangle `region` on a
/// 32 x 32 lattice: WeightSumError if sum R_i differs from R, ZeroWeight if
/// some R_i nearly vanishes at a sample.
std::vector<WEData> split_weierstrass(const WEData& data, const std::vector<AnalyticExpr>& parts,
                                      const GridSpec& region);

struct NewtonOptions {
    double step_tol = 1e-12;
    double residual_tol = 1e-10;
    int max_iterations = 50;
    int max_halvings = 20;
    double singular_det = 1e-14;
};

/// Solve (x(zeta), y(zeta)) = (x, y) by damped Newton. The Jacobian comes
/// from the integrand at zeta, no quadrature. Throws JacobianSingular when
/// |det| < opt.singular_det and NewtonDiverged when the iteration fails.
cplx invert_parametrization(const WEData& data, double x, double y, cplx guess, const NewtonOptions& opt = {});

// ---------------------------------------------------------------------------
// Timelike minimal surfaces

/// Which reading of the timelike representation to assemble.
///  - null_pair: u-part (1/2 (1+q^2) f, -1/2 (1-q^2) f, -q f) and v-part
///    (-1/2 (1+r^2) g, 1/2 (1-r^2) g, r g); ZMC with time along x.
///  - display_literal: x = 1/2 [A(1+q^2) - B(1-r^2)], y = -1/2 [A(1-q^2) + B(1-r^2)],
///    z = -A(q) + B(r), which is not ZMC in general.
enum class TlmsVariant { null_pair, display_literal };

struct TLMSData {
    AnalyticExpr f = AnalyticExpr::constant(1.0, "u");
    AnalyticExpr q = AnalyticExpr::identity("u");
    AnalyticExpr g = AnalyticExpr::constant(1.0, "v");
    AnalyticExpr r = AnalyticExpr::identity("v");
    double u0 = 0.0;
    double v0 = 0.0;
};

Vec3 tlms_point(const TLMSData& data, double u, double v, TlmsVariant variant = TlmsVariant::null_pair,
                const QuadratureOptions& opt = {});
SurfaceJet3 tlms_jet(const TLMSData& data, double u, double v, TlmsVariant variant = TlmsVariant::null_pair,
                     const QuadratureOptions& opt = {});
ParametricSource tlms_source(const TLMSData& data, TlmsVariant variant = TlmsVariant::null_pair);

// ---------------------------------------------------------------------------
// Barbishov-Charnikov

struct BCData {
    AnalyticExpr F = AnalyticExpr::identity("r");
    AnalyticExpr G = AnalyticExpr::identity("s");
};

/// x = 1/2 (F + G - int s^2 G' - int r^2 F'), y = 1/2 (G - F - int r^2 F' + int s^2 G'),
/// z = int r F' + int s G', integrals from 0.
Vec3 bc_point(const BCData& data, double r, double s, const QuadratureOptions& opt = {});
SurfaceJet3 bc_jet(const BCData& data, double r, double s, const QuadratureOptions& opt = {});
ParametricSource bc_source(const BCData& data);

/// Find (r, s) with (x(r, s), y(r, s)) = (x, y) by damped Newton.
std::pair<double, double> invert_bc(const BCData& data, double x, double y, std::pair<double, double> guess,
                                    const NewtonOptions& opt = {});

}  // namespace zmc
