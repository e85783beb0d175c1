#include "zmc/reps.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "zmc/errors.hpp"

namespace zmc {

namespace {

const cplx I(0.0, 1.0);

Vec3 re(const CVec3& v) { return {v[0].real(), v[1].real(), v[2].real()}; }
Vec3 im(const CVec3& v) { return {v[0].imag(), v[1].imag(), v[2].imag()}; }

CVec3 rotate(const CVec3& v, double theta) {
    const cplx e = std::polar(1.0, -theta);
    return {e * v[0], e * v[1], e * v[2]};
}

// (f, g, f', g') with g = w in reduced form.
struct WEValues {
    cplx f, g, df, dg;
};

WEValues values(const WEData& d, cplx w, bool derivatives) {
    WEValues v{};
    v.f = d.f(w);
    if (d.mode == WEMode::reduced_R) {
        v.g = w;
        v.dg = 1.0;
    } else {
        v.g = d.g(w);
        if (derivatives) v.dg = d.g.derivative()(w);
    }
    if (derivatives) v.df = d.f.derivative()(w);
    return v;
}

CVec3 integral(const WEData& d, cplx zeta, const QuadratureOptions& opt) {
    return integrate_path([&d](cplx w) { return we_integrand(d, w); }, d.zeta0, zeta, opt);
}

double real_at(const AnalyticExpr& e, double t) {
    const cplx v = e(cplx(t, 0.0));
    if (!std::isfinite(v.real())) throw SingularPath("integrand is not finite at t = " + std::to_string(t));
    return v.real();
}

}  // namespace

std::string_view to_string(WEMode m) {
    switch (m) {
        case WEMode::minimal: return "minimal";
        case WEMode::maximal: return "maximal";
        case WEMode::reduced_R: return "reduced-R";
    }
    return "minimal";
}

WEMode parse_we_mode(std::string_view name) {
    if (name == "minimal") return WEMode::minimal;
    if (name == "maximal") return WEMode::maximal;
    if (name == "reduced-R") return WEMode::reduced_R;
    throw std::invalid_argument("unknown representation mode '" + std::string(name) + "'");
}

CVec3 we_integrand(const WEData& data, cplx w) {
    const WEValues v = values(data, w, false);
    const cplx g2 = v.g * v.g;
    if (data.mode == WEMode::maximal) return {(1.0 + g2) * v.f, I * (1.0 - g2) * v.f, -2.0 * v.f * v.g};
    return {(1.0 - g2) * v.f, I * (1.0 + g2) * v.f, 2.0 * v.f * v.g};
}

CVec3 we_integrand_derivative(const WEData& data, cplx w) {
    const WEValues v = values(data, w, true);
    const cplx g2 = v.g * v.g;
    const cplx dg2 = 2.0 * v.g * v.dg;
    const cplx dfg = v.df * v.g + v.f * v.dg;
    if (data.mode == WEMode::maximal) {
        return {(1.0 + g2) * v.df + dg2 * v.f, I * ((1.0 - g2) * v.df - dg2 * v.f), -2.0 * dfg};
    }
    return {(1.0 - g2) * v.df - dg2 * v.f, I * ((1.0 + g2) * v.df + dg2 * v.f), 2.0 * dfg};
}

Vec3 we_point(const WEData& data, cplx zeta, const QuadratureOptions& opt) {
    return data.offset + re(integral(data, zeta, opt));
}

Vec3 associated_family_point(const WEData& data, cplx zeta, double theta, const QuadratureOptions& opt) {
    const CVec3 I0 = integral(data, zeta, opt);
    return std::cos(theta) * (re(I0) + data.offset) + std::sin(theta) * (im(I0) + data.offset);
}

SurfaceJet3 we_jet(const WEData& data, cplx zeta, double theta, const QuadratureOptions& opt) {
    // With psi = exp(-i theta) phi the member is Re of the integral of psi
    // (plus the offset blend), so d/du = Re psi and d/dv = -Im psi.
    const CVec3 psi = rotate(we_integrand(data, zeta), theta);
    const CVec3 dpsi = rotate(we_integrand_derivative(data, zeta), theta);
    SurfaceJet3 j;
    j.X = theta == 0.0 ? we_point(data, zeta, opt) : associated_family_point(data, zeta, theta, opt);
    j.X_u = re(psi);
    j.X_v = -im(psi);
    j.X_uu = re(dpsi);
    j.X_uv = -im(dpsi);
    j.X_vv = -re(dpsi);
    return j;
}

ParametricSource we_source(const WEData& data, double theta) {
    ParametricSource s;
    s.name = std::string("we-") + std::string(to_string(data.mode));
    s.point = [data, theta](double u, double v) { return associated_family_point(data, cplx(u, v), theta); };
    s.jet = [data, theta](double u, double v) { return we_jet(data, cplx(u, v), theta); };
    return s;
}

std::vector<WEData> split_weierstrass(const WEData& data, const std::vector<double>& weights) {
    if (weights.empty()) throw WeightSumError("no weights given");
    double sum = 0.0;
    for (double w : weights) {
        if (w == 0.0) throw ZeroWeight("split weights must be nonzero");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw WeightSumError("split weights sum to " + std::to_string(sum) + ", not 1");
    std::vector<WEData> out;
    out.reserve(weights.size());
    for (double w : weights) {
        WEData part = data;
        part.f = cplx(w, 0.0) * data.f;
        part.offset = Vec3::Zero();
        out.push_back(std::move(part));
    }
    return out;
}

std::vector<WEData> split_weierstrass(const WEData& data, const std::vector<AnalyticExpr>& parts,
                                      const GridSpec& region) {
    if (parts.empty()) throw WeightSumError("no parts given");
    constexpr int kSide = 32;
    for (int j = 0; j < kSide; ++j) {
        for (int i = 0; i < kSide; ++i) {
            const cplx w(region.u_min + (region.u_max - region.u_min) * i / (kSide - 1),
                         region.v_min + (region.v_max - region.v_min) * j / (kSide - 1));
            cplx R;
            try {
                R = data.f(w);
            } catch (const EvalDomainError&) {
                continue;
            }
            cplx sum{};
            for (const auto& p : parts) {
                cplx v;
                try {
                    v = p(w);
                } catch (const EvalDomainError& e) {
                    throw ZeroWeight(std::string("part undefined where R is defined: ") + e.what());
                }
                if (!(std::abs(v) > 1e-12)) throw ZeroWeight("part '" + p.str() + "' vanishes at a sample point");
                sum += v;
            }
            if (!(std::abs(sum - R) <= 1e-10 * (1.0 + std::abs(R)))) {
                throw WeightSumError("parts do not sum to R at a sample point");
            }
        }
    }
    std::vector<WEData> out;
    for (const auto& p : parts) {
        WEData part = data;
        part.f = p.renamed(data.f.varname());
        part.offset = Vec3::Zero();
        out.push_back(std::move(part));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Newton

namespace {

// Generic damped Newton on R^2 -> R^2.
template <typename Residual, typename Jacobian>
Eigen::Vector2d damped_newton(Residual&& F, Jacobian&& J, Eigen::Vector2d p, const NewtonOptions& opt) {
    Eigen::Vector2d r = F(p);
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Eigen::Matrix2d A = J(p);
        const double det = A.determinant();
        if (!(std::abs(det) >= opt.singular_det)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "Jacobian determinant %.3g is below %.3g", det, opt.singular_det);
            throw JacobianSingular(buf);
        }
        Eigen::Vector2d step = A.inverse() * (-r);
        if (!std::isfinite(step.norm()) || step.norm() > 1e6) throw NewtonDiverged("Newton step blew up");
        bool accepted = false;
        Eigen::Vector2d next, rn;
        for (int h = 0; h <= opt.max_halvings; ++h) {
            next = p + step;
            rn = F(next);
            if (rn.norm() < r.norm()) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No descent left: either already at the root to rounding, or stuck.
            if (r.norm() < opt.residual_tol) return p;
            throw NewtonDiverged("residual stopped decreasing at " + std::to_string(r.norm()));
        }
        p = next;
        r = rn;
        if (step.norm() < opt.step_tol && r.norm() < opt.residual_tol) return p;
    }
    throw NewtonDiverged("no convergence in " + std::to_string(opt.max_iterations) + " iterations");
}

}  // namespace

cplx invert_parametrization(const WEData& data, double x, double y, cplx guess, const NewtonOptions& opt) {
    const auto F = [&](const Eigen::Vector2d& p) -> Eigen::Vector2d {
        const Vec3 X = we_point(data, cplx(p[0], p[1]));
        return {X[0] - x, X[1] - y};
    };
    const auto J = [&](const Eigen::Vector2d& p) {
        const CVec3 phi = we_integrand(data, cplx(p[0], p[1]));
        Eigen::Matrix2d A;
        A << phi[0].real(), -phi[0].imag(), phi[1].real(), -phi[1].imag();
        return A;
    };
    const Eigen::Vector2d z = damped_newton(F, J, Eigen::Vector2d(guess.real(), guess.imag()), opt);
    return {z[0], z[1]};
}

// ---------------------------------------------------------------------------
// Timelike minimal surfaces

namespace {

struct TlmsParts {
    Vec3 U, V;    // integrands at (u, v)
    Vec3 dU, dV;  // their derivatives
};

TlmsParts tlms_parts(const TLMSData& d, double u, double v, TlmsVariant variant, bool derivatives) {
    const double f = real_at(d.f, u), q = real_at(d.q, u);
    const double g = real_at(d.g, v), r = real_at(d.r, v);
    TlmsParts p;
    p.U = {0.5 * (1.0 + q * q) * f, -0.5 * (1.0 - q * q) * f, -q * f};
    if (variant == TlmsVariant::null_pair) {
        p.V = {-0.5 * (1.0 + r * r) * g, 0.5 * (1.0 - r * r) * g, r * g};
    } else {
        p.V = {-0.5 * (1.0 - r * r) * g, -0.5 * (1.0 - r * r) * g, r * g};
    }
    if (derivatives) {
        const double df = real_at(d.f.derivative(), u), dq = real_at(d.q.derivative(), u);
        const double dg = real_at(d.g.derivative(), v), dr = real_at(d.r.derivative(), v);
        p.dU = {0.5 * ((1.0 + q * q) * df + 2.0 * q * dq * f), -0.5 * ((1.0 - q * q) * df - 2.0 * q * dq * f),
                -(dq * f + q * df)};
        if (variant == TlmsVariant::null_pair) {
            p.dV = {-0.5 * ((1.0 + r * r) * dg + 2.0 * r * dr * g), 0.5 * ((1.0 - r * r) * dg - 2.0 * r * dr * g),
                    dr * g + r * dg};
        } else {
            const double w = -0.5 * ((1.0 - r * r) * dg - 2.0 * r * dr * g);
            p.dV = {w, w, dr * g + r * dg};
        }
    }
    return p;
}

Vec3 integrate_vec(const std::function<Vec3(double)>& f, double a, double b, const QuadratureOptions& opt) {
    const CVec3 v = integrate_path(
        [&f](cplx t) {
            const Vec3 x = f(t.real());
            return CVec3{x[0], x[1], x[2]};
        },
        cplx(a, 0.0), cplx(b, 0.0), opt);
    return re(v);
}

}  // namespace

Vec3 tlms_point(const TLMSData& data, double u, double v, TlmsVariant variant, const QuadratureOptions& opt) {
    const Vec3 A = integrate_vec([&](double t) { return tlms_parts(data, t, data.v0, variant, false).U; },
                                 data.u0, u, opt);
    const Vec3 B = integrate_vec([&](double t) { return tlms_parts(data, data.u0, t, variant, false).V; },
                                 data.v0, v, opt);
    return A + B;
}

SurfaceJet3 tlms_jet(const TLMSData& data, double u, double v, TlmsVariant variant, const QuadratureOptions& opt) {
    const TlmsParts p = tlms_parts(data, u, v, variant, true);
    SurfaceJet3 j;
    j.X = tlms_point(data, u, v, variant, opt);
    j.X_u = p.U;
    j.X_v = p.V;
    j.X_uu = p.dU;
    j.X_uv = Vec3::Zero();
    j.X_vv = p.dV;
    return j;
}

ParametricSource tlms_source(const TLMSData& data, TlmsVariant variant) {
    ParametricSource s;
    s.name = variant == TlmsVariant::null_pair ? "tlms" : "tlms-literal";
    s.point = [data, variant](double u, double v) { return tlms_point(data, u, v, variant); };
    s.jet = [data, variant](double u, double v) { return tlms_jet(data, u, v, variant); };
    return s;
}

// ---------------------------------------------------------------------------
// Barbishov-Charnikov

namespace {

// Null directions multiplying F'(r) and G'(s).
Vec3 bc_r_dir(double r) { return {0.5 * (1.0 - r * r), -0.5 * (1.0 + r * r), r}; }
Vec3 bc_s_dir(double s) { return {0.5 * (1.0 - s * s), 0.5 * (1.0 + s * s), s}; }

}  // namespace

Vec3 bc_point(const BCData& data, double r, double s, const QuadratureOptions& opt) {
    const AnalyticExpr dF = data.F.derivative();
    const AnalyticExpr dG = data.G.derivative();
    // x_r = F' (1 - r^2)/2 etc.; integrate the directions weighted by F', G'
    // and add back the boundary values F(0), G(0).
    const Vec3 A = integrate_vec([&](double t) -> Vec3 { return real_at(dF, t) * bc_r_dir(t); }, 0.0, r, opt);
    const Vec3 B = integrate_vec([&](double t) -> Vec3 { return real_at(dG, t) * bc_s_dir(t); }, 0.0, s, opt);
    const double F0 = real_at(data.F, 0.0);
    const double G0 = real_at(data.G, 0.0);
    return A + B + Vec3(0.5 * (F0 + G0), 0.5 * (G0 - F0), 0.0);
}

SurfaceJet3 bc_jet(const BCData& data, double r, double s, const QuadratureOptions& opt) {
    const AnalyticExpr dF = data.F.derivative();
    const AnalyticExpr dG = data.G.derivative();
    const double f1 = real_at(dF, r), f2 = real_at(dF.derivative(), r);
    const double g1 = real_at(dG, s), g2 = real_at(dG.derivative(), s);
    SurfaceJet3 j;
    j.X = bc_point(data, r, s, opt);
    j.X_u = f1 * bc_r_dir(r);
    j.X_v = g1 * bc_s_dir(s);
    j.X_uu = f2 * bc_r_dir(r) + f1 * Vec3(-r, -r, 1.0);
    j.X_uv = Vec3::Zero();
    j.X_vv = g2 * bc_s_dir(s) + g1 * Vec3(-s, s, 1.0);
    return j;
}

ParametricSource bc_source(const BCData& data) {
    ParametricSource s;
    s.name = "bc";
    s.point = [data](double r, double t) { return bc_point(data, r, t); };
    s.jet = [data](double r, double t) { return bc_jet(data, r, t); };
    return s;
}

std::pair<double, double> invert_bc(const BCData& data, double x, double y, std::pair<double, double> guess,
                                    const NewtonOptions& opt) {
    const AnalyticExpr dF = data.F.derivative();
    const AnalyticExpr dG = data.G.derivative();
    const auto F = [&](const Eigen::Vector2d& p) -> Eigen::Vector2d {
        const Vec3 X = bc_point(data, p[0], p[1]);
        return {X[0] - x, X[1] - y};
    };
    const auto J = [&](const Eigen::Vector2d& p) {
        const Vec3 a = real_at(dF, p[0]) * bc_r_dir(p[0]);
        const Vec3 b = real_at(dG, p[1]) * bc_s_dir(p[1]);
        Eigen::Matrix2d A;
        A << a[0], b[0], a[1], b[1];
        return A;
    };
    const Eigen::Vector2d p = damped_newton(F, J, Eigen::Vector2d(guess.first, guess.second), opt);
    return {p[0], p[1]};
}

}  // namespace zmc
