#include "zmc/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "zmc/errors.hpp"
#include "zmc/expr.hpp"

namespace zmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double param_or(const SurfaceParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridSpec grid(double u0, double u1, double v0, double v1) {
    GridSpec g;
    g.u_min = u0;
    g.u_max = u1;
    g.v_min = v0;
    g.v_max = v1;
    g.nu = 41;
    g.nv = 41;
    return g;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Attach exact jets computed by symbolic differentiation of `e`.
void attach_symbolic_jets(HeightSurface& s, const BivariateExpr& e) {
    const BivariateExpr ex = e.partial(0);
    const BivariateExpr ey = e.partial(1);
    const BivariateExpr exx = ex.partial(0);
    const BivariateExpr exy = ex.partial(1);
    const BivariateExpr eyy = ey.partial(1);
    s.exact_jet_complex = [=](cplx x, cplx y) {
        return ComplexGraphJet{e(x, y), ex(x, y), ey(x, y), exx(x, y), exy(x, y), eyy(x, y)};
    };
    s.exact_jet = [=](double x, double y) {
        const cplx cx(x, 0.0);
        const cplx cy(y, 0.0);
        return GraphJet{e(cx, cy).real(),   ex(cx, cy).real(),  ey(cx, cy).real(),
                        exx(cx, cy).real(), exy(cx, cy).real(), eyy(cx, cy).real()};
    };
}

// Hand-coded jets, generic over double and complex.

template <typename T>
BasicGraphJet<T> scherk2_jet(T x, T y) {
    using std::cos;
    using std::log;
    using std::tan;
    const T tx = tan(x);
    const T ty = tan(y);
    const T one(1.0);
    return {log(cos(y) / cos(x)), tx, -ty, one + tx * tx, T(0.0), -(one + ty * ty)};
}

template <typename T>
BasicGraphJet<T> scherk2max_jet(T x, T y) {
    using std::cosh;
    using std::log;
    using std::tanh;
    const T tx = tanh(x);
    const T ty = tanh(y);
    const T one(1.0);
    return {log(cosh(y) / cosh(x)), -tx, ty, -(one - tx * tx), T(0.0), one - ty * ty};
}

template <typename T>
BasicGraphJet<T> scherk_bi_jet(T x, T y) {
    using std::cos;
    using std::cosh;
    using std::log;
    using std::tan;
    using std::tanh;
    const T tx = tan(x);
    const T ty = tanh(y);
    const T one(1.0);
    return {log(cosh(y) / cos(x)), tx, ty, one + tx * tx, T(0.0), one - ty * ty};
}

template <typename T>
BasicGraphJet<T> helicoid_jet(T x, T y) {
    using std::atan;
    const T r2 = x * x + y * y;
    const T r4 = r2 * r2;
    return {atan(y / x), -y / r2, x / r2, T(2.0) * x * y / r4, (y * y - x * x) / r4, T(-2.0) * x * y / r4};
}

HeightSurface make_scherk2() {
    HeightSurface s;
    s.id = "scherk2";
    s.kind = SurfaceKind::minimal;
    s.real_eval = [](double x, double y) { return std::log(std::cos(y) / std::cos(x)); };
    s.complex_eval = [](cplx x, cplx y) { return std::log(std::cos(y) / std::cos(x)); };
    s.standoff = [](cplx x, cplx y) { return std::min(std::abs(std::cos(x)), std::abs(std::cos(y))); };
    s.real_ok = [](double x, double y) { return std::cos(x) * std::cos(y) > 0.0; };
    s.exact_jet = [](double x, double y) { return scherk2_jet(x, y); };
    s.exact_jet_complex = [](cplx x, cplx y) { return scherk2_jet(x, y); };
    s.default_grid = grid(-1.0, 1.0, -1.0, 1.0);
    return s;
}

HeightSurface make_scherk2max() {
    HeightSurface s;
    s.id = "scherk2max";
    s.kind = SurfaceKind::maximal;
    s.real_eval = [](double x, double y) { return std::log(std::cosh(y) / std::cosh(x)); };
    s.complex_eval = [](cplx x, cplx y) { return std::log(std::cosh(y) / std::cosh(x)); };
    s.standoff = [](cplx x, cplx y) { return std::min(std::abs(std::cosh(x)), std::abs(std::cosh(y))); };
    s.real_ok = [](double, double) { return true; };
    s.exact_jet = [](double x, double y) { return scherk2max_jet(x, y); };
    s.exact_jet_complex = [](cplx x, cplx y) { return scherk2max_jet(x, y); };
    s.default_grid = grid(-2.0, 2.0, -2.0, 2.0);
    return s;
}

HeightSurface make_scherk_bi() {
    HeightSurface s;
    s.id = "scherkBI";
    s.kind = SurfaceKind::bi_soliton;
    s.real_eval = [](double x, double y) { return std::log(std::cosh(y) / std::cos(x)); };
    s.complex_eval = [](cplx x, cplx y) { return std::log(std::cosh(y) / std::cos(x)); };
    s.standoff = [](cplx x, cplx y) { return std::min(std::abs(std::cos(x)), std::abs(std::cosh(y))); };
    s.real_ok = [](double x, double) { return std::cos(x) > 0.0; };
    s.exact_jet = [](double x, double y) { return scherk_bi_jet(x, y); };
    s.exact_jet_complex = [](cplx x, cplx y) { return scherk_bi_jet(x, y); };
    s.default_grid = grid(-1.0, 1.0, -2.0, 2.0);
    return s;
}

HeightSurface make_helicoid() {
    HeightSurface s;
    s.id = "helicoid";
    s.kind = SurfaceKind::minimal;
    s.real_eval = [](double x, double y) { return std::atan(y / x); };
    s.complex_eval = [](cplx x, cplx y) { return std::atan(y / x); };
    s.standoff = [](cplx x, cplx) { return std::abs(x); };
    s.real_ok = [](double, double) { return true; };
    s.exact_jet = [](double x, double y) { return helicoid_jet(x, y); };
    s.exact_jet_complex = [](cplx x, cplx y) { return helicoid_jet(x, y); };
    s.default_grid = grid(0.5, 2.0, -2.0, 2.0);
    return s;
}

HeightSurface make_plane(double a, double b) {
    HeightSurface s;
    s.id = "plane";
    s.kind = SurfaceKind::minimal;
    s.real_eval = [a, b](double x, double y) { return a * x + b * y; };
    s.complex_eval = [a, b](cplx x, cplx y) { return a * x + b * y; };
    s.standoff = [](cplx, cplx) { return kInf; };
    s.real_ok = [](double, double) { return true; };
    s.exact_jet = [a, b](double x, double y) { return GraphJet{a * x + b * y, a, b, 0.0, 0.0, 0.0}; };
    s.exact_jet_complex = [a, b](cplx x, cplx y) {
        return ComplexGraphJet{a * x + b * y, a, b, 0.0, 0.0, 0.0};
    };
    s.default_grid = grid(-1.0, 1.0, -1.0, 1.0);
    return s;
}

// h[x, y; alpha] = -sec(alpha/2) atan(tanh(x sin(alpha) / 2) cot(y sin(alpha/2))).
HeightSurface make_scherk1(double alpha) {
    const double half = alpha / 2.0;
    if (std::cos(half) == 0.0 || std::sin(half) == 0.0) {
        throw ParamDomainError("scherk1: alpha must satisfy sin(alpha/2) != 0 and cos(alpha/2) != 0");
    }
    const double pre = -1.0 / std::cos(half);
    const double kx = std::sin(alpha) / 2.0;
    const double ky = std::sin(half);
    const BivariateExpr e = BivariateExpr::parse("(" + num(pre) + ") * atan(tanh((" + num(kx) + ") * x) * cos((" +
                                                 num(ky) + ") * y) / sin((" + num(ky) + ") * y))");
    HeightSurface s;
    s.id = "scherk1";
    s.kind = SurfaceKind::minimal;
    s.real_eval = [=](double x, double y) {
        return pre * std::atan(std::tanh(kx * x) * std::cos(ky * y) / std::sin(ky * y));
    };
    s.complex_eval = [=](cplx x, cplx y) {
        return pre * std::atan(std::tanh(kx * x) * std::cos(ky * y) / std::sin(ky * y));
    };
    s.standoff = [=](cplx, cplx y) { return std::abs(std::sin(ky * y)); };
    s.real_ok = [](double, double) { return true; };
    attach_symbolic_jets(s, e);
    const double y0 = 0.2 / std::abs(ky);
    const double y1 = (kPi - 0.2) / std::abs(ky);
    s.default_grid = grid(-1.0, 1.0, y0, y1);
    return s;
}

// atan(tanh(y) cot(x)): left side of the arctan Euler-Ramanujan identity.
HeightSurface make_er_arctan() {
    const BivariateExpr e = BivariateExpr::parse("atan(tanh(y) * cos(x) / sin(x))");
    HeightSurface s;
    s.id = "er-arctan";
    s.kind = SurfaceKind::generic;
    s.real_eval = [](double x, double y) { return std::atan(std::tanh(y) * std::cos(x) / std::sin(x)); };
    s.complex_eval = [](cplx x, cplx y) { return std::atan(std::tanh(y) * std::cos(x) / std::sin(x)); };
    s.standoff = [](cplx x, cplx) { return std::abs(std::sin(x)); };
    s.real_ok = [](double, double) { return true; };
    attach_symbolic_jets(s, e);
    s.default_grid = grid(0.2, 2.9, -2.0, 2.0);
    return s;
}

HeightSurface make_expr_surface(std::string_view text) {
    const BivariateExpr e = BivariateExpr::parse(text);
    HeightSurface s;
    s.id = "expr:" + std::string(text);
    s.kind = SurfaceKind::generic;
    s.complex_eval = [e](cplx x, cplx y) { return e(x, y); };
    s.real_eval = [e](double x, double y) { return e(cplx(x, 0.0), cplx(y, 0.0)).real(); };
    s.standoff = [e](cplx x, cplx y) {
        try {
            return finite(e(x, y)) ? kInf : 0.0;
        } catch (const EvalDomainError&) {
            return 0.0;
        }
    };
    s.real_ok = [e](double x, double y) {
        try {
            return std::abs(e(cplx(x, 0.0), cplx(y, 0.0)).imag()) == 0.0;
        } catch (const EvalDomainError&) {
            return false;
        }
    };
    attach_symbolic_jets(s, e);
    s.default_grid = grid(-1.0, 1.0, -1.0, 1.0);
    return s;
}

}  // namespace

std::string_view to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::minimal: return "minimal";
        case SurfaceKind::maximal: return "maximal";
        case SurfaceKind::bi_soliton: return "bi-soliton";
        case SurfaceKind::timelike: return "timelike";
        case SurfaceKind::generic: return "generic";
    }
    return "generic";
}

bool HeightSurface::in_domain(double x, double y, double margin) const {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    if (!(standoff(cplx(x, 0.0), cplx(y, 0.0)) > margin)) return false;
    return !real_ok || real_ok(x, y);
}

HeightSurface builtin_surface(std::string_view id, const SurfaceParams& params) {
    if (id.starts_with("expr:")) return make_expr_surface(id.substr(5));
    if (id == "scherk2") return make_scherk2();
    if (id == "scherk2max") return make_scherk2max();
    if (id == "scherkBI") return make_scherk_bi();
    if (id == "helicoid") return make_helicoid();
    if (id == "er-arctan") return make_er_arctan();
    if (id == "scherk1") return make_scherk1(param_or(params, "alpha", kPi / 2.0));
    if (id == "plane") return make_plane(param_or(params, "a", 0.0), param_or(params, "b", 0.0));
    throw UnknownSurface("unknown surface '" + std::string(id) + "'");
}

std::vector<std::string> builtin_surface_ids() {
    return {"scherk2", "scherk1", "helicoid", "er-arctan", "scherk2max", "scherkBI", "plane"};
}

HeightSurface scaled_component(const HeightSurface& base, double a, double b, double c, double d, double alpha) {
    if (a == 0.0) throw ParamDomainError("scaled component: a must be nonzero");
    if (c == 0.0) throw ParamDomainError("scaled component: c must be nonzero");
    HeightSurface s;
    s.id = base.id + "[scaled]";
    s.kind = base.kind;
    const double k = alpha / c;
    const auto inner = [a, b, d](auto x, auto y) { return std::pair{(x - b) / a, (y - d) / a}; };
    s.real_eval = [=, f = base.real_eval](double x, double y) {
        const auto [u, v] = inner(x, y);
        return k * f(u, v);
    };
    s.complex_eval = [=, f = base.complex_eval](cplx x, cplx y) {
        const auto [u, v] = inner(x, y);
        return k * f(u, v);
    };
    s.standoff = [=, f = base.standoff](cplx x, cplx y) {
        const auto [u, v] = inner(x, y);
        return f(u, v);
    };
    s.real_ok = [=, f = base.real_ok](double x, double y) {
        const auto [u, v] = inner(x, y);
        return !f || f(u, v);
    };
    if (base.exact_jet) {
        s.exact_jet = [=, f = base.exact_jet](double x, double y) {
            const auto [u, v] = inner(x, y);
            const GraphJet j = f(u, v);
            const double k1 = k / a;
            const double k2 = k / (a * a);
            return GraphJet{k * j.z, k1 * j.z_x, k1 * j.z_y, k2 * j.z_xx, k2 * j.z_xy, k2 * j.z_yy};
        };
    }
    if (base.exact_jet_complex) {
        s.exact_jet_complex = [=, f = base.exact_jet_complex](cplx x, cplx y) {
            const auto [u, v] = inner(x, y);
            const ComplexGraphJet j = f(u, v);
            const double k1 = k / a;
            const double k2 = k / (a * a);
            return ComplexGraphJet{k * j.z, k1 * j.z_x, k1 * j.z_y, k2 * j.z_xx, k2 * j.z_xy, k2 * j.z_yy};
        };
    }
    GridSpec g = base.default_grid;
    const double u0 = a * g.u_min + b;
    const double u1 = a * g.u_max + b;
    const double v0 = a * g.v_min + d;
    const double v1 = a * g.v_max + d;
    g.u_min = std::min(u0, u1);
    g.u_max = std::max(u0, u1);
    g.v_min = std::min(v0, v1);
    g.v_max = std::max(v0, v1);
    s.default_grid = g;
    return s;
}

double homothety_alpha(double a, double c) { return a * c; }

}  // namespace zmc
