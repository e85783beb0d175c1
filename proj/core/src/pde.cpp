#include "zmc/pde.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Dense>

#include "zmc/errors.hpp"
#include "zmc/parallel.hpp"

namespace zmc {

namespace {

// Weights of the 5-point first-derivative stencil at offsets -2..2, over 12h.
constexpr std::array<double, 5> kD1{1.0, -8.0, 0.0, 8.0, -1.0};
// Second-derivative stencil, over 12h^2.
constexpr std::array<double, 5> kD2{-1.0, 16.0, -30.0, 16.0, -1.0};

template <typename F>
auto stencil(const std::array<double, 5>& w, F&& f) {
    using R = std::decay_t<decltype(f(0))>;
    R s = w[0] * f(-2);
    for (int k = 1; k < 5; ++k) s += w[static_cast<std::size_t>(k)] * f(k - 2);
    return s;
}

VerificationReport sweep_rows(const GridSpec& grid, const std::function<double(double, double)>& residual) {
    std::vector<ErrorAccumulator> rows(static_cast<std::size_t>(grid.nv));
    parallel_rows(grid.nv, [&](int j) {
        auto& acc = rows[static_cast<std::size_t>(j)];
        const double v = grid.v(j);
        for (int i = 0; i < grid.nu; ++i) {
            const double u = grid.u(i);
            const double r = residual(u, v);
            acc.add(std::abs(r), {u, v}, r, 0.0);
        }
    });
    ErrorAccumulator total;
    for (const auto& r : rows) total.merge(r);
    VerificationReport report;
    report.grid = grid;
    total.fill(report);
    return report;
}

}  // namespace

std::string_view to_string(GraphEquation eq) {
    switch (eq) {
        case GraphEquation::minimal: return "minimal";
        case GraphEquation::maximal: return "maximal";
        case GraphEquation::bi_soliton: return "bi-soliton";
    }
    return "minimal";
}

GraphEquation parse_graph_equation(std::string_view name) {
    if (name == "minimal") return GraphEquation::minimal;
    if (name == "maximal") return GraphEquation::maximal;
    if (name == "bi" || name == "bi-soliton") return GraphEquation::bi_soliton;
    throw std::invalid_argument("unknown equation '" + std::string(name) + "'");
}

GraphJet graph_jet(const HeightSurface& surface, double x, double y, JetMethod method, double h, double margin) {
    if (method == JetMethod::exact) {
        if (!surface.exact_jet) throw ExactUnavailable("surface '" + surface.id + "' has no exact jet");
        if (!surface.in_domain(x, y, margin)) {
            throw DomainViolation("graph jet of '" + surface.id + "' outside its domain", {{x, y}});
        }
        return surface.exact_jet(x, y);
    }

    std::vector<DomainViolation::Point> bad;
    for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
            if (!surface.in_domain(x + a * h, y + b * h, margin)) bad.emplace_back(x + a * h, y + b * h);
        }
    }
    if (!bad.empty()) {
        throw DomainViolation("finite-difference stencil of '" + surface.id + "' leaves its domain", std::move(bad));
    }
    const auto& Z = surface.real_eval;
    GraphJet j;
    j.z = Z(x, y);
    j.z_x = stencil(kD1, [&](int a) { return Z(x + a * h, y); }) / (12.0 * h);
    j.z_y = stencil(kD1, [&](int b) { return Z(x, y + b * h); }) / (12.0 * h);
    j.z_xx = stencil(kD2, [&](int a) { return Z(x + a * h, y); }) / (12.0 * h * h);
    j.z_yy = stencil(kD2, [&](int b) { return Z(x, y + b * h); }) / (12.0 * h * h);
    j.z_xy = stencil(kD1, [&](int a) {
                 return stencil(kD1, [&](int b) { return Z(x + a * h, y + b * h); });
             }) / (144.0 * h * h);
    return j;
}

VerificationReport residual_sweep(const HeightSurface& surface, GraphEquation eq, const GridSpec& grid,
                                  JetMethod method, double tolerance) {
    if (grid.nu < 1 || grid.nv < 1) throw EmptyGrid("residual sweep: grid has no points");
    grid.validate();
    std::vector<DomainViolation::Point> bad;
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) {
            if (!surface.in_domain(grid.u(i), grid.v(j), grid.margin)) bad.emplace_back(grid.u(i), grid.v(j));
        }
    }
    if (!bad.empty()) {
        throw DomainViolation("residual sweep of '" + surface.id + "': grid leaves the domain", std::move(bad));
    }
    VerificationReport report = sweep_rows(grid, [&](double x, double y) {
        return graph_residual(eq, graph_jet(surface, x, y, method, 1e-4, 0.0));
    });
    report.subject = surface.id;
    report.parameters["equation"] = std::string(to_string(eq));
    report.parameters["method"] = std::string(method == JetMethod::exact ? "exact" : "central-diff");
    report.policy = "principal";
    report.tolerance = tolerance;
    report.finalize();
    return report;
}

// ---------------------------------------------------------------------------

std::string SignatureMetric::name() const {
    if (signs == euclid().signs) return "euclid";
    if (signs == l3().signs) return "l3";
    if (signs == l3p().signs) return "l3p";
    if (signs == l3x().signs) return "l3x";
    std::string s = "diag(";
    for (std::size_t k = 0; k < 3; ++k) s += (k ? "," : "") + std::to_string(signs[k]);
    return s + ")";
}

SignatureMetric parse_metric(std::string_view name) {
    if (name == "euclid") return SignatureMetric::euclid();
    if (name == "l3") return SignatureMetric::l3();
    if (name == "l3p") return SignatureMetric::l3p();
    if (name == "l3x") return SignatureMetric::l3x();
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

SurfaceJet3 finite_difference_jet(const ParametricSampler& X, double u, double v, double h) {
    SurfaceJet3 j;
    j.X = X(u, v);
    j.X_u = stencil(kD1, [&](int a) -> Vec3 { return X(u + a * h, v); }) / (12.0 * h);
    j.X_v = stencil(kD1, [&](int b) -> Vec3 { return X(u, v + b * h); }) / (12.0 * h);
    j.X_uu = stencil(kD2, [&](int a) -> Vec3 { return X(u + a * h, v); }) / (12.0 * h * h);
    j.X_vv = stencil(kD2, [&](int b) -> Vec3 { return X(u, v + b * h); }) / (12.0 * h * h);
    j.X_uv = stencil(kD1, [&](int a) -> Vec3 {
                 return stencil(kD1, [&](int b) -> Vec3 { return X(u + a * h, v + b * h); });
             }) / (144.0 * h * h);
    return j;
}

double parametric_zmc_numerator(const SurfaceJet3& j, const SignatureMetric& metric) {
    const double E = metric.dot(j.X_u, j.X_u);
    const double F = metric.dot(j.X_u, j.X_v);
    const double G = metric.dot(j.X_v, j.X_v);
    const double scale = std::abs(E) + std::abs(F) + std::abs(G);
    if (!(std::abs(E * G - F * F) >= 1e-12 * scale * scale)) {
        throw DegenerateMetric("first fundamental form is degenerate");
    }
    Vec3 N = j.X_u.cross(j.X_v);
    for (int k = 0; k < 3; ++k) N[k] *= metric.signs[static_cast<std::size_t>(k)];
    const double num = E * metric.dot(j.X_vv, N) - 2.0 * F * metric.dot(j.X_uv, N) + G * metric.dot(j.X_uu, N);
    return num / (scale * N.norm());
}

double parametric_zmc_numerator(const ParametricSampler& X, const SignatureMetric& metric, double u, double v,
                                double h) {
    return parametric_zmc_numerator(finite_difference_jet(X, u, v, h), metric);
}

VerificationReport parametric_sweep(const ParametricSource& source, const SignatureMetric& metric,
                                    const GridSpec& grid, double h, double tolerance) {
    if (grid.nu < 1 || grid.nv < 1) throw EmptyGrid("parametric sweep: grid has no points");
    grid.validate();
    VerificationReport report = sweep_rows(grid, [&](double u, double v) {
        const SurfaceJet3 j = source.jet ? source.jet(u, v) : finite_difference_jet(source.point, u, v, h);
        return parametric_zmc_numerator(j, metric);
    });
    report.subject = source.name;
    report.parameters["metric"] = metric.name();
    report.parameters["derivatives"] = std::string(source.jet ? "exact" : "central-diff");
    report.policy = "principal";
    report.tolerance = tolerance;
    report.finalize();
    return report;
}

GraphJet graph_jet_from_parametric(const SurfaceJet3& p) {
    Eigen::Matrix2d J;
    J << p.X_u[0], p.X_v[0], p.X_u[1], p.X_v[1];
    const double det = J.determinant();
    if (!(std::abs(det) > 1e-14 * (J.squaredNorm() + 1e-300))) {
        throw DegenerateMetric("parametrization is not a local graph over (x, y)");
    }
    const Eigen::Matrix2d Ji = J.inverse();
    const Eigen::RowVector2d dz(p.X_u[2], p.X_v[2]);
    const Eigen::RowVector2d grad = dz * Ji;

    const auto hess = [&](int k) {
        Eigen::Matrix2d H;
        H << p.X_uu[k], p.X_uv[k], p.X_uv[k], p.X_vv[k];
        return H;
    };
    const Eigen::Matrix2d Hz = Ji.transpose() * (hess(2) - grad[0] * hess(0) - grad[1] * hess(1)) * Ji;
    return GraphJet{p.X[2], grad[0], grad[1], Hz(0, 0), 0.5 * (Hz(0, 1) + Hz(1, 0)), Hz(1, 1)};
}

ParametricSource graph_lift(const HeightSurface& surface) {
    ParametricSource s;
    s.name = surface.id + "[lift]";
    s.point = [Z = surface.real_eval](double x, double y) { return Vec3(x, y, Z(x, y)); };
    if (surface.exact_jet) {
        s.jet = [J = surface.exact_jet](double x, double y) {
            const GraphJet g = J(x, y);
            return SurfaceJet3{Vec3(x, y, g.z),         Vec3(1.0, 0.0, g.z_x),   Vec3(0.0, 1.0, g.z_y),
                               Vec3(0.0, 0.0, g.z_xx), Vec3(0.0, 0.0, g.z_xy), Vec3(0.0, 0.0, g.z_yy)};
        };
    }
    return s;
}

}  // namespace zmc
