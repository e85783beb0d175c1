#include "zmc/foliation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "zmc/errors.hpp"

namespace zmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDelta = 1e-7;
constexpr double kExcludedStandoff = 1e-6;

double sign_of_band(std::int64_t k) { return k % 2 == 0 ? 1.0 : -1.0; }

double excluded_distance(double x, double y) {
    const double dx = x - 2.0 * kPi * static_cast<double>(band_of(x));
    return std::hypot(dx, y);
}

SubCheck make_check(std::string name, double err, double tol) {
    return SubCheck{std::move(name), err, tol, err <= tol};
}

}  // namespace

std::int64_t band_of(double x) { return std::llround(x / (2.0 * kPi)); }

double band_value(std::int64_t k, double x, double y) {
    return sign_of_band(k) * std::atan(y / (x - 2.0 * kPi * static_cast<double>(k)));
}

double leaf_height(double x, double y) {
    const std::int64_t k = band_of(x);
    if (y == 0.0 && std::abs(x - 2.0 * kPi * static_cast<double>(k)) < 1e-12) {
        throw ExcludedPoint("(" + std::to_string(x) + ", 0) lies on an excluded line x = 2 pi k, y = 0");
    }
    return band_value(k, x, y);
}

double leaf_of_point(double x, double y, double z) { return z - leaf_height(x, y); }

Vec3 leaf_point(double x, double y, double t) { return {x, y, leaf_height(x, y) + t}; }

HeightSurface leaf_surface(std::int64_t k, double t) {
    const HeightSurface base = builtin_surface("helicoid");
    const double shift = 2.0 * kPi * static_cast<double>(k);
    const double sgn = sign_of_band(k);
    HeightSurface s;
    s.id = "leaf[k=" + std::to_string(k) + "]";
    s.kind = SurfaceKind::minimal;
    s.real_eval = [=](double x, double y) { return sgn * std::atan(y / (x - shift)) + t; };
    s.complex_eval = [=](cplx x, cplx y) { return sgn * std::atan(y / (x - shift)) + t; };
    s.standoff = [=](cplx x, cplx) { return std::abs(x - shift); };
    s.real_ok = [=](double x, double) { return std::abs(x - shift) <= kPi; };
    s.exact_jet = [=, J = base.exact_jet](double x, double y) {
        const GraphJet j = J(x - shift, y);
        return GraphJet{sgn * j.z + t, sgn * j.z_x, sgn * j.z_y, sgn * j.z_xx, sgn * j.z_xy, sgn * j.z_yy};
    };
    s.exact_jet_complex = [=, J = base.exact_jet_complex](cplx x, cplx y) {
        const ComplexGraphJet j = J(x - shift, y);
        return ComplexGraphJet{sgn * j.z + t, sgn * j.z_x, sgn * j.z_y, sgn * j.z_xx, sgn * j.z_xy, sgn * j.z_yy};
    };
    GridSpec g;
    g.u_min = shift + 0.1;
    g.u_max = shift + kPi - 0.05;
    g.v_min = -3.0;
    g.v_max = 3.0;
    g.nu = 41;
    g.nv = 41;
    s.default_grid = g;
    return s;
}

VerificationReport foliation_check(const GridSpec& grid, std::span<const double> t_samples, std::uint64_t seed,
                                   int random_points) {
    if (grid.nu < 1 || grid.nv < 1) throw EmptyGrid("foliation check: grid has no points");
    grid.validate();

    std::vector<DomainViolation::Point> bad;
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) {
            if (excluded_distance(grid.u(i), grid.v(j)) < kExcludedStandoff) bad.emplace_back(grid.u(i), grid.v(j));
        }
    }
    if (!bad.empty()) throw DomainViolation("foliation check: grid meets an excluded line", std::move(bad));

    // Band boundaries x = (2k+1) pi inside the x-range, else the nearest one.
    std::vector<std::int64_t> ks;
    const auto k_lo = static_cast<std::int64_t>(std::ceil((grid.u_min / kPi - 1.0) / 2.0));
    const auto k_hi = static_cast<std::int64_t>(std::floor((grid.u_max / kPi - 1.0) / 2.0));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) ks.push_back(k);
    if (ks.empty()) ks.push_back(std::llround((0.5 * (grid.u_min + grid.u_max) / kPi - 1.0) / 2.0));

    ErrorAccumulator jump;
    double formula_gap = 0.0;
    double reduced_gap = 0.0;
    for (const std::int64_t k : ks) {
        const double xb = (2.0 * static_cast<double>(k) + 1.0) * kPi;
        for (int j = 0; j < grid.nv; ++j) {
            const double y = grid.v(j);
            if (y == 0.0) continue;  // both sides are exactly 0
            const double left = band_value(k, xb - kDelta, y);
            const double right = band_value(k + 1, xb + kDelta, y);
            jump.add(std::abs(left - right), {xb, y}, left, right);
            formula_gap = std::max(formula_gap, std::abs(band_value(k, xb, y) - band_value(k + 1, xb, y)));
            const double a = sign_of_band(k) * std::atan(y / kPi);
            const double b = sign_of_band(k + 1) * std::atan(-y / kPi);
            reduced_gap = std::max(reduced_gap, std::abs(a - b));
        }
    }

    // Leaf round trips at grid points and seeded random points.
    double trip = 0.0;
    double single = 0.0;
    const auto visit = [&](double x, double y) {
        if (excluded_distance(x, y) < kExcludedStandoff) return;
        const double F = leaf_height(x, y);
        single = std::max(single, std::abs(F - leaf_height(x, y)));
        for (const double t : t_samples) {
            const Vec3 p = leaf_point(x, y, t);
            trip = std::max(trip, std::abs(leaf_of_point(p[0], p[1], p[2]) - t));
        }
    };
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) visit(grid.u(i), grid.v(j));
    }
    std::mt19937_64 rng(seed);
    const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int n = 0; n < random_points; ++n) {
        const double x = grid.u_min + (grid.u_max - grid.u_min) * unit();
        const double y = grid.v_min + (grid.v_max - grid.v_min) * unit();
        visit(x, y);
    }

    VerificationReport report;
    report.subject = "foliation";
    report.grid = grid;
    report.policy = "principal";
    report.tolerance = 1e-6;
    report.parameters["t_samples"] = std::vector<double>(t_samples.begin(), t_samples.end());
    report.parameters["delta"] = kDelta;
    report.parameters["boundaries"] = static_cast<std::int64_t>(ks.size());
    report.parameters["seed"] = static_cast<std::int64_t>(seed);
    jump.fill(report);
    report.checks.push_back(make_check("boundary-formulas-reduced", reduced_gap, 0.0));
    report.checks.push_back(make_check("boundary-formulas", formula_gap, 1e-12));
    report.checks.push_back(make_check("leaf-round-trip", trip, 1e-12));
    report.checks.push_back(make_check("single-valued", single, 0.0));
    report.finalize();
    return report;
}

}  // namespace zmc
