#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "zmc/catalog.hpp"
#include "zmc/errors.hpp"
#include "zmc/pde.hpp"

using namespace zmc;
using zmc::test::make_grid;
using zmc::test::Rng;
using std::numbers::pi;

namespace {

const std::vector<double>& list(const IdentityInstance& inst, const std::string& key) {
    return std::get<std::vector<double>>(inst.record.at(key));
}

double scalar(const IdentityInstance& inst, const std::string& key) {
    return std::get<double>(inst.record.at(key));
}

GraphEquation equation_for(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::maximal: return GraphEquation::maximal;
        case SurfaceKind::bi_soliton: return GraphEquation::bi_soliton;
        default: return GraphEquation::minimal;
    }
}

}  // namespace

TEST_CASE("builtin surface values") {
    const auto s2 = builtin_surface("scherk2");
    CHECK(s2(0.0, 0.0) == 0.0);
    CHECK(s2(pi / 4.0, 0.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(s2(pi / 4.0, 0.0) == doctest::Approx(0.346573590279972).epsilon(1e-13));

    const auto s1 = builtin_surface("scherk1", {{"alpha", pi / 2.0}});
    for (double y : {-0.7, 0.2, 1.1}) CHECK(s1(0.0, y) == 0.0);

    const auto bi = builtin_surface("scherkBI");
    CHECK(bi(0.0, 1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-15));
    CHECK(bi(0.0, 1.0) == doctest::Approx(0.433780830483027).epsilon(1e-13));

    const auto plane = builtin_surface("plane", {{"a", 2.0}, {"b", -1.0}});
    CHECK(plane(0.5, 3.0) == doctest::Approx(-2.0));
}

TEST_CASE("kind tags") {
    CHECK(builtin_surface("scherk2").kind == SurfaceKind::minimal);
    CHECK(builtin_surface("scherk2max").kind == SurfaceKind::maximal);
    CHECK(builtin_surface("scherkBI").kind == SurfaceKind::bi_soliton);
    CHECK(builtin_surface("helicoid").kind == SurfaceKind::minimal);
    CHECK_THROWS_AS(builtin_surface("catenoid"), UnknownSurface);
    CHECK_THROWS_AS(builtin_surface("scherk1", {{"alpha", 0.0}}), ParamDomainError);
}

TEST_CASE("every tagged surface satisfies its equation on its default grid") {
    for (const auto& id : builtin_surface_ids()) {
        const auto s = builtin_surface(id);
        if (s.kind == SurfaceKind::generic || s.kind == SurfaceKind::timelike) continue;
        GridSpec g = s.default_grid;
        g.nu = g.nv = 41;
        const auto r = residual_sweep(s, equation_for(s.kind), g);
        CHECK_MESSAGE(r.pass, id << " max " << r.max_abs_err);
        CHECK(r.max_abs_err < 1e-10);
    }
}

TEST_CASE("expression surfaces") {
    const auto s = builtin_surface("expr:x*x + y*y");
    CHECK(s(1.0, 2.0) == doctest::Approx(5.0));
    CHECK(s.kind == SurfaceKind::generic);
    CHECK_THROWS_AS(builtin_surface("expr:x +"), SyntaxError);
}

TEST_CASE("scherk2 shifts") {
    const auto c2 = scherk_shifts(2);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0] == doctest::Approx(-pi / 4.0).epsilon(1e-16));
    CHECK(c2[1] == doctest::Approx(pi / 4.0).epsilon(1e-16));

    const auto inst = identity_terms("scherk2-decomp", 2);
    CHECK(list(inst, "c") == c2);
    CHECK(inst.rhs_terms.size() == 2);
}

TEST_CASE("property: shift antisymmetry is exact up to n = 64") {
    for (int n = 1; n <= 64; ++n) {
        const auto c = scherk_shifts(n);
        REQUIRE(c.size() == static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) {
            CHECK(c[static_cast<std::size_t>(n - 1 - m)] == -c[static_cast<std::size_t>(m)]);
        }
    }
}

TEST_CASE("single-term identities are tautologies") {
    const auto g = make_grid(-0.9, 0.9, 11, -0.9, 0.9, 11);
    const auto s = verify_identity(identity_terms("scherk2-decomp", 1), g);
    CHECK(s.max_abs_err == 0.0);
    CHECK(list(identity_terms("scherk2-decomp", 1), "c") == std::vector<double>{0.0});

    IdentityParams kp;
    kp.beta = pi / 5.0;
    const auto k = identity_terms("kamien-decomp", 1, kp);
    CHECK(scalar(k, "prefactor") == 1.0);
    CHECK(scalar(k, "beta_tilde") == kp.beta.value());
    const auto kr = verify_identity(k, make_grid(-1.0, 1.0, 9, 0.4, 2.5, 9));
    CHECK(kr.max_abs_err == 0.0);

    const auto h = verify_identity(identity_terms("helicoid-decomp", 1), make_grid(0.2, 2.9, 9, -2.0, 2.0, 9));
    CHECK(h.max_abs_err == 0.0);
}

TEST_CASE("kamien beta relation") {
    for (int n : {2, 3, 5}) {
        for (double beta : {pi / 6.0, pi / 3.0, -0.4}) {
            IdentityParams p;
            p.beta = beta;
            const auto inst = identity_terms("kamien-decomp", n, p);
            CHECK(std::sin(beta) == doctest::Approx(n * std::sin(scalar(inst, "beta_tilde"))).epsilon(1e-15));
        }
    }
    CHECK_THROWS_AS(identity_terms("kamien-decomp", 2), ParamDomainError);
}

TEST_CASE("general-scaled equal split") {
    IdentityParams p;
    p.a = {1.0, 1.0};
    p.b = {0.0, 0.0};
    p.c = {2.0, 2.0};
    p.d = {0.0, 0.0};
    const auto inst = identity_terms("general-scaled", 2, p);
    CHECK(scalar(inst, "C_n") == 1.0);
    const cplx x(0.3), y(-0.2);
    const cplx z = inst.lhs_value(x, y);
    for (const auto& t : inst.rhs_terms) CHECK(std::abs(t.eval(x, y) - z / 2.0) < 1e-16);
}

TEST_CASE("property: general-scaled components reproduce Z") {
    Rng rng(0x5eed0101);
    const auto Z = builtin_surface("scherk2");
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + rng.below(3);
        IdentityParams p;
        for (int m = 0; m < n; ++m) {
            const double mag = rng.uniform(0.5, 2.5);
            p.a.push_back(rng.below(2) ? mag : -mag);
            p.b.push_back(rng.uniform(-1.0, 1.0));
            p.c.push_back(rng.uniform(1.0, 4.0) * (rng.below(4) ? 1.0 : -1.0));
            p.d.push_back(rng.uniform(-1.0, 1.0));
        }
        double Cn = 0.0;
        for (double c : p.c) Cn += 1.0 / c;
        if (std::abs(Cn) < 0.1) continue;
        const auto inst = identity_terms("general-scaled", n, p);
        for (int k = 0; k < 20; ++k) {
            const double x = rng.uniform(-1.0, 1.0);
            const double y = rng.uniform(-1.0, 1.0);
            const double z = Z(x, y);
            // Z_m(a x + b, a y + d) = Z(x, y) / c_m, term by term.
            for (int m = 0; m < n; ++m) {
                const auto mm = static_cast<std::size_t>(m);
                const HeightSurface comp = scaled_component(Z, p.a[mm], p.b[mm], p.c[mm], p.d[mm], 1.0);
                const double zm = comp(p.a[mm] * x + p.b[mm], p.a[mm] * y + p.d[mm]);
                CHECK(std::abs(zm - z / p.c[mm]) <= 1e-13 * (1.0 + std::abs(z / p.c[mm])));
            }
            CHECK(std::abs(inst.rhs_sum(x, y) - z) <= 1e-12 * (1.0 + std::abs(z)));
        }
    }
}

TEST_CASE("homothety components stay zero mean curvature") {
    for (const char* id : {"scherk2", "scherk2max", "scherkBI"}) {
        const auto base = builtin_surface(id);
        for (double a : {2.0, -0.5, 1.5}) {
            const double b = 0.3, c = 3.0, d = -0.2;
            const auto comp = scaled_component(base, a, b, c, d, homothety_alpha(a, c));
            GridSpec g = comp.default_grid;
            g.nu = g.nv = 21;
            const auto r = residual_sweep(comp, equation_for(base.kind), g, JetMethod::exact, 1e-6);
            CHECK_MESSAGE(r.pass, id << " a=" << a << " err " << r.max_abs_err);
        }
    }
}

TEST_CASE("negative control: alpha = c / a is not a homothety for |a| != 1") {
    const auto base = builtin_surface("scherk2");
    const double a = 2.0, c = 3.0;
    const auto comp = scaled_component(base, a, 0.0, c, 0.0, c / a);
    GridSpec g = comp.default_grid;
    g.nu = g.nv = 21;
    const auto r = residual_sweep(comp, GraphEquation::minimal, g, JetMethod::exact, 1e-6);
    CHECK_FALSE(r.pass);
    CHECK(r.max_abs_err > 1e-3);
}

TEST_CASE("scherk2 decomposition on the reference grid") {
    const auto g = make_grid(-1.0, 1.0, 41, -1.0, 1.0, 41);
    for (int n : {2, 3, 4, 5}) {
        const auto inst = identity_terms("scherk2-decomp", n);
        const auto mult = verify_identity(inst, g, BranchPolicy::multiplicative);
        CHECK(mult.pass);
        CHECK(mult.max_abs_err < 1e-9);
        const double half = pi / (2.0 * n) - 1e-9;
        const auto safe = make_grid(-half, half, 41, -half, half, 41);
        const auto prin = verify_identity(inst, safe, BranchPolicy::principal);
        CHECK(prin.max_abs_err < 1e-9);
    }
}

TEST_CASE("property: multiplicative form is branch free") {
    Rng rng(0x5eed0102);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + rng.below(6);
        const double x = rng.uniform(-1.3, 1.3);
        const double y = rng.uniform(-1.3, 1.3);
        const auto c = scherk_shifts(n);
        double prod = 1.0;
        for (double cm : c) prod *= std::cos(y / n - cm) / std::cos(x / n - cm);
        const double ratio = std::cos(y) / std::cos(x);
        CHECK(std::abs(prod - ratio) <= 1e-12 * std::abs(ratio));
    }
}

TEST_CASE("kamien decomposition") {
    for (int n : {2, 3}) {
        for (double beta : {pi / 6.0, pi / 3.0}) {
            IdentityParams p;
            p.beta = beta;
            const double sb = std::sin(beta);
            // Every shifted cot argument y sin(bt) + m pi / n stays inside (0, pi).
            const double lo = 0.1 * n / sb, hi = (pi - 0.1 * n) / sb;
            const auto r = verify_identity(identity_terms("kamien-decomp", n, p), make_grid(-1.0, 1.0, 31, lo, hi, 31));
            CHECK_MESSAGE(r.max_abs_err < 1e-9, "n=" << n << " beta=" << beta << " err " << r.max_abs_err);
        }
    }
}

TEST_CASE("helicoid decomposition") {
    // cot(x / n) gets closer than the default margin at x = 0.1.
    const auto g = make_grid(0.1, 2.9, 41, -2.0, 2.0, 41, 0.02);
    CHECK_THROWS_AS(verify_identity(identity_terms("helicoid-decomp", 3), make_grid(0.1, 2.9, 41, -2.0, 2.0, 41)),
                    DomainViolation);
    for (int n : {2, 3}) {
        const auto r = verify_identity(identity_terms("helicoid-decomp", n), g);
        CHECK(r.policy == "mod-pi");
        CHECK(r.max_abs_err < 1e-9);
    }
}

TEST_CASE("maximal and Born-Infeld decompositions at complex probes") {
    for (const char* id : {"scherk2max-decomp", "scherkBI-decomp"}) {
        const auto inst = identity_terms(id, 2);
        CHECK(inst.branch_policy == BranchPolicy::mod_2pi_i);
        const ComplexProbe fixed{cplx(0.3, 0.1), cplx(0.7, -0.2)};
        const auto one = verify_identity_probes(inst, std::span(&fixed, 1), 0.05);
        CHECK(one.max_abs_err < 1e-9);

        const auto probes = random_complex_probes(make_grid(-1.0, 1.0, 2, -1.0, 1.0, 2), 20, 0.5, 7);
        for (const auto& pr : probes) {
            CHECK(std::abs(pr.x.imag()) < 0.5);
            CHECK(std::abs(pr.y.imag()) < 0.5);
        }
        const auto r = verify_identity_probes(inst, probes, 0.05);
        CHECK(r.max_abs_err < 1e-9);
        CHECK(r.worst_point.coords.size() == 4);
    }
}

TEST_CASE("random probes are reproducible") {
    const auto g = make_grid(-1.0, 1.0, 2, -1.0, 1.0, 2);
    const auto a = random_complex_probes(g, 10, 0.5, 42);
    const auto b = random_complex_probes(g, 10, 0.5, 42);
    const auto c = random_complex_probes(g, 10, 0.5, 43);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
    CHECK(a[0].x != c[0].x);
}

TEST_CASE("singular grids are rejected") {
    const auto inst = identity_terms("scherk2-decomp", 2);
    try {
        verify_identity(inst, make_grid(1.0, 2.0, 11, -0.5, 0.5, 5));
        FAIL("expected DomainViolation");
    } catch (const DomainViolation& e) {
        CHECK_FALSE(e.points().empty());
    }
    CHECK_THROWS_AS(identity_terms("no-such-identity", 2), UnknownIdentity);
}

TEST_CASE("branch policies") {
    CHECK(policy_error(BranchPolicy::mod_pi, cplx(1.0 + pi), cplx(1.0)) < 1e-15);
    CHECK(policy_error(BranchPolicy::principal, cplx(1.0 + pi), cplx(1.0)) == doctest::Approx(pi));
    CHECK(policy_error(BranchPolicy::mod_2pi_i, cplx(0.5, 2.0 * pi), cplx(0.5, 0.0)) < 1e-15);
    CHECK(policy_error(BranchPolicy::mod_2pi_i, cplx(0.5 + pi), cplx(0.5)) > 1.0);
    for (auto p : {BranchPolicy::principal, BranchPolicy::mod_pi, BranchPolicy::mod_2pi_i, BranchPolicy::multiplicative}) {
        CHECK(parse_branch_policy(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_branch_policy("mod-e"), std::invalid_argument);
}

TEST_CASE("truncated Euler-Ramanujan series") {
    for (long K : {1L, 10L, 1000L}) CHECK(er_series_partial(ERSeriesKind::arctan_sum, 0.0, 0.7, K) == 0.0);

    const double a = 0.5, b = 0.7;
    const double closed = std::atan(std::tanh(a) / std::tan(b));
    CHECK(std::abs(er_series_partial(ERSeriesKind::arctan_bilateral, a, b, 10000) - closed) < 1e-4);
    CHECK(std::abs(er_series_partial(ERSeriesKind::arctan_sum, a, b, 10000) - closed) < 1e-4);

    const double cp = er_series_partial(ERSeriesKind::cos_product, 0.3, 0.4, 10000);
    CHECK(std::abs(cp - std::log(std::cos(0.4) / std::cos(0.3))) < 1e-6);

    CHECK_THROWS_AS(er_series_partial(ERSeriesKind::arctan_sum, 0.5, 0.0, 10), SingularArgument);
    CHECK_THROWS_AS(er_series_partial(ERSeriesKind::arctan_sum, 0.5, 0.7, 0), std::invalid_argument);
}

TEST_CASE("property: series truncation error follows its tail bound") {
    Rng rng(0x5eed0103);
    for (long K : {100L, 10000L}) {
        for (int k = 0; k < 100; ++k) {
            const double x = rng.uniform(0.1, 2.9);
            const double y = rng.uniform(-2.0, 2.0);
            const double closed = std::atan(std::tanh(y) / std::tan(x));
            // Paired terms behave like -2 y x / (k pi)^2.
            const double tail = 2.0 * std::abs(y) * x / (pi * pi * static_cast<double>(K));
            const double err = std::abs(er_series_partial(ERSeriesKind::arctan_bilateral, y, x, K) - closed);
            CHECK(err <= 1.05 * tail + 1e-12);
            if (std::abs(y) * x < 4.0) CHECK(err < 1e-4 * (10000.0 / static_cast<double>(K)));
        }
    }
}
